// Copyright 2026 The treeswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treeswap/model.hpp"

namespace treeswap {

// An aligned source/target sentence pair.
struct Bisentence {
  int id = 0;
  DepTree source;
  DepTree target;
};

struct Corpus {
  std::vector<Bisentence> bisentences;
  std::string source_lang = "src";
  std::string target_lang = "tgt";

  std::size_t size() const { return bisentences.size(); }
  bool empty() const { return bisentences.empty(); }
};

class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(std::size_t source_count, std::size_t target_count)
      : std::runtime_error("sentence counts differ: " + std::to_string(source_count) +
                           " source vs " + std::to_string(target_count) + " target"),
        source_count(source_count),
        target_count(target_count) {}

  std::size_t source_count;
  std::size_t target_count;
};

// Pairs the i-th source sentence with the i-th target sentence; ids are
// assigned 0..n-1. Inputs are assumed pre-aligned.
inline Corpus align(std::vector<DepTree> source, std::vector<DepTree> target,
                    std::string source_lang = "src", std::string target_lang = "tgt") {
  if (source.size() != target.size()) throw AlignmentError(source.size(), target.size());
  Corpus corpus;
  corpus.source_lang = std::move(source_lang);
  corpus.target_lang = std::move(target_lang);
  corpus.bisentences.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    corpus.bisentences.push_back(
        {static_cast<int>(i), std::move(source[i]), std::move(target[i])});
  }
  return corpus;
}

// Joins forms with single spaces, honoring per-token SpaceAfter=No markers.
inline std::string detokenize(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].form;
    if (i + 1 < tokens.size() && !tokens[i].no_space_after) out += ' ';
  }
  return out;
}

inline std::string detokenize(const DepTree& tree) { return detokenize(tree.tokens()); }

// One detokenized line per bisentence per side, same order on both sides.
inline void write_parallel(const Corpus& corpus, std::ostream& source_out,
                           std::ostream& target_out) {
  for (const Bisentence& b : corpus.bisentences) {
    source_out << detokenize(b.source) << '\n';
    target_out << detokenize(b.target) << '\n';
  }
}

}  // namespace treeswap
