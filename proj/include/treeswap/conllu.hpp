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

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treeswap/model.hpp"

namespace treeswap {

// Malformed CoNLL-U input. Carries the 1-based sentence ordinal and the
// 1-based line number the problem was detected at.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t sentence, std::size_t line, const std::string& what)
      : std::runtime_error("sentence " + std::to_string(sentence) + ", line " +
                           std::to_string(line) + ": " + what),
        sentence(sentence),
        line(line) {}

  std::size_t sentence;
  std::size_t line;
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

inline bool misc_has_no_space(std::string_view misc) {
  std::size_t start = 0;
  while (start <= misc.size()) {
    const std::size_t bar = misc.find('|', start);
    const std::string_view part =
        misc.substr(start, bar == std::string_view::npos ? misc.size() - start : bar - start);
    if (part == "SpaceAfter=No") return true;
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return false;
}

}  // namespace detail

// Reads CoNLL-U: 10 tab-separated columns per token line, sentences separated
// by blank lines, "#" comments ignored. Multiword-token ranges ("3-4") and
// empty nodes ("5.1") are skipped; they are not part of the syntactic tree.
// LF and CRLF line endings are both accepted.
inline std::vector<DepTree> parse_conllu(std::istream& in) {
  std::vector<DepTree> trees;
  std::vector<Token> pending;
  std::size_t line_no = 0;
  std::size_t sentence_start_line = 0;
  std::size_t second_root_line = 0;
  int root_count = 0;

  const auto ordinal = [&] { return trees.size() + 1; };

  const auto finalize = [&] {
    if (pending.empty()) return;
    const int n = static_cast<int>(pending.size());
    if (root_count == 0)
      throw ParseError(ordinal(), sentence_start_line, "no root token (HEAD 0 missing)");
    if (root_count > 1) throw ParseError(ordinal(), second_root_line, "multiple root tokens");
    for (const Token& t : pending) {
      if (t.head > n)
        throw ParseError(ordinal(), sentence_start_line,
                         "HEAD " + std::to_string(t.head) + " out of range for " +
                             std::to_string(n) + " tokens");
    }
    try {
      trees.emplace_back(std::move(pending));
    } catch (const std::invalid_argument& e) {
      throw ParseError(ordinal(), sentence_start_line, e.what());
    }
    pending.clear();
    root_count = 0;
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);  // UTF-8 BOM
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) {
      finalize();
      continue;
    }
    if (raw[0] == '#') continue;

    const auto fields = detail::split_tabs(raw);
    if (fields.size() != 10)
      throw ParseError(ordinal(), line_no,
                       "expected 10 columns, got " + std::to_string(fields.size()));

    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos) continue;  // multiword token range
    if (id.find('.') != std::string_view::npos) continue;  // empty node
    if (!detail::all_digits(id)) throw ParseError(ordinal(), line_no, "malformed token ID");

    if (pending.empty()) sentence_start_line = line_no;

    Token t;
    t.index = std::stoi(std::string(id));
    if (t.index != static_cast<int>(pending.size()) + 1)
      throw ParseError(ordinal(), line_no, "token IDs must be consecutive from 1");
    t.form = std::string(fields[1]);
    if (t.form.empty()) throw ParseError(ordinal(), line_no, "empty FORM");
    t.lemma = fields[2] == "_" ? std::string() : std::string(fields[2]);
    t.upos = fields[3] == "_" ? std::string() : std::string(fields[3]);
    if (!detail::all_digits(fields[6]))
      throw ParseError(ordinal(), line_no, "non-numeric HEAD \"" + std::string(fields[6]) + "\"");
    t.head = std::stoi(std::string(fields[6]));
    if (t.head == t.index)
      throw ParseError(ordinal(), line_no, "token is its own head (cycle)");
    t.deprel_full = std::string(fields[7]);
    t.deprel = truncate_deprel(fields[7] == "_" ? std::string_view() : fields[7]);
    t.no_space_after = detail::misc_has_no_space(fields[9]);
    if (t.head == 0) {
      ++root_count;
      if (root_count == 2) second_root_line = line_no;
    }
    pending.push_back(std::move(t));
  }
  finalize();
  return trees;
}

// Writes one sentence as CoNLL-U. Columns the model does not carry (XPOS,
// FEATS, DEPS) are written as "_". parse_conllu(write_conllu(t)) preserves
// forms, UPOS, heads and relations.
inline void write_conllu(std::ostream& out, const DepTree& tree) {
  for (const Token& t : tree.tokens()) {
    const std::string& rel = t.deprel_full.empty() ? t.deprel : t.deprel_full;
    out << t.index << '\t' << t.form << '\t' << (t.lemma.empty() ? "_" : t.lemma) << '\t'
        << (t.upos.empty() ? "_" : t.upos) << '\t' << "_\t_\t" << t.head << '\t'
        << (rel.empty() ? "_" : rel) << '\t' << "_\t" << (t.no_space_after ? "SpaceAfter=No" : "_")
        << '\n';
  }
  out << '\n';
}

inline void write_conllu(std::ostream& out, const std::vector<DepTree>& trees) {
  for (const DepTree& t : trees) write_conllu(out, t);
}

}  // namespace treeswap
