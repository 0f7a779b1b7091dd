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

#include <string>
#include <utility>
#include <vector>

#include "treeswap/corpus.hpp"
#include "treeswap/model.hpp"

namespace testutil {

inline treeswap::Token tok(int index, std::string form, std::string upos, int head,
                           std::string deprel) {
  treeswap::Token t;
  t.index = index;
  t.form = std::move(form);
  t.upos = std::move(upos);
  t.head = head;
  t.deprel_full = deprel;
  t.deprel = treeswap::truncate_deprel(deprel);
  return t;
}

inline treeswap::DepTree deptree(std::vector<treeswap::Token> tokens) {
  return treeswap::DepTree(std::move(tokens));
}

// "John kaufte einen gelben Schal ." - subject John, object "einen gelben
// Schal" rooted at Schal with det and amod dependents.
inline treeswap::DepTree scarf_source() {
  return deptree({
      tok(1, "John", "PROPN", 2, "nsubj"),
      tok(2, "kaufte", "VERB", 0, "root"),
      tok(3, "einen", "DET", 5, "det"),
      tok(4, "gelben", "ADJ", 5, "amod"),
      tok(5, "Schal", "NOUN", 2, "obj"),
      tok(6, ".", "PUNCT", 2, "punct"),
  });
}

// "John bought a yellow scarf ." with the same structure.
inline treeswap::DepTree scarf_target() {
  return deptree({
      tok(1, "John", "PROPN", 2, "nsubj"),
      tok(2, "bought", "VERB", 0, "root"),
      tok(3, "a", "DET", 5, "det"),
      tok(4, "yellow", "ADJ", 5, "amod"),
      tok(5, "scarf", "NOUN", 2, "obj"),
      tok(6, ".", "PUNCT", 2, "punct"),
  });
}

inline treeswap::Bisentence scarf_bisentence(int id = 0) {
  return {id, scarf_source(), scarf_target()};
}

// "Mary las ein Buch ." / "Mary read a book ." - shorter object subtree.
inline treeswap::DepTree book_source() {
  return deptree({
      tok(1, "Mary", "PROPN", 2, "nsubj"),
      tok(2, "las", "VERB", 0, "root"),
      tok(3, "ein", "DET", 4, "det"),
      tok(4, "Buch", "NOUN", 2, "obj"),
      tok(5, ".", "PUNCT", 2, "punct"),
  });
}

inline treeswap::DepTree book_target() {
  return deptree({
      tok(1, "Mary", "PROPN", 2, "nsubj"),
      tok(2, "read", "VERB", 0, "root"),
      tok(3, "a", "DET", 4, "det"),
      tok(4, "book", "NOUN", 2, "obj"),
      tok(5, ".", "PUNCT", 2, "punct"),
  });
}

inline treeswap::Bisentence book_bisentence(int id = 1) {
  return {id, book_source(), book_target()};
}

// A minimal well-formed sentence of n tokens: token 1 is the verb root, the
// rest attach to it.
inline treeswap::DepTree flat_sentence(int n, const std::string& stem = "w") {
  std::vector<treeswap::Token> tokens;
  tokens.push_back(tok(1, stem + "1", "VERB", 0, "root"));
  for (int i = 2; i <= n; ++i)
    tokens.push_back(tok(i, stem + std::to_string(i), "NOUN", 1, "dep"));
  return deptree(std::move(tokens));
}

}  // namespace testutil
