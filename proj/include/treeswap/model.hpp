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

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treeswap {

// Lowercases a dependency relation and cuts the subtype ("nsubj:pass" ->
// "nsubj"). All relation comparisons in the library use this form.
inline std::string truncate_deprel(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ':') break;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

// One syntactic word. `index` is the 1-based position within its sentence and
// `head` the index of the governing token, 0 for the sentence root.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  int head = 0;
  std::string deprel;       // lowercase, subtype-truncated
  std::string deprel_full;  // relation as read from the input, kept for output
  bool no_space_after = false;
};

// A dependency tree over one sentence. Construction validates that the head
// relation forms a single rooted tree; instances are immutable afterwards and
// safe to share across threads.
class DepTree {
 public:
  explicit DepTree(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    const int n = size();
    if (n == 0) throw std::invalid_argument("sentence has no tokens");
    children_.assign(static_cast<std::size_t>(n) + 1, {});
    for (int i = 0; i < n; ++i) {
      const Token& t = tokens_[static_cast<std::size_t>(i)];
      if (t.index != i + 1) throw std::invalid_argument("token indices must run 1..n");
      if (t.form.empty()) throw std::invalid_argument("token has an empty form");
      if (t.head < 0 || t.head > n) throw std::invalid_argument("head index out of range");
      if (t.head == t.index) throw std::invalid_argument("token is its own head");
      if (t.head == 0) {
        if (root_ != 0) throw std::invalid_argument("multiple root tokens");
        root_ = t.index;
      } else {
        children_[static_cast<std::size_t>(t.head)].push_back(t.index);
      }
    }
    if (root_ == 0) throw std::invalid_argument("no root token");
    // Reachability from the root; with n-1 edges this rules out cycles.
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> stack{root_};
    int reached = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = 1;
      ++reached;
      for (int c : children_[static_cast<std::size_t>(v)]) stack.push_back(c);
    }
    if (reached != n) throw std::invalid_argument("cyclic heads");
  }

  int size() const { return static_cast<int>(tokens_.size()); }
  int root_index() const { return root_; }
  const std::vector<Token>& tokens() const { return tokens_; }

  // 1-based access.
  const Token& at(int index) const { return tokens_.at(static_cast<std::size_t>(index) - 1); }

  // Dependents of the token at `index`, in ascending index order.
  const std::vector<int>& children(int index) const {
    return children_.at(static_cast<std::size_t>(index));
  }

 private:
  std::vector<Token> tokens_;
  std::vector<std::vector<int>> children_;
  int root_ = 0;
};

}  // namespace treeswap
