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
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeswap/corpus.hpp"
#include "treeswap/model.hpp"

namespace treeswap {

enum class SwapType { subject, object };

inline std::string_view deprel_for(SwapType type) {
  return type == SwapType::subject ? "nsubj" : "obj";
}

inline std::string_view swap_type_name(SwapType type) {
  return type == SwapType::subject ? "subj" : "obj";
}

// A dependency edge plus the transitive descendants of its dependent, with
// the linear span those tokens occupy. Points into the owning tree and must
// not outlive it.
struct Subtree {
  const DepTree* tree = nullptr;
  int edge_head = 0;
  int edge_dep = 0;
  std::vector<int> nodes;  // ascending token indices; edge_dep plus descendants
  int span_lo = 0;
  int span_hi = 0;
  bool contiguous = false;
};

// All (head, dependent) pairs whose relation matches the swap type, in
// ascending dependent order.
inline std::vector<std::pair<int, int>> find_edges(const DepTree& tree, SwapType type) {
  const std::string_view label = deprel_for(type);
  std::vector<std::pair<int, int>> edges;
  for (const Token& t : tree.tokens()) {
    if (t.deprel == label) edges.emplace_back(t.head, t.index);
  }
  return edges;
}

inline Subtree extract(const DepTree& tree, int head, int dep) {
  if (dep < 1 || dep > tree.size() || tree.at(dep).head != head)
    throw std::invalid_argument("edge is not part of the tree");
  Subtree sub;
  sub.tree = &tree;
  sub.edge_head = head;
  sub.edge_dep = dep;
  std::vector<int> stack{dep};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    sub.nodes.push_back(v);
    for (int c : tree.children(v)) stack.push_back(c);
  }
  std::sort(sub.nodes.begin(), sub.nodes.end());
  sub.span_lo = sub.nodes.front();
  sub.span_hi = sub.nodes.back();
  sub.contiguous = static_cast<int>(sub.nodes.size()) == sub.span_hi - sub.span_lo + 1;
  return sub;
}

// True iff the subtree contains a noun or a proper noun.
inline bool contains_nominal(const Subtree& sub) {
  return std::any_of(sub.nodes.begin(), sub.nodes.end(), [&](int i) {
    const std::string& upos = sub.tree->at(i).upos;
    return upos == "NOUN" || upos == "PROPN";
  });
}

enum class Reason {
  no_edge_src,
  no_edge_tgt,
  multiple_edge_src,
  multiple_edge_tgt,
  root_pos_mismatch,
  no_nominal_src,
  no_nominal_tgt,
  noncontiguous_src,
  noncontiguous_tgt,
};

inline std::string_view reason_name(Reason r) {
  switch (r) {
    case Reason::no_edge_src: return "no_edge_src";
    case Reason::no_edge_tgt: return "no_edge_tgt";
    case Reason::multiple_edge_src: return "multiple_edge_src";
    case Reason::multiple_edge_tgt: return "multiple_edge_tgt";
    case Reason::root_pos_mismatch: return "root_pos_mismatch";
    case Reason::no_nominal_src: return "no_nominal_src";
    case Reason::no_nominal_tgt: return "no_nominal_tgt";
    case Reason::noncontiguous_src: return "noncontiguous_src";
    case Reason::noncontiguous_tgt: return "noncontiguous_tgt";
  }
  return "?";
}

struct Eligibility {
  bool eligible = false;
  std::set<Reason> reasons;
};

struct EligibilityCheck {
  Eligibility status;
  // Present iff eligible: the selected source and target subtrees.
  std::optional<std::pair<Subtree, Subtree>> subtrees;
};

// A bisentence qualifies for swapping when each side has exactly one nsubj
// and exactly one obj edge (both, whichever type is being swapped), the
// selected subtrees' roots agree in UPOS, and each selected subtree contains
// a nominal and spans a contiguous token interval. Ineligibility is reported
// as a set of reasons, not an error.
inline EligibilityCheck check_eligibility(const Bisentence& b, SwapType type) {
  EligibilityCheck result;
  std::set<Reason>& reasons = result.status.reasons;

  std::optional<Subtree> selected[2];
  const DepTree* sides[2] = {&b.source, &b.target};
  const Reason no_edge[2] = {Reason::no_edge_src, Reason::no_edge_tgt};
  const Reason multiple_edge[2] = {Reason::multiple_edge_src, Reason::multiple_edge_tgt};
  const Reason no_nominal[2] = {Reason::no_nominal_src, Reason::no_nominal_tgt};
  const Reason noncontiguous[2] = {Reason::noncontiguous_src, Reason::noncontiguous_tgt};

  for (int side = 0; side < 2; ++side) {
    const DepTree& tree = *sides[side];
    const auto subj_edges = find_edges(tree, SwapType::subject);
    const auto obj_edges = find_edges(tree, SwapType::object);
    if (subj_edges.empty() || obj_edges.empty()) reasons.insert(no_edge[side]);
    if (subj_edges.size() > 1 || obj_edges.size() > 1) reasons.insert(multiple_edge[side]);

    const auto& swap_edges = type == SwapType::subject ? subj_edges : obj_edges;
    if (swap_edges.size() == 1) {
      Subtree sub = extract(tree, swap_edges[0].first, swap_edges[0].second);
      if (!contains_nominal(sub)) reasons.insert(no_nominal[side]);
      if (!sub.contiguous) reasons.insert(noncontiguous[side]);
      selected[side] = std::move(sub);
    }
  }

  if (selected[0] && selected[1]) {
    const std::string& src_pos = b.source.at(selected[0]->edge_dep).upos;
    const std::string& tgt_pos = b.target.at(selected[1]->edge_dep).upos;
    if (src_pos != tgt_pos) reasons.insert(Reason::root_pos_mismatch);
  }

  result.status.eligible = reasons.empty();
  if (result.status.eligible)
    result.subtrees = std::make_pair(std::move(*selected[0]), std::move(*selected[1]));
  return result;
}

// Eligibility summary over a corpus, for the analyze report.
struct EligibilityReport {
  std::size_t total = 0;
  std::size_t eligible = 0;
  std::map<Reason, std::size_t> reasons;
};

inline EligibilityReport eligibility_report(const Corpus& corpus, SwapType type) {
  EligibilityReport report;
  report.total = corpus.size();
  for (const Bisentence& b : corpus.bisentences) {
    const EligibilityCheck check = check_eligibility(b, type);
    if (check.status.eligible) {
      ++report.eligible;
    } else {
      for (Reason r : check.status.reasons) ++report.reasons[r];
    }
  }
  return report;
}

}  // namespace treeswap
