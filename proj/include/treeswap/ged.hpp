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
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "treeswap/graph.hpp"

namespace treeswap {

// Raised when a GED instance exceeds the configured node cap. Exact search is
// exponential in the worst case, so callers must opt into larger instances.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(int n1, int n2, int cap)
      : std::runtime_error("graph edit distance instance too large: " + std::to_string(n1) +
                           "+" + std::to_string(n2) + " nodes exceeds cap " +
                           std::to_string(cap)) {}
};

inline constexpr int kGedNodeCapDefault = 24;

// Cost of deleting one tree entirely and inserting the other: 2|V|-1 each.
inline int ged_max_distance(const LabeledGraph& g1, const LabeledGraph& g2) {
  return 2 * g1.node_count() - 1 + 2 * g2.node_count() - 1;
}

namespace detail {

// Exact GED via maximization. With subst_match = 0 and subst_mismatch =
// insert + delete, the cost of a node mapping m is
//   C0 - wn * |label-matching mapped nodes| - we * |label-matching mapped edges|
// with C0 the cost of the empty mapping, wn = node_insert + node_delete and
// we = edge_insert + edge_delete. Branch and bound maximizes the subtracted
// weight; processing g1 in preorder means each node's parent edge is decided
// the moment the node is, which keeps the incremental gain exact.
class GedSearch {
 public:
  GedSearch(const LabeledGraph& g1, const LabeledGraph& g2, const CostModel& costs)
      : g1_(g1), g2_(g2), n1_(g1.node_count()), n2_(g2.node_count()) {
    wn_ = costs.node_insert + costs.node_delete;
    we_ = costs.edge_insert + costs.edge_delete;

    intern_labels();
    preorder();

    // Suffix label counts over g1's unprocessed nodes, for the bound.
    rem1_.assign(static_cast<std::size_t>(n1_) + 1, std::vector<int>(labels_, 0));
    rem1_nonroot_.assign(static_cast<std::size_t>(n1_) + 1, 0);
    for (int i = n1_ - 1; i >= 0; --i) {
      rem1_[i] = rem1_[i + 1];
      ++rem1_[i][static_cast<std::size_t>(nlab1_[static_cast<std::size_t>(order_[i])])];
      rem1_nonroot_[i] = rem1_nonroot_[i + 1] + (order_[i] == g1_.root ? 0 : 1);
    }
    avail2_.assign(labels_, 0);
    for (int lab : nlab2_) ++avail2_[static_cast<std::size_t>(lab)];
    unused2_nonroot_ = n2_ - 1;
    map1_.assign(static_cast<std::size_t>(n1_), -1);
    used2_.assign(static_cast<std::size_t>(n2_), 0);
    cand_by_depth_.resize(static_cast<std::size_t>(n1_));
    tried_by_depth_.resize(static_cast<std::size_t>(n1_));

    // Interchangeability classes for g2 leaves: same node label, same parent
    // edge label, same parent. Mapping onto any member of a class costs the
    // same whatever happens later, so the search tries one representative.
    leaf_sig_.assign(static_cast<std::size_t>(n2_), -1);
    std::vector<int> child_count(static_cast<std::size_t>(n2_), 0);
    for (int v = 0; v < n2_; ++v)
      if (v != g2_.root) ++child_count[static_cast<std::size_t>(g2_.parent[static_cast<std::size_t>(v)])];
    std::map<std::tuple<int, int, int>, int> classes;
    for (int v = 0; v < n2_; ++v) {
      if (v == g2_.root || child_count[static_cast<std::size_t>(v)] != 0) continue;
      const auto key = std::make_tuple(nlab2_[static_cast<std::size_t>(v)],
                                       elab2_[static_cast<std::size_t>(v)],
                                       g2_.parent[static_cast<std::size_t>(v)]);
      leaf_sig_[static_cast<std::size_t>(v)] =
          classes.emplace(key, static_cast<int>(classes.size())).first->second;
    }
  }

  long long run() {
    best_ = -1;
    dfs(0, 0);
    return best_;
  }

 private:
  void intern_labels() {
    std::unordered_map<std::string, int> ids;
    const auto id_of = [&](const std::string& s) {
      const auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
      (void)inserted;
      return it->second;
    };
    nlab1_.reserve(static_cast<std::size_t>(n1_));
    for (const auto& s : g1_.nodes) nlab1_.push_back(id_of(s));
    nlab2_.reserve(static_cast<std::size_t>(n2_));
    for (const auto& s : g2_.nodes) nlab2_.push_back(id_of(s));
    elab1_.assign(static_cast<std::size_t>(n1_), -1);
    for (int i = 0; i < n1_; ++i)
      if (i != g1_.root) elab1_[static_cast<std::size_t>(i)] = id_of(g1_.parent_label[static_cast<std::size_t>(i)]);
    elab2_.assign(static_cast<std::size_t>(n2_), -1);
    for (int i = 0; i < n2_; ++i)
      if (i != g2_.root) elab2_[static_cast<std::size_t>(i)] = id_of(g2_.parent_label[static_cast<std::size_t>(i)]);
    labels_ = ids.size();
  }

  void preorder() {
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n1_));
    for (int i = 0; i < n1_; ++i)
      if (i != g1_.root) children[static_cast<std::size_t>(g1_.parent[static_cast<std::size_t>(i)])].push_back(i);
    order_.reserve(static_cast<std::size_t>(n1_));
    std::vector<int> stack{g1_.root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (auto it = children[static_cast<std::size_t>(v)].rbegin();
           it != children[static_cast<std::size_t>(v)].rend(); ++it)
        stack.push_back(*it);
    }
  }

  long long bound(int i) const {
    long long nodes = 0;
    const std::vector<int>& rem = rem1_[static_cast<std::size_t>(i)];
    for (std::size_t l = 0; l < labels_; ++l) nodes += std::min(rem[l], avail2_[l]);
    const long long edges = std::min(rem1_nonroot_[static_cast<std::size_t>(i)], unused2_nonroot_);
    return wn_ * nodes + we_ * edges;
  }

  void dfs(int i, long long w) {
    if (w + bound(i) <= best_) return;
    if (i == n1_) {
      best_ = w;  // the prune above guarantees w > best_
      return;
    }
    const int u = order_[static_cast<std::size_t>(i)];
    const int pu = g1_.parent[static_cast<std::size_t>(u)];

    // Try candidates in decreasing gain order so strong solutions are found
    // early and the bound bites. One scratch buffer per depth; recursive
    // calls only touch deeper ones.
    std::vector<Cand>& cand = cand_by_depth_[static_cast<std::size_t>(i)];
    cand.clear();
    for (int v = 0; v < n2_; ++v) {
      if (used2_[static_cast<std::size_t>(v)]) continue;
      long long gain = 0;
      if (nlab1_[static_cast<std::size_t>(u)] == nlab2_[static_cast<std::size_t>(v)]) gain += wn_;
      if (pu != -1) {
        const int pv = g2_.parent[static_cast<std::size_t>(v)];
        if (pv != -1 && map1_[static_cast<std::size_t>(pu)] == pv &&
            elab1_[static_cast<std::size_t>(u)] == elab2_[static_cast<std::size_t>(v)])
          gain += we_;
      }
      cand.push_back({gain, v});
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const Cand& a, const Cand& b) { return a.gain > b.gain; });
    std::vector<int>& tried = tried_by_depth_[static_cast<std::size_t>(i)];
    tried.clear();
    for (const Cand& c : cand) {
      const int v = c.v;
      const int sig = leaf_sig_[static_cast<std::size_t>(v)];
      if (sig != -1) {
        if (std::find(tried.begin(), tried.end(), sig) != tried.end()) continue;
        tried.push_back(sig);
      }
      used2_[static_cast<std::size_t>(v)] = 1;
      --avail2_[static_cast<std::size_t>(nlab2_[static_cast<std::size_t>(v)])];
      if (v != g2_.root) --unused2_nonroot_;
      map1_[static_cast<std::size_t>(u)] = v;
      dfs(i + 1, w + c.gain);
      map1_[static_cast<std::size_t>(u)] = -1;
      if (v != g2_.root) ++unused2_nonroot_;
      ++avail2_[static_cast<std::size_t>(nlab2_[static_cast<std::size_t>(v)])];
      used2_[static_cast<std::size_t>(v)] = 0;
    }
    dfs(i + 1, w);  // delete u
  }

  struct Cand {
    long long gain;
    int v;
  };

  const LabeledGraph& g1_;
  const LabeledGraph& g2_;
  int n1_, n2_;
  long long wn_ = 0, we_ = 0;
  std::size_t labels_ = 0;
  std::vector<int> nlab1_, nlab2_, elab1_, elab2_;
  std::vector<int> order_;
  std::vector<std::vector<int>> rem1_;
  std::vector<int> rem1_nonroot_;
  std::vector<int> avail2_;
  int unused2_nonroot_ = 0;
  std::vector<int> map1_;
  std::vector<char> used2_;
  std::vector<std::vector<Cand>> cand_by_depth_;
  std::vector<std::vector<int>> tried_by_depth_;
  std::vector<int> leaf_sig_;
  long long best_ = -1;
};

}  // namespace detail

// Exact minimum edit cost over all partial injective node mappings between
// two rooted labeled trees: unmapped nodes of g1 are deleted, unmapped nodes
// of g2 inserted, mapped pairs substituted; an edge is substituted when both
// endpoints map onto an existing counterpart edge and deleted or inserted
// otherwise. Throws CapacityError when the combined node count exceeds
// `node_cap`.
inline int ged(const LabeledGraph& g1, const LabeledGraph& g2, const CostModel& costs = {},
               int node_cap = kGedNodeCapDefault) {
  if (costs.node_insert < 0 || costs.node_delete < 0 || costs.edge_insert < 0 ||
      costs.edge_delete < 0)
    throw std::invalid_argument("edit costs must be non-negative");
  if (costs.node_subst_match != 0 || costs.edge_subst_match != 0 ||
      costs.node_subst_mismatch != costs.node_insert + costs.node_delete ||
      costs.edge_subst_mismatch != costs.edge_insert + costs.edge_delete)
    throw std::invalid_argument(
        "cost model must price matching substitution at 0 and mismatch at insert + delete");
  const int n1 = g1.node_count();
  const int n2 = g2.node_count();
  if (n1 + n2 > node_cap) throw CapacityError(n1, n2, node_cap);

  const long long base = static_cast<long long>(costs.node_delete) * n1 +
                         static_cast<long long>(costs.node_insert) * n2 +
                         static_cast<long long>(costs.edge_delete) * g1.edge_count() +
                         static_cast<long long>(costs.edge_insert) * g2.edge_count();
  detail::GedSearch search(g1, g2, costs);
  return static_cast<int>(base - search.run());
}

// Normalized similarity: (d_max - GED) / d_max, in [0, 1], exactly 1 iff the
// trees are label-isomorphic.
inline double ged_similarity(const LabeledGraph& g1, const LabeledGraph& g2,
                             const CostModel& costs = {}, int node_cap = kGedNodeCapDefault) {
  const int d_max = ged_max_distance(g1, g2);
  const int d = ged(g1, g2, costs, node_cap);
  return static_cast<double>(d_max - d) / static_cast<double>(d_max);
}

}  // namespace treeswap
