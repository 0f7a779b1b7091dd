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
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeswap/graph.hpp"

namespace treeswap {

// How many endpoint labels two edges share, compared positionally: head with
// head, dependent with dependent. At most 2.
inline int score(const LabeledGraph& g1, const LabeledGraph::Edge& e1, const LabeledGraph& g2,
                 const LabeledGraph::Edge& e2) {
  int s = 0;
  if (g1.nodes[static_cast<std::size_t>(e1.from)] == g2.nodes[static_cast<std::size_t>(e2.from)]) ++s;
  if (g1.nodes[static_cast<std::size_t>(e1.to)] == g2.nodes[static_cast<std::size_t>(e2.to)]) ++s;
  return s;
}

// Node labels along the unique path from the root to the edge's dependent,
// both endpoints included. Always at least two labels long.
inline std::vector<std::string> route(const LabeledGraph& g, const LabeledGraph::Edge& e) {
  std::vector<std::string> labels;
  for (int v = e.to; v != -1; v = g.parent[static_cast<std::size_t>(v)])
    labels.push_back(g.nodes[static_cast<std::size_t>(v)]);
  std::reverse(labels.begin(), labels.end());
  return labels;
}

// Unit-cost edit distance over label sequences.
inline int levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t n = b.size();
  std::vector<int> row(n + 1);
  for (std::size_t j = 0; j <= n; ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 0; i < a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i) + 1;
    for (std::size_t j = 0; j < n; ++j) {
      const int up = row[j + 1];
      row[j + 1] = a[i] == b[j] ? diag : 1 + std::min({diag, up, row[j]});
      diag = up;
    }
  }
  return row[n];
}

// A partial injective mapping between the edge sets of two graphs. Pairs hold
// indices into g1.edges and g2.edges.
struct EdgeMap {
  std::vector<std::pair<int, int>> pairs;

  std::size_t size() const { return pairs.size(); }
};

// Greedy edge matching: for each g1 edge in ascending dependent order, the
// unmapped g2 edges with the same edge label are narrowed to those with
// maximum endpoint score, then to those whose root route is closest in
// Levenshtein distance; the first survivor in g2 order wins.
inline EdgeMap edge_mapping(const LabeledGraph& g1, const LabeledGraph& g2) {
  EdgeMap m;
  std::vector<char> used(g2.edges.size(), 0);
  std::vector<std::vector<std::string>> routes2(g2.edges.size());
  for (std::size_t j = 0; j < g2.edges.size(); ++j) routes2[j] = route(g2, g2.edges[j]);

  for (std::size_t i = 0; i < g1.edges.size(); ++i) {
    const LabeledGraph::Edge& e1 = g1.edges[i];
    std::vector<std::size_t> cands;
    for (std::size_t j = 0; j < g2.edges.size(); ++j) {
      if (!used[j] && g2.edges[j].label == e1.label) cands.push_back(j);
    }
    if (cands.empty()) continue;

    int best_score = -1;
    for (std::size_t j : cands) best_score = std::max(best_score, score(g1, e1, g2, g2.edges[j]));
    std::erase_if(cands, [&](std::size_t j) { return score(g1, e1, g2, g2.edges[j]) != best_score; });

    const std::vector<std::string> route1 = route(g1, e1);
    int best_dist = std::numeric_limits<int>::max();
    for (std::size_t j : cands) best_dist = std::min(best_dist, levenshtein(route1, routes2[j]));
    std::erase_if(cands, [&](std::size_t j) { return levenshtein(route1, routes2[j]) != best_dist; });

    const std::size_t pick = cands.front();
    used[pick] = 1;
    m.pairs.emplace_back(static_cast<int>(i), static_cast<int>(pick));
  }
  return m;
}

// Jaccard index over edge sets with the greedy mapping as the intersection:
// |m| / (|E1| + |E2| - |m|). Two single-node trees have identical empty edge
// sets and score 1.
inline double em_similarity(const LabeledGraph& g1, const LabeledGraph& g2) {
  const std::size_t e1 = g1.edges.size();
  const std::size_t e2 = g2.edges.size();
  if (e1 + e2 == 0) return 1.0;
  const std::size_t matched = edge_mapping(g1, g2).size();
  return static_cast<double>(matched) / static_cast<double>(e1 + e2 - matched);
}

}  // namespace treeswap
