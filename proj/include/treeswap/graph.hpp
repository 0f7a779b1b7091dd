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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treeswap/model.hpp"
#include "treeswap/subtree.hpp"

namespace treeswap {

// A rooted labeled tree: node labels are UPOS tags, edge labels truncated
// dependency relations. This is the representation both similarity measures
// operate on; surface forms never enter it, so graphs from different
// languages stay comparable.
struct LabeledGraph {
  struct Edge {
    int from = 0;  // head
    int to = 0;    // dependent
    std::string label;
  };

  std::vector<std::string> nodes;         // node labels
  std::vector<Edge> edges;                // one per non-root node, ascending `to`
  std::vector<int> parent;                // parent node index, -1 for the root
  std::vector<std::string> parent_label;  // edge label towards the parent, "" for the root
  int root = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Builds a rooted tree from a parent array (exactly one entry must be -1).
inline LabeledGraph tree_from_parents(std::vector<std::string> node_labels,
                                      std::vector<int> parent,
                                      std::vector<std::string> parent_label) {
  const int n = static_cast<int>(node_labels.size());
  if (n == 0) throw std::invalid_argument("tree must have at least one node");
  if (parent.size() != node_labels.size() || parent_label.size() != node_labels.size())
    throw std::invalid_argument("array sizes differ");
  LabeledGraph g;
  g.nodes = std::move(node_labels);
  g.parent = std::move(parent);
  g.parent_label = std::move(parent_label);
  g.root = -1;
  for (int i = 0; i < n; ++i) {
    if (g.parent[i] == -1) {
      if (g.root != -1) throw std::invalid_argument("multiple roots");
      g.root = i;
    } else if (g.parent[i] < 0 || g.parent[i] >= n) {
      throw std::invalid_argument("parent index out of range");
    }
  }
  if (g.root == -1) throw std::invalid_argument("no root");
  // Walking up from every node must reach the root without revisits.
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    for (int v = i; v != g.root; v = g.parent[v]) {
      if (++steps > n) throw std::invalid_argument("parent array contains a cycle");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (i != g.root) g.edges.push_back({g.parent[i], i, g.parent_label[i]});
  }
  return g;
}

inline LabeledGraph to_graph(const DepTree& tree) {
  const int n = tree.size();
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::vector<std::string> parent_label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Token& t = tree.at(i + 1);
    labels[i] = t.upos;
    parent[i] = t.head - 1;  // -1 for the root
    parent_label[i] = t.head == 0 ? std::string() : t.deprel;
  }
  return tree_from_parents(std::move(labels), std::move(parent), std::move(parent_label));
}

// Projects a subtree: nodes are its tokens in sentence order, the defining
// edge itself is not part of the graph, so the dependent becomes the root.
inline LabeledGraph to_graph(const Subtree& sub) {
  const int n = static_cast<int>(sub.nodes.size());
  std::vector<int> pos(static_cast<std::size_t>(sub.tree->size()) + 1, -1);
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(sub.nodes[i])] = i;
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::vector<std::string> parent_label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Token& t = sub.tree->at(sub.nodes[i]);
    labels[i] = t.upos;
    if (t.index == sub.edge_dep) {
      parent[i] = -1;
    } else {
      parent[i] = pos[static_cast<std::size_t>(t.head)];
      parent_label[i] = t.deprel;
    }
  }
  return tree_from_parents(std::move(labels), std::move(parent), std::move(parent_label));
}

// Edit operation prices. Deleting or inserting a node or an edge costs 1;
// substituting mismatched labels costs 2, matching labels 0. The similarity
// search relies on mismatch = insert + delete and match = 0.
struct CostModel {
  int node_insert = 1;
  int node_delete = 1;
  int node_subst_mismatch = 2;
  int node_subst_match = 0;
  int edge_insert = 1;
  int edge_delete = 1;
  int edge_subst_mismatch = 2;
  int edge_subst_match = 0;
};

}  // namespace treeswap
