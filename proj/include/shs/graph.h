// Copyright 2026 The SHS Toolkit Authors
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

#ifndef SHS_GRAPH_H_
#define SHS_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shs {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in compressed sparse row form.
//
// Nodes are 0..num_nodes()-1. Every neighbor list is sorted ascending and
// free of duplicates and self-loops, and adjacency is symmetric. Instances
// are only produced by the factory functions below, so these properties hold
// for every Graph value.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(NodeId n, std::span<const Edge> edges);
  friend Graph delete_edge(const Graph& g, NodeId u, NodeId v);

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

// Builds a simple undirected graph on n nodes. Self-loops and repeated pairs
// (in either orientation) are dropped. Throws std::invalid_argument naming
// the first edge with an endpoint >= n.
Graph build_graph(NodeId n, std::span<const Edge> edges);

// Returns a copy of g without edge {u, v}. Throws std::invalid_argument if
// the edge is absent.
Graph delete_edge(const Graph& g, NodeId u, NodeId v);

// Relabels nodes: old node j becomes perm[j]. Throws std::invalid_argument
// unless perm is a bijection on 0..n-1.
Graph permute_nodes(const Graph& g, std::span<const NodeId> perm);

// Checks every structural invariant; throws DataError on the first failure.
void validate(const Graph& g);

}  // namespace shs

#endif  // SHS_GRAPH_H_
