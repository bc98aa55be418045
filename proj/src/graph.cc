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

#include "shs/graph.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "shs/errors.h"

namespace shs {

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph build_graph(NodeId n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument(fmt::format(
          "edge ({}, {}) has an endpoint outside [0, {})", e.u, e.v, n));
    }
    if (e.u == e.v) continue;
    ++degree[e.u];
    ++degree[e.v];
  }

  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  std::vector<NodeId> raw(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    raw[cursor[e.u]++] = e.v;
    raw[cursor[e.v]++] = e.u;
  }

  // Sort and dedup each list, then compact.
  std::vector<std::size_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::size_t write = 0;
  for (NodeId v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) raw[write++] = *it;
    offsets[v + 1] = write;
  }
  raw.resize(write);
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(raw);
  return g;
}

Graph delete_edge(const Graph& g, NodeId u, NodeId v) {
  if (u == v || !g.has_edge(u, v)) {
    throw std::invalid_argument(
        fmt::format("cannot delete edge ({}, {}): not present", u, v));
  }
  Graph out;
  const NodeId n = g.num_nodes();
  out.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  out.targets_.reserve(g.targets_.size() - 2);
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y : g.neighbors(x)) {
      if ((x == u && y == v) || (x == v && y == u)) continue;
      out.targets_.push_back(y);
    }
    out.offsets_[x + 1] = out.targets_.size();
  }
  return out;
}

Graph permute_nodes(const Graph& g, std::span<const NodeId> perm) {
  const NodeId n = g.num_nodes();
  if (perm.size() != n) {
    throw std::invalid_argument(fmt::format(
        "permutation has {} entries for a graph of {} nodes", perm.size(), n));
  }
  std::vector<bool> seen(n, false);
  for (NodeId p : perm) {
    if (p >= n || seen[p]) {
      throw std::invalid_argument("node permutation is not a bijection");
    }
    seen[p] = true;
  }
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e = {perm[e.u], perm[e.v]};
  return build_graph(n, edges);
}

void validate(const Graph& g) {
  const NodeId n = g.num_nodes();
  auto offsets = g.offsets();
  if (offsets.empty() || offsets.front() != 0 ||
      offsets.back() != g.targets().size()) {
    throw DataError("graph offsets are inconsistent with the target array");
  }
  std::size_t total = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (offsets[u + 1] < offsets[u]) {
      throw DataError(fmt::format("node {} has a negative-length list", u));
    }
    auto adj = g.neighbors(u);
    total += adj.size();
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const NodeId v = adj[i];
      if (v >= n) throw DataError(fmt::format("node {} lists out-of-range neighbor {}", u, v));
      if (v == u) throw DataError(fmt::format("self-loop at node {}", u));
      if (i > 0 && adj[i - 1] >= v) {
        throw DataError(fmt::format("neighbor list of node {} is not strictly ascending", u));
      }
      if (!g.has_edge(v, u)) {
        throw DataError(fmt::format("edge ({}, {}) lacks its reverse", u, v));
      }
    }
  }
  if (total % 2 != 0 || total / 2 != g.num_edges()) {
    throw DataError("edge count does not match half the adjacency length");
  }
}

}  // namespace shs
