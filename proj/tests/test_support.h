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

#ifndef SHS_TESTS_TEST_SUPPORT_H_
#define SHS_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "shs/graph.h"

namespace shs::testing {

// Coin-flip graph built pair by pair, independent of the library generators.
inline Graph coin_graph(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return build_graph(n, edges);
}

// Uniform random labeled tree via a random attachment order.
inline Graph random_tree(NodeId n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    edges.push_back({parent(rng), v});
  }
  return build_graph(n, edges);
}

inline std::vector<NodeId> random_perm(NodeId n, std::mt19937_64& rng) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), NodeId{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

// All-pairs hop distances by Floyd-Warshall on a dense matrix.
inline std::vector<std::vector<int>> floyd(const Graph& g) {
  const NodeId n = g.num_nodes();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
  for (NodeId i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (NodeId j : g.neighbors(i)) d[i][j] = 1;
  }
  for (NodeId k = 0; k < n; ++k)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Betweenness by listing every shortest path explicitly (depth-first walk
// that only steps one hop closer to t). Exponential in the worst case; meant
// for small graphs.
inline std::vector<double> enumerate_paths_bc(const Graph& g) {
  const NodeId n = g.num_nodes();
  const auto d = floyd(g);
  std::vector<double> bc(n, 0.0);
  std::vector<NodeId> path;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (d[s][t] >= kUnreachable) continue;
      std::vector<double> through(n, 0.0);
      double total = 0.0;
      auto walk = [&](auto&& self, NodeId at) -> void {
        if (at == t) {
          total += 1.0;
          for (NodeId x : path) through[x] += 1.0;
          return;
        }
        for (NodeId nb : g.neighbors(at)) {
          if (d[nb][t] == d[at][t] - 1) {
            if (nb != t) path.push_back(nb);
            self(self, nb);
            if (nb != t) path.pop_back();
          }
        }
      };
      walk(walk, s);
      for (NodeId v = 0; v < n; ++v) bc[v] += through[v] / total;
    }
  }
  return bc;
}

}  // namespace shs::testing

#endif  // SHS_TESTS_TEST_SUPPORT_H_
