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

#include "shs/centrality.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "shs/errors.h"

namespace shs {
namespace {

constexpr std::int32_t kUnreached = -1;

// Unweighted single-source shortest paths: distances and path counts.
void bfs_counts(const Graph& g, NodeId source, std::vector<std::int32_t>& dist,
                std::vector<double>& sigma) {
  const NodeId n = g.num_nodes();
  dist.assign(n, kUnreached);
  sigma.assign(n, 0.0);
  std::vector<NodeId> queue;
  queue.reserve(n);
  dist[source] = 0;
  sigma[source] = 1.0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
    }
  }
}

LabelVector label_ranked(const ScoreVector& scores, double k_percent,
                         bool ascending) {
  if (!(k_percent > 0.0 && k_percent <= 100.0)) {
    throw std::invalid_argument(
        fmt::format("k_percent must lie in (0, 100], got {}", k_percent));
  }
  const auto& values = scores.values;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      throw NumericError(fmt::format("score of node {} is NaN", i));
    }
  }
  std::vector<NodeId> order(values.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  const std::size_t count = top_k_count(values.size(), k_percent);
  auto better = [&](NodeId a, NodeId b) {
    if (values[a] != values[b]) {
      return ascending ? values[a] < values[b] : values[a] > values[b];
    }
    return a < b;
  };
  std::partial_sort(order.begin(),
                    order.begin() + static_cast<std::ptrdiff_t>(count),
                    order.end(), better);
  LabelVector out;
  out.k_percent = k_percent;
  out.labels.assign(values.size(), 0);
  for (std::size_t i = 0; i < count; ++i) out.labels[order[i]] = 1;
  return out;
}

}  // namespace

std::size_t LabelVector::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

ScoreVector brandes_bc(const Graph& g) {
  const NodeId n = g.num_nodes();
  ScoreVector out{ScoreKind::kBetweenness, std::vector<double>(n, 0.0)};
  std::vector<std::int32_t> dist(n, kUnreached);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      const std::int32_t next = dist[v] + 1;
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = next;
          order.push_back(w);
        }
        if (dist[w] == next) sigma[w] += sigma[v];
      }
    }
    // Dependency accumulation in reverse BFS order. Predecessors of w are
    // the neighbors one level closer to s.
    for (std::size_t i = order.size(); i-- > 0;) {
      const NodeId w = order[i];
      const double coeff = (1.0 + delta[w]) / sigma[w];
      const std::int32_t prev = dist[w] - 1;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == prev) delta[v] += sigma[v] * coeff;
      }
      if (w != s) out.values[w] += delta[w];
    }
    for (NodeId v : order) {
      dist[v] = kUnreached;
      sigma[v] = 0.0;
      delta[v] = 0.0;
    }
  }
  for (double& value : out.values) value /= 2.0;
  return out;
}

ScoreVector bc_bruteforce(const Graph& g) {
  const NodeId n = g.num_nodes();
  if (n > kBruteForceMaxNodes) {
    throw std::invalid_argument(fmt::format(
        "bc_bruteforce is limited to {} nodes, got {}", kBruteForceMaxNodes, n));
  }
  std::vector<std::vector<std::int32_t>> dist(n);
  std::vector<std::vector<double>> sigma(n);
  for (NodeId s = 0; s < n; ++s) bfs_counts(g, s, dist[s], sigma[s]);

  ScoreVector out{ScoreKind::kBetweenness, std::vector<double>(n, 0.0)};
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      const std::int32_t d_st = dist[s][t];
      if (d_st == kUnreached) continue;
      for (NodeId v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] == kUnreached || dist[v][t] == kUnreached) continue;
        if (dist[s][v] + dist[v][t] != d_st) continue;
        // Every s-t geodesic through v splits into an s-v and a v-t geodesic.
        out.values[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
  }
  return out;
}

ScoreVector closeness(const Graph& g) {
  const NodeId n = g.num_nodes();
  ScoreVector out{ScoreKind::kCloseness, std::vector<double>(n, 0.0)};
  std::vector<std::int32_t> dist(n, kUnreached);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    std::uint64_t total = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      total += static_cast<std::uint64_t>(dist[v]);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    out.values[s] = total == 0 ? 0.0 : 1.0 / static_cast<double>(total);
    for (NodeId v : queue) dist[v] = kUnreached;
  }
  return out;
}

ScoreVector constraint(const Graph& g) {
  const NodeId n = g.num_nodes();
  ScoreVector out{ScoreKind::kConstraint, std::vector<double>(n, 0.0)};
  std::vector<std::uint8_t> in_ego(n, 0);
  for (NodeId i = 0; i < n; ++i) {
    auto adj = g.neighbors(i);
    if (adj.empty()) {
      out.values[i] = kIsolatedConstraint;
      continue;
    }
    const double p_i = 1.0 / static_cast<double>(adj.size());
    for (NodeId j : adj) in_ego[j] = 1;
    double total = 0.0;
    for (NodeId j : adj) {
      double indirect = 0.0;
      // q ranges over common neighbors of i and j; p_qj = 1/d(q).
      for (NodeId q : g.neighbors(j)) {
        if (q != i && in_ego[q]) {
          indirect += p_i / static_cast<double>(g.degree(q));
        }
      }
      const double local = p_i + indirect;
      total += local * local;
    }
    for (NodeId j : adj) in_ego[j] = 0;
    out.values[i] = total;
  }
  return out;
}

std::size_t top_k_count(std::size_t n, double k_percent) {
  // The epsilon keeps exact products such as 5 * 100 / 100 from rounding up.
  const double raw = k_percent * static_cast<double>(n) / 100.0;
  auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(count, n);
}

LabelVector label_top_k(const ScoreVector& scores, double k_percent) {
  return label_ranked(scores, k_percent, /*ascending=*/false);
}

LabelVector baseline_predict(const ScoreVector& scores, double k_percent,
                             bool constraint_descending) {
  switch (scores.kind) {
    case ScoreKind::kBetweenness:
      throw std::invalid_argument(
          "baseline_predict does not accept betweenness; use label_top_k");
    case ScoreKind::kConstraint:
      return label_ranked(scores, k_percent, !constraint_descending);
    case ScoreKind::kCloseness:
    case ScoreKind::kProbShs:
      return label_ranked(scores, k_percent, false);
  }
  throw std::invalid_argument("unknown score kind");
}

Metrics accuracy_on(const LabelVector& predicted, const LabelVector& truth,
                    std::span<const NodeId> nodes) {
  if (predicted.labels.size() != truth.labels.size()) {
    throw std::invalid_argument(fmt::format(
        "label vectors differ in length: {} vs {}", predicted.labels.size(),
        truth.labels.size()));
  }
  if (nodes.empty()) throw std::invalid_argument("accuracy over zero nodes");
  std::size_t match = 0, tp = 0, pred_pos = 0, true_pos = 0;
  for (NodeId v : nodes) {
    if (v >= truth.labels.size()) {
      throw std::invalid_argument(fmt::format("node {} out of range", v));
    }
    const bool p = predicted.labels[v] != 0;
    const bool t = truth.labels[v] != 0;
    match += p == t;
    tp += p && t;
    pred_pos += p;
    true_pos += t;
  }
  Metrics m;
  m.accuracy = static_cast<double>(match) / static_cast<double>(nodes.size());
  if (pred_pos == 0 && true_pos == 0) {
    // Nothing to find and nothing claimed.
    m.precision = m.recall = m.f1 = m.overlap = 1.0;
    return m;
  }
  m.precision = pred_pos == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(pred_pos);
  m.recall = true_pos == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(true_pos);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  m.overlap = m.recall;
  return m;
}

Metrics accuracy(const LabelVector& predicted, const LabelVector& truth) {
  std::vector<NodeId> all(truth.labels.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  if (predicted.labels.size() != truth.labels.size()) {
    throw std::invalid_argument(fmt::format(
        "label vectors differ in length: {} vs {}", predicted.labels.size(),
        truth.labels.size()));
  }
  return accuracy_on(predicted, truth, all);
}

}  // namespace shs
