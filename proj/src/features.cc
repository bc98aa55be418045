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

#include "shs/features.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace shs {
namespace {

// Edges among N(v), counted through a membership mask.
std::size_t neighbor_edges(const Graph& g, NodeId v,
                           std::vector<std::uint8_t>& mask) {
  auto adj = g.neighbors(v);
  for (NodeId j : adj) mask[j] = 1;
  std::size_t twice = 0;
  for (NodeId j : adj) {
    for (NodeId q : g.neighbors(j)) twice += mask[q];
  }
  for (NodeId j : adj) mask[j] = 0;
  return twice / 2;
}

double effective_size_from(std::size_t degree, std::size_t ties) {
  if (degree == 0) return 0.0;
  const double d = static_cast<double>(degree);
  return d - 2.0 * static_cast<double>(ties) / d;
}

void fill_row(const Graph& g, NodeId v, std::vector<std::uint8_t>& mask,
              Matrix& raw) {
  const std::size_t d = g.degree(v);
  const double es = effective_size_from(d, neighbor_edges(g, v, mask));
  raw(v, 0) = es;
  raw(v, 1) = d == 0 ? 0.0 : es / static_cast<double>(d);
  raw(v, 2) = static_cast<double>(d);
}

void check_node(const Graph& g, NodeId v) {
  if (v >= g.num_nodes()) {
    throw std::invalid_argument(
        fmt::format("node {} out of range for {} nodes", v, g.num_nodes()));
  }
}

}  // namespace

EgoNetwork ego_network(const Graph& g, NodeId center, int radius) {
  check_node(g, center);
  if (radius < 1) throw std::invalid_argument("ego radius must be >= 1");
  std::vector<int> dist(g.num_nodes(), -1);
  std::vector<NodeId> members = {center};
  dist[center] = 0;
  for (std::size_t head = 0; head < members.size(); ++head) {
    const NodeId v = members[head];
    if (dist[v] == radius) continue;
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        members.push_back(w);
      }
    }
  }
  std::sort(members.begin(), members.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (NodeId w : g.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), w);
      if (it != members.end() && *it == w) {
        const auto j = static_cast<NodeId>(it - members.begin());
        if (i < j) edges.push_back({static_cast<NodeId>(i), j});
      }
    }
  }
  EgoNetwork out;
  out.graph = build_graph(static_cast<NodeId>(members.size()), edges);
  out.to_parent = std::move(members);
  return out;
}

double effective_size(const Graph& g, NodeId v) {
  check_node(g, v);
  std::vector<std::uint8_t> mask(g.num_nodes(), 0);
  return effective_size_from(g.degree(v), neighbor_edges(g, v, mask));
}

double efficiency(const Graph& g, NodeId v) {
  const std::size_t d = g.degree(v);
  return d == 0 ? 0.0 : effective_size(g, v) / static_cast<double>(d);
}

Matrix raw_features(const Graph& g) {
  const NodeId n = g.num_nodes();
  Matrix raw(n, kNumFeatures);
  std::vector<std::uint8_t> mask(n, 0);
  for (NodeId v = 0; v < n; ++v) fill_row(g, v, mask, raw);
  return raw;
}

FeatureMatrix normalize_features(Matrix raw) {
  FeatureMatrix out;
  const Eigen::Index n = raw.rows();
  out.normalized = Matrix::Zero(n, kNumFeatures);
  for (int c = 0; c < kNumFeatures; ++c) {
    if (n == 0) break;
    const double mean = raw.col(c).mean();
    const double var =
        (raw.col(c).array() - mean).square().sum() / static_cast<double>(n);
    const double sd = std::sqrt(var);
    out.stats.mean[c] = mean;
    // Columns that only differ by rounding noise count as constant.
    out.stats.stddev[c] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 0.0;
    if (out.stats.stddev[c] > 0.0) {
      out.normalized.col(c) = (raw.col(c).array() - mean) / out.stats.stddev[c];
    }
  }
  out.raw = std::move(raw);
  return out;
}

FeatureMatrix node_features(const Graph& g) {
  return normalize_features(raw_features(g));
}

Matrix denormalize(const Matrix& normalized, const FeatureStats& stats) {
  Matrix raw(normalized.rows(), normalized.cols());
  for (int c = 0; c < kNumFeatures; ++c) {
    raw.col(c) = normalized.col(c).array() * stats.stddev[c] + stats.mean[c];
  }
  return raw;
}

void update_features(FeatureMatrix& features, const Graph& g,
                     std::span<const NodeId> nodes) {
  if (features.raw.rows() != g.num_nodes()) {
    throw std::invalid_argument("feature matrix does not match graph size");
  }
  std::vector<std::uint8_t> mask(g.num_nodes(), 0);
  for (NodeId v : nodes) {
    check_node(g, v);
    fill_row(g, v, mask, features.raw);
  }
  features = normalize_features(std::move(features.raw));
}

}  // namespace shs
