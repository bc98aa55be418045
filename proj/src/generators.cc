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

#include "shs/generators.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace shs {
namespace {

constexpr double kSfDeltaIn = 0.2;
constexpr double kSfDeltaOut = 0.0;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::kErdosRenyi:
      return "er";
    case GraphFamily::kScaleFree:
      return "sf";
    case GraphFamily::kGaussianPartition:
      return "grp";
  }
  return "?";
}

GraphFamily parse_family(std::string_view name) {
  if (name == "er") return GraphFamily::kErdosRenyi;
  if (name == "sf") return GraphFamily::kScaleFree;
  if (name == "grp") return GraphFamily::kGaussianPartition;
  throw std::invalid_argument(fmt::format("unknown graph family '{}'", name));
}

Graph generate_er(NodeId n, double p, std::uint64_t seed) {
  require(n >= 2, "ER graphs need n >= 2");
  require(is_probability(p), "ER edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0) return build_graph(n, edges);
  if (p == 1.0) {
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.push_back({w, v});
    }
    return build_graph(n, edges);
  }

  // Geometric skipping over the lower triangle (Batagelj and Brandes).
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = unit(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) {
      edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
    }
  }
  return build_graph(n, edges);
}

Graph generate_sf(NodeId n, double alpha, double beta, double gamma,
                  std::uint64_t seed) {
  require(n >= 3, "scale-free growth starts from 3 nodes; need n >= 3");
  require(is_probability(alpha) && is_probability(beta) &&
              is_probability(gamma),
          "scale-free probabilities must lie in [0, 1]");
  require(std::abs(alpha + beta + gamma - 1.0) <= 1e-12,
          "alpha + beta + gamma must equal 1");
  require(alpha > 0.0 && gamma > 0.0, "alpha and gamma must be positive");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Each directed edge (s, t) contributes s to `sources` and t to
  // `targets`, so a uniform draw from either is degree-proportional.
  std::vector<NodeId> sources = {0, 1, 2};
  std::vector<NodeId> targets = {1, 2, 0};
  NodeId count = 3;

  auto pick = [&](const std::vector<NodeId>& pool, double delta) -> NodeId {
    const double total =
        static_cast<double>(pool.size()) + delta * static_cast<double>(count);
    const double r = unit(rng) * total;
    if (r < static_cast<double>(pool.size())) {
      return pool[static_cast<std::size_t>(r)];
    }
    auto id = static_cast<NodeId>((r - static_cast<double>(pool.size())) / delta);
    return id < count ? id : count - 1;
  };

  while (count < n) {
    const double r = unit(rng);
    NodeId s = 0;
    NodeId t = 0;
    if (r < alpha) {
      s = count++;
      t = pick(targets, kSfDeltaIn);
    } else if (r < alpha + beta) {
      s = pick(sources, kSfDeltaOut);
      t = pick(targets, kSfDeltaIn);
    } else {
      s = pick(sources, kSfDeltaOut);
      t = count++;
    }
    sources.push_back(s);
    targets.push_back(t);
  }

  std::vector<Edge> edges(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    edges[i] = {sources[i], targets[i]};
  }
  return build_graph(n, edges);
}

PartitionedGraph generate_grp_partitioned(NodeId n, double mean_size,
                                          double shape, double p_in,
                                          double p_out, std::uint64_t seed) {
  require(n >= 2, "GRP graphs need n >= 2");
  require(mean_size >= 2.0, "GRP mean group size must be >= 2");
  require(shape > 0.0, "GRP shape must be positive");
  require(is_probability(p_in) && is_probability(p_out),
          "GRP probabilities must lie in [0, 1]");
  require(p_out < p_in, "GRP needs p_out < p_in");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> size_dist(mean_size,
                                             std::sqrt(mean_size / shape));
  PartitionedGraph out;
  std::vector<NodeId> group_of(n);
  NodeId assigned = 0;
  while (assigned < n) {
    long size = 0;
    do {
      size = std::lround(size_dist(rng));
    } while (size < 1);
    const NodeId take = std::min<NodeId>(static_cast<NodeId>(size), n - assigned);
    for (NodeId i = 0; i < take; ++i) {
      group_of[assigned + i] = static_cast<NodeId>(out.group_sizes.size());
    }
    out.group_sizes.push_back(take);
    assigned += take;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) {
    for (NodeId w = 0; w < v; ++w) {
      const double p = group_of[v] == group_of[w] ? p_in : p_out;
      if (unit(rng) < p) edges.push_back({w, v});
    }
  }
  out.graph = build_graph(n, edges);
  return out;
}

Graph generate_grp(NodeId n, double mean_size, double shape, double p_in,
                   double p_out, std::uint64_t seed) {
  return generate_grp_partitioned(n, mean_size, shape, p_in, p_out, seed).graph;
}

Graph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case GraphFamily::kErdosRenyi:
      return generate_er(spec.n, spec.er_p, spec.seed);
    case GraphFamily::kScaleFree:
      return generate_sf(spec.n, spec.sf_alpha, spec.sf_beta, spec.sf_gamma,
                         spec.seed);
    case GraphFamily::kGaussianPartition:
      return generate_grp(spec.n, spec.grp_mean_size, spec.grp_shape,
                          spec.grp_p_in, spec.grp_p_out, spec.seed);
  }
  throw std::invalid_argument("unknown graph family");
}

}  // namespace shs
