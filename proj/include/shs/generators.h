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

#ifndef SHS_GENERATORS_H_
#define SHS_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shs/graph.h"

namespace shs {

enum class GraphFamily { kErdosRenyi, kScaleFree, kGaussianPartition };

std::string_view family_name(GraphFamily family);  // "er", "sf", "grp"
GraphFamily parse_family(std::string_view name);

// Parameters for one synthetic graph. Only the fields of `family` are read.
struct GeneratorSpec {
  GraphFamily family = GraphFamily::kScaleFree;
  NodeId n = 1000;
  double er_p = 0.001;
  double sf_alpha = 0.4;
  double sf_beta = 0.05;
  double sf_gamma = 0.55;
  double grp_mean_size = 100.0;
  double grp_shape = 10.0;
  double grp_p_in = 0.25;
  double grp_p_out = 0.01;
  std::uint64_t seed = 0;
};

// G(n, p): each unordered pair is an edge independently with probability p.
Graph generate_er(NodeId n, double p, std::uint64_t seed);

// Directed scale-free growth from a 3-node directed cycle, symmetrized.
//
//   alpha: new node -> existing node picked by in-degree
//   beta:  existing (by out-degree) -> existing (by in-degree)
//   gamma: existing node picked by out-degree -> new node
//
// In-degree picks use weight in_degree + 0.2, out-degree picks use
// out_degree exactly. Growth stops once n nodes exist.
Graph generate_sf(NodeId n, double alpha, double beta, double gamma,
                  std::uint64_t seed);

struct PartitionedGraph {
  Graph graph;
  // Consecutive node blocks: group g holds the next group_sizes[g] ids.
  std::vector<NodeId> group_sizes;
};

// Gaussian random partition graph. Group sizes ~ Normal(mean_size,
// variance mean_size / shape), rounded and redrawn until positive; the last
// group is cut to land on exactly n nodes.
PartitionedGraph generate_grp_partitioned(NodeId n, double mean_size,
                                          double shape, double p_in,
                                          double p_out, std::uint64_t seed);
Graph generate_grp(NodeId n, double mean_size, double shape, double p_in,
                   double p_out, std::uint64_t seed);

Graph generate(const GeneratorSpec& spec);

}  // namespace shs

#endif  // SHS_GENERATORS_H_
