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

#ifndef SHS_FEATURES_H_
#define SHS_FEATURES_H_

#include <array>
#include <span>
#include <vector>

#include "shs/graph.h"
#include "shs/matrix.h"

namespace shs {

inline constexpr int kNumFeatures = 3;
inline constexpr std::array<const char*, kNumFeatures> kFeatureNames = {
    "effective_size", "efficiency", "degree"};

struct FeatureStats {
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> stddev{};  // population; 0 => constant column
};

// Per-node (effective size, efficiency, degree), raw and z-scored.
struct FeatureMatrix {
  Matrix raw;         // n x 3
  Matrix normalized;  // n x 3, the model input
  FeatureStats stats;

  Eigen::Index rows() const { return raw.rows(); }
};

struct EgoNetwork {
  Graph graph;
  std::vector<NodeId> to_parent;  // ascending ids in the source graph
};

// Subgraph induced on nodes within `radius` hops of `center`.
EgoNetwork ego_network(const Graph& g, NodeId center, int radius);

// d - 2t/d with t the number of edges among the neighbors; 0 if d = 0.
double effective_size(const Graph& g, NodeId v);
// effective_size / degree; 0 if d = 0.
double efficiency(const Graph& g, NodeId v);

Matrix raw_features(const Graph& g);

// Z-scores each column with its own population mean and deviation. Constant
// columns normalize to 0.
FeatureMatrix normalize_features(Matrix raw);
FeatureMatrix node_features(const Graph& g);

// Inverse of the z-score using the stored stats. Constant columns come
// back as their mean.
Matrix denormalize(const Matrix& normalized, const FeatureStats& stats);

// Recomputes raw rows for `nodes` on g (the graph after an edit), then
// refreshes the normalization.
void update_features(FeatureMatrix& features, const Graph& g,
                     std::span<const NodeId> nodes);

}  // namespace shs

#endif  // SHS_FEATURES_H_
