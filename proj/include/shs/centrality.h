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

#ifndef SHS_CENTRALITY_H_
#define SHS_CENTRALITY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shs/graph.h"

namespace shs {

enum class ScoreKind { kBetweenness, kCloseness, kConstraint, kProbShs };

struct ScoreVector {
  ScoreKind kind = ScoreKind::kBetweenness;
  std::vector<double> values;
};

struct LabelVector {
  std::vector<std::uint8_t> labels;  // 1 = structural hole spanner
  double k_percent = 0.0;

  std::size_t positives() const;
};

// Constraint assigned to degree-0 nodes. Real nodes never exceed 1.
inline constexpr double kIsolatedConstraint = 2.0;

// Exact betweenness over unordered pairs {s, t}, endpoints excluded,
// unnormalized. Path P4 gives [0, 2, 2, 0].
ScoreVector brandes_bc(const Graph& g);

// Direct evaluation of sigma_st(v) / sigma_st over all pairs. O(n^2 (n + m));
// refuses graphs above kBruteForceMaxNodes.
inline constexpr NodeId kBruteForceMaxNodes = 200;
ScoreVector bc_bruteforce(const Graph& g);

// 1 / (sum of distances to reachable nodes); 0 for isolated nodes.
ScoreVector closeness(const Graph& g);

// Burt's constraint with proportional tie strength p_ij = 1/d(i).
ScoreVector constraint(const Graph& g);

// Number of positives for a k% labeling of n nodes: ceil(k n / 100).
std::size_t top_k_count(std::size_t n, double k_percent);

// Labels the ceil(k n / 100) highest-scoring nodes; ties go to the lower id.
LabelVector label_top_k(const ScoreVector& scores, double k_percent);

// Top-k labeling by SHS likelihood. Constraint ranks ascending unless
// constraint_descending is set. Throws std::invalid_argument for BC scores.
LabelVector baseline_predict(const ScoreVector& scores, double k_percent,
                             bool constraint_descending = false);

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double overlap = 0.0;  // |pred ∩ truth| / |truth|
};

// Throws std::invalid_argument when the label vectors differ in length.
Metrics accuracy(const LabelVector& predicted, const LabelVector& truth);

// Same, restricted to `nodes` (which may not repeat).
Metrics accuracy_on(const LabelVector& predicted, const LabelVector& truth,
                    std::span<const NodeId> nodes);

}  // namespace shs

#endif  // SHS_CENTRALITY_H_
