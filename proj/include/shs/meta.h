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

#ifndef SHS_META_H_
#define SHS_META_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shs/centrality.h"
#include "shs/checkpoint.h"
#include "shs/features.h"
#include "shs/gnn.h"
#include "shs/graph.h"

namespace shs {

// One meta-learning task: a labeled graph with a support/query node split.
struct TaskBundle {
  std::string id;
  Graph graph;
  FeatureMatrix features;
  LabelVector labels;
  std::vector<NodeId> support;
  std::vector<NodeId> query;
};

// Throws DataError when support/query overlap, are empty, or index
// outside the graph.
void validate(const TaskBundle& task);

struct MetaConfig {
  double inner_lr = 0.1;    // alpha
  double meta_lr = 0.001;   // gamma
  int inner_steps = 1;
  int meta_epochs = 200;
  int patience = 20;
  int fine_tune_steps = 10;
  double support_ratio = 0.5;
  bool second_order = false;  // reserved; only first order is implemented
  std::uint64_t seed = 0;
};

void validate(const MetaConfig& config);

struct SupportQuerySplit {
  std::vector<NodeId> support;
  std::vector<NodeId> query;
};

// Random split with |support| = round(ratio * count), stratified by label so
// each side keeps the SHS share to within one node. Both sides come back
// sorted. Throws std::invalid_argument if either side would be empty.
SupportQuerySplit split_support_query(std::span<const NodeId> labeled,
                                      const LabelVector& labels, double ratio,
                                      std::uint64_t seed);

// Adapter exposing a TaskBundle to the generic first-order MAML routines.
class GnnTask {
 public:
  explicit GnnTask(const TaskBundle& task) : task_(&task) {}

  ModelParams support_gradient(const ModelParams& theta) const;
  std::pair<double, ModelParams> query_loss_gradient(const ModelParams& theta) const;
  double support_loss(const ModelParams& theta) const;
  double query_loss(const ModelParams& theta) const;

  const TaskBundle& bundle() const { return *task_; }

 private:
  const TaskBundle* task_;
};

// Plain gradient descent on the support BCE (no weight decay, no Adam).
ModelParams inner_adapt(const ModelParams& theta, const TaskBundle& task,
                        double alpha, int steps);

struct MetaTrainResult {
  ModelParams params;              // best mean-query-loss initialization
  std::vector<double> query_loss;  // per meta-epoch, at the pre-update theta
  int best_epoch = 0;
};

// Meta-trains an initialization of the architecture in `arch` (layers,
// hidden). Stops after meta_epochs or `patience` epochs without improvement.
MetaTrainResult meta_train(std::span<const TaskBundle> tasks,
                           const MetaConfig& config, const TrainConfig& arch);

ModelParams fine_tune(const ModelParams& general, const TaskBundle& task,
                      double alpha, int steps);

// Ranks the query nodes by P(SHS), labels the top k% of them, and scores
// against the truth on the query nodes only.
Metrics meta_evaluate(const ModelParams& params, const TaskBundle& task,
                      double k_percent = 5.0);

// Task manifest (JSON):
//   {"tasks": [{"id", "graph", "features", "labels", "split_seed",
//               "support_ratio"}]}
// Paths are relative to the manifest's directory.
struct TaskManifestEntry {
  std::string id;
  std::string graph;
  std::string features;
  std::string labels;
  std::uint64_t split_seed = 0;
  double support_ratio = 0.5;
};

void write_task_manifest(const std::filesystem::path& path,
                         const std::vector<TaskManifestEntry>& entries);
std::vector<TaskManifestEntry> read_task_manifest(const std::filesystem::path& path);
std::vector<TaskBundle> load_tasks(const std::filesystem::path& manifest);

CheckpointHeader meta_header(const MetaConfig& config);

}  // namespace shs

#endif  // SHS_META_H_
