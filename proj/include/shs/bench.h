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

#ifndef SHS_BENCH_H_
#define SHS_BENCH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shs/centrality.h"
#include "shs/features.h"
#include "shs/generators.h"
#include "shs/gnn.h"
#include "shs/graph.h"
#include "shs/meta.h"

namespace shs {

using Json = nlohmann::ordered_json;

// A dataset is either generated or loaded from an edge list.
struct DatasetSpec {
  std::string id;
  std::optional<GeneratorSpec> generator;
  std::filesystem::path edgelist;
};

Json to_json(const GeneratorSpec& spec);
Json to_json(const DatasetSpec& spec);
Json to_json(const TrainConfig& config);
Json to_json(const MetaConfig& config);

struct PrepareOptions {
  std::vector<double> k_percents = {5, 10, 20};
  NodeId bc_node_cap = 400000;
  bool force = false;
};

struct PreparedDataset {
  std::string id;
  Graph graph;
  std::vector<std::uint64_t> original_ids;  // only for edge-list input
  FeatureMatrix features;
  ScoreVector bc;
  std::vector<double> k_percents;
  std::vector<LabelVector> labels;  // parallel to k_percents
  double bc_seconds = 0.0;
  double feature_seconds = 0.0;

  const LabelVector& labels_for(double k_percent) const;
};

// Builds the graph, exact betweenness, top-k labels for every k and the
// normalized features. Graphs above bc_node_cap need `force`.
PreparedDataset prepare_dataset(const DatasetSpec& spec,
                                const PrepareOptions& options);

// Writes graph.edges, features.csv (raw), bc.csv and labels_k<k>.csv per k
// (plus graph.edges.idmap for edge-list input) and a manifest.json listing
// each file with its SHA-256. The manifest holds no timing fields.
Json write_prepared(const PreparedDataset& data, const DatasetSpec& spec,
                    const std::filesystem::path& dir);
// Reads a directory produced by write_prepared (BC and labels from disk).
PreparedDataset load_prepared(const std::filesystem::path& dir);

struct ReportRow {
  std::string dataset;
  std::string method;
  double k_percent = 0.0;
  Metrics metrics;
  double prepare_seconds = 0.0;
  double train_seconds = 0.0;
  double infer_seconds = 0.0;
  double speedup = 0.0;  // slowest baseline time / infer_seconds
};

enum class ReportFormat { kCsv, kJson, kMarkdown };
ReportFormat parse_report_format(std::string_view name);

// Column order of the CSV and JSON forms.
inline constexpr std::array<const char*, 12> kReportColumns = {
    "dataset",   "method",  "k_percent", "accuracy", "precision", "recall",
    "f1",        "overlap", "prepare_s", "train_s",  "infer_s",   "speedup"};

std::string format_report(std::span<const ReportRow> rows, ReportFormat format);
// Throws std::invalid_argument for empty rows, DataError if unwritable.
void emit_report(std::span<const ReportRow> rows, ReportFormat format,
                 const std::filesystem::path& path);
std::vector<ReportRow> parse_report_csv(const std::string& text);
// Hash of the report with every timing column zeroed.
std::string accuracy_digest(std::span<const ReportRow> rows);

// Always-present sanity method: predicts every node normal.
inline constexpr const char* kMajorityMethod = "majority";

struct ExperimentConfig {
  DatasetSpec train;
  std::vector<DatasetSpec> tests;
  std::vector<double> k_percents = {5, 10, 20};
  std::vector<std::string> methods = {"graphshs", "constraint", "closeness",
                                      "brandes"};
  TrainConfig train_config;
  MetaConfig meta_config;
  std::filesystem::path out_dir;
  int repeats = 1;
  std::uint64_t seed = 0;
  bool include_features = false;
  bool constraint_descending = false;
  bool timing_strict = false;
  bool paper_scale = false;
  PrepareOptions prepare;
};

void validate(const ExperimentConfig& config);
Json to_json(const ExperimentConfig& config);

// Scale-free train/test setup: one SF training graph and `tests` SF test
// graphs, sized for the desk (1000 nodes) or full scale (5000 train;
// 5000/10000/20000/50000 test).
ExperimentConfig desk_static_config(std::uint64_t seed, bool paper_scale);

struct StaticBenchmark {
  std::vector<ReportRow> rows;
  std::vector<ModelParams> models;  // GraphSHS model per k
  Json manifest;
};

// Trains GraphSHS per k on the training graph, then scores every method on
// every test graph and k. GraphSHS inference time excludes training and,
// unless include_features is set, feature extraction.
StaticBenchmark run_static_benchmark(const ExperimentConfig& config);

struct MetaCorpusOptions {
  int tasks_per_family = 4;
  NodeId min_nodes = 300;
  NodeId max_nodes = 1000;
  double er_mean_degree = 5.0;
  double k_percent = 5.0;
  double test_fraction = 0.2;
  double support_ratio = 0.5;
};

MetaCorpusOptions desk_meta_corpus(bool paper_scale);

// Builds the ER/SF/GRP task corpus for one seed (ids "er-0", "sf-1", ...).
std::vector<TaskBundle> build_meta_corpus(const MetaCorpusOptions& options,
                                          std::uint64_t seed);

struct MetaBenchmark {
  std::vector<ReportRow> rows;  // one per (seed, held-out task, method)
  std::vector<std::vector<std::string>> train_ids;  // per seed
  std::vector<std::vector<std::string>> test_ids;   // per seed
  std::vector<double> meta_accuracy;     // per seed, mean over test tasks
  std::vector<double> frozen_accuracy;   // GraphSHS without fine-tuning
  std::vector<double> tuned_accuracy;    // GraphSHS fine-tuned on support
  Json manifest;
};

// For each repeat seed: meta-train on the training tasks, fine-tune on each
// held-out task's support set, evaluate on its query set; GraphSHS trained
// on the pooled training tasks is evaluated frozen and fine-tuned.
MetaBenchmark run_meta_benchmark(const ExperimentConfig& config,
                                 const MetaCorpusOptions& corpus);

struct DynamicStep {
  Edge removed;
  std::size_t edges_after = 0;
  double model_seconds = 0.0;    // feature refresh + inference + ranking
  double brandes_seconds = 0.0;  // full betweenness + top-k labels
  double speedup = 0.0;
  Metrics agreement;  // model labels vs recomputed ground truth
};

struct DynamicReport {
  std::vector<DynamicStep> steps;
  double mean_speedup = 0.0;
  double total_speedup = 0.0;  // sum of brandes time / sum of model time
};

// Deletes `deletions` uniformly random edges one at a time. After each
// deletion the graph is validated, features are refreshed for the two
// endpoints and their neighbors, and the model's top-k labels are timed
// against a full recomputation.
DynamicReport run_dynamic_experiment(const Graph& g, int deletions,
                                     const ModelParams& params,
                                     std::uint64_t seed,
                                     double k_percent = 5.0);

enum class SweepAxis { kLayers, kHidden };
SweepAxis parse_sweep_axis(std::string_view name);
std::vector<int> sweep_values(SweepAxis axis);  // 1..6 or 16..256

struct SweepReport {
  SweepAxis axis = SweepAxis::kLayers;
  std::vector<int> values;
  std::vector<ReportRow> rows;  // one per value; Top-k mean over tests
  Json shared_hyperparameters;
};

// Trains one model per axis value for each repeat seed (seed, seed+1, ...)
// and reports the Top-k accuracy averaged over seeds and test graphs.
SweepReport run_sensitivity_sweep(const ExperimentConfig& config,
                                  SweepAxis axis, double k_percent = 5.0);

// Writes config + seeds + hashes into dir/manifest.json.
void write_manifest(const Json& manifest, const std::filesystem::path& dir);

}  // namespace shs

#endif  // SHS_BENCH_H_
