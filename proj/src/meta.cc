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

#include "shs/meta.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "shs/edgelist.h"
#include "shs/errors.h"
#include "shs/io.h"
#include "shs/maml.h"

namespace shs {
namespace {

void check_finite(double loss, const char* what) {
  if (!std::isfinite(loss)) throw NumericError(fmt::format("{} is {}", what, loss));
}

}  // namespace

void validate(const TaskBundle& task) {
  const NodeId n = task.graph.num_nodes();
  if (task.labels.labels.size() != n || task.features.rows() != n) {
    throw DataError(fmt::format("task {}: labels/features do not match {} nodes", task.id, n));
  }
  if (task.support.empty() || task.query.empty()) {
    throw DataError(fmt::format("task {}: support and query must be non-empty", task.id));
  }
  std::vector<std::uint8_t> side(n, 0);
  for (NodeId v : task.support) {
    if (v >= n) throw DataError(fmt::format("task {}: support node {} out of range", task.id, v));
    side[v] |= 1;
  }
  for (NodeId v : task.query) {
    if (v >= n) throw DataError(fmt::format("task {}: query node {} out of range", task.id, v));
    if (side[v] & 1) {
      throw DataError(fmt::format("task {}: node {} is in both support and query", task.id, v));
    }
  }
}

void validate(const MetaConfig& config) {
  if (!(config.inner_lr >= 0.0)) throw std::invalid_argument("inner_lr must be >= 0");
  if (!(config.meta_lr > 0.0)) throw std::invalid_argument("meta_lr must be positive");
  if (config.inner_steps < 1) throw std::invalid_argument("inner_steps must be >= 1");
  if (config.meta_epochs < 0) throw std::invalid_argument("meta_epochs must be >= 0");
  if (config.patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (config.fine_tune_steps < 0) throw std::invalid_argument("fine_tune_steps must be >= 0");
  if (!(config.support_ratio > 0.0 && config.support_ratio < 1.0)) {
    throw std::invalid_argument("support_ratio must lie in (0, 1)");
  }
  if (config.second_order) {
    throw std::invalid_argument("second-order MAML is not available; use first order");
  }
}

SupportQuerySplit split_support_query(std::span<const NodeId> labeled,
                                      const LabelVector& labels, double ratio,
                                      std::uint64_t seed) {
  if (labeled.size() < 2) throw std::invalid_argument("need at least 2 labeled nodes");
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
  const std::size_t total = labeled.size();
  const auto support_size =
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(total)));
  if (support_size == 0 || support_size == total) {
    throw std::invalid_argument(fmt::format(
        "ratio {} on {} nodes leaves an empty support or query set", ratio, total));
  }

  std::vector<NodeId> pos, neg;
  for (NodeId v : labeled) {
    if (v >= labels.labels.size()) throw std::invalid_argument("labeled node out of range");
    (labels.labels[v] ? pos : neg).push_back(v);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  auto pos_take = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(pos.size())));
  pos_take = std::clamp(pos_take, support_size > neg.size() ? support_size - neg.size() : 0,
                        std::min(pos.size(), support_size));
  const std::size_t neg_take = support_size - pos_take;

  SupportQuerySplit out;
  out.support.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(pos_take));
  out.support.insert(out.support.end(), neg.begin(),
                     neg.begin() + static_cast<std::ptrdiff_t>(neg_take));
  out.query.assign(pos.begin() + static_cast<std::ptrdiff_t>(pos_take), pos.end());
  out.query.insert(out.query.end(), neg.begin() + static_cast<std::ptrdiff_t>(neg_take),
                   neg.end());
  std::sort(out.support.begin(), out.support.end());
  std::sort(out.query.begin(), out.query.end());
  return out;
}

ModelParams GnnTask::support_gradient(const ModelParams& theta) const {
  const ForwardTrace trace = forward(theta, task_->graph, task_->features.normalized);
  return backward(trace, task_->graph, task_->labels, task_->support, theta, 0.0);
}

std::pair<double, ModelParams> GnnTask::query_loss_gradient(
    const ModelParams& theta) const {
  const ForwardTrace trace = forward(theta, task_->graph, task_->features.normalized);
  const double loss = bce_loss(trace, task_->labels, task_->query);
  return {loss, backward(trace, task_->graph, task_->labels, task_->query, theta, 0.0)};
}

double GnnTask::support_loss(const ModelParams& theta) const {
  const ForwardTrace trace = forward(theta, task_->graph, task_->features.normalized);
  return bce_loss(trace, task_->labels, task_->support);
}

double GnnTask::query_loss(const ModelParams& theta) const {
  const ForwardTrace trace = forward(theta, task_->graph, task_->features.normalized);
  return bce_loss(trace, task_->labels, task_->query);
}

ModelParams inner_adapt(const ModelParams& theta, const TaskBundle& task,
                        double alpha, int steps) {
  return maml::inner_adapt(theta, GnnTask(task), alpha, steps);
}

MetaTrainResult meta_train(std::span<const TaskBundle> tasks,
                           const MetaConfig& config, const TrainConfig& arch) {
  validate(config);
  if (tasks.size() < 2) throw std::invalid_argument("meta_train needs at least 2 tasks");
  for (const TaskBundle& t : tasks) validate(t);
  std::vector<GnnTask> views;
  views.reserve(tasks.size());
  for (const TaskBundle& t : tasks) views.emplace_back(t);
  const int in_features = static_cast<int>(tasks.front().features.normalized.cols());

  ModelParams theta = init_params(arch, config.seed, in_features);
  MetaTrainResult result{theta, {}, 0};
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 0; epoch < config.meta_epochs; ++epoch) {
    auto step = maml::meta_step(theta, std::span<const GnnTask>(views), config.inner_lr,
                                config.inner_steps, config.meta_lr);
    check_finite(step.mean_query_loss, "meta query loss");
    result.query_loss.push_back(step.mean_query_loss);
    if (step.mean_query_loss < best) {
      best = step.mean_query_loss;
      result.params = theta;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
    theta = std::move(step.theta);
    if (!all_finite(theta)) throw NumericError("non-finite meta parameters");
  }
  return result;
}

ModelParams fine_tune(const ModelParams& general, const TaskBundle& task,
                      double alpha, int steps) {
  return maml::inner_adapt(general, GnnTask(task), alpha, steps);
}

Metrics meta_evaluate(const ModelParams& params, const TaskBundle& task,
                      double k_percent) {
  validate(task);
  const Vector p = infer_probabilities(params, task.graph, task.features.normalized);
  std::vector<NodeId> ranked = task.query;
  std::sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) {
    return p[a] != p[b] ? p[a] > p[b] : a < b;
  });
  LabelVector predicted;
  predicted.k_percent = k_percent;
  predicted.labels.assign(task.graph.num_nodes(), 0);
  const std::size_t count = top_k_count(ranked.size(), k_percent);
  for (std::size_t i = 0; i < count; ++i) predicted.labels[ranked[i]] = 1;
  return accuracy_on(predicted, task.labels, task.query);
}

void write_task_manifest(const std::filesystem::path& path,
                         const std::vector<TaskManifestEntry>& entries) {
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    tasks.push_back({{"id", e.id},
                     {"graph", e.graph},
                     {"features", e.features},
                     {"labels", e.labels},
                     {"split_seed", e.split_seed},
                     {"support_ratio", e.support_ratio}});
  }
  nlohmann::ordered_json doc = {{"format", "shs-tasks"}, {"version", 1}, {"tasks", tasks}};
  write_text(path, doc.dump(2) + "\n");
}

std::vector<TaskManifestEntry> read_task_manifest(const std::filesystem::path& path) {
  std::vector<TaskManifestEntry> out;
  try {
    const auto doc = nlohmann::json::parse(read_text(path));
    for (const auto& t : doc.at("tasks")) {
      TaskManifestEntry e;
      e.id = t.at("id").get<std::string>();
      e.graph = t.at("graph").get<std::string>();
      e.features = t.at("features").get<std::string>();
      e.labels = t.at("labels").get<std::string>();
      e.split_seed = t.at("split_seed").get<std::uint64_t>();
      e.support_ratio = t.value("support_ratio", 0.5);
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(fmt::format("task manifest {}: {}", path.string(), ex.what()));
  }
  return out;
}

std::vector<TaskBundle> load_tasks(const std::filesystem::path& manifest) {
  const auto base = manifest.parent_path();
  std::vector<TaskBundle> tasks;
  for (const auto& e : read_task_manifest(manifest)) {
    TaskBundle t;
    t.id = e.id;
    t.graph = read_edgelist(base / e.graph);
    t.features = read_features(base / e.features);
    t.labels = read_labels(base / e.labels);
    std::vector<NodeId> all(t.graph.num_nodes());
    for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
    auto split = split_support_query(all, t.labels, e.support_ratio, e.split_seed);
    t.support = std::move(split.support);
    t.query = std::move(split.query);
    validate(t);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

CheckpointHeader meta_header(const MetaConfig& config) {
  return {{"meta.inner_lr", fmt::format("{:.17g}", config.inner_lr)},
          {"meta.meta_lr", fmt::format("{:.17g}", config.meta_lr)},
          {"meta.inner_steps", std::to_string(config.inner_steps)},
          {"meta.meta_epochs", std::to_string(config.meta_epochs)},
          {"meta.patience", std::to_string(config.patience)},
          {"meta.fine_tune_steps", std::to_string(config.fine_tune_steps)},
          {"meta.support_ratio", fmt::format("{:.17g}", config.support_ratio)},
          {"meta.order", "first"},
          {"meta.seed", std::to_string(config.seed)}};
}

}  // namespace shs
