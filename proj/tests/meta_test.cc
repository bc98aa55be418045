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

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "shs/bench.h"
#include "shs/centrality.h"
#include "shs/edgelist.h"
#include "shs/errors.h"
#include "shs/generators.h"
#include "shs/io.h"
#include "shs/maml.h"
#include "shs/meta.h"

namespace shs {
namespace {

// Scalar toy system L(theta) = theta^2 for the generic MAML routines.
struct Scalar {
  double v = 0;
};
void axpy(Scalar& y, double a, const Scalar& x) { y.v += a * x.v; }
Scalar zeros_like(const Scalar&) { return {0.0}; }

struct SquareTask {
  Scalar support_gradient(const Scalar& t) const { return {2 * t.v}; }
  std::pair<double, Scalar> query_loss_gradient(const Scalar& t) const {
    return {t.v * t.v, {2 * t.v}};
  }
};

TEST(ToyMaml, InnerSteps) {
  const SquareTask task;
  EXPECT_NEAR(maml::inner_adapt(Scalar{1.0}, task, 0.1, 1).v, 0.8, 1e-12);
  EXPECT_NEAR(maml::inner_adapt(Scalar{1.0}, task, 0.1, 2).v, 0.64, 1e-12);
  EXPECT_EQ(maml::inner_adapt(Scalar{1.0}, task, 0.0, 3).v, 1.0);
}

TEST(ToyMaml, FirstOrderMetaStep) {
  const std::vector<SquareTask> tasks(1);
  const auto step = maml::meta_step(Scalar{1.0}, std::span(tasks), 0.1, 1, 0.001);
  EXPECT_NEAR(step.theta.v, 0.9984, 1e-12);
  EXPECT_NEAR(step.mean_query_loss, 0.64, 1e-12);
  // alpha = 0: one plain gradient step of size gamma * |dL/dtheta| = 0.002.
  const auto plain = maml::meta_step(Scalar{1.0}, std::span(tasks), 0.0, 1, 0.001);
  EXPECT_NEAR(plain.theta.v, 0.998, 1e-12);
}

// ------------------------------------------------------------- splits

LabelVector labels_with(std::size_t n, std::size_t positives) {
  LabelVector l;
  l.labels.assign(n, 0);
  for (std::size_t i = 0; i < positives; ++i) l.labels[i * (n / positives)] = 1;
  return l;
}

std::vector<NodeId> iota_nodes(NodeId n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

std::size_t count_pos(const std::vector<NodeId>& s, const LabelVector& l) {
  return std::count_if(s.begin(), s.end(), [&](NodeId v) { return l.labels[v]; });
}

TEST(Split, StratifiedHalf) {
  const LabelVector l = labels_with(100, 5);
  const auto nodes = iota_nodes(100);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SupportQuerySplit s = split_support_query(nodes, l, 0.5, seed);
    EXPECT_EQ(s.support.size(), 50u);
    EXPECT_EQ(s.query.size(), 50u);
    const auto sp = count_pos(s.support, l);
    EXPECT_TRUE(sp == 2 || sp == 3);
    EXPECT_EQ(sp + count_pos(s.query, l), 5u);
    std::vector<NodeId> all = s.support;
    all.insert(all.end(), s.query.begin(), s.query.end());
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, nodes);
  }
}

TEST(Split, DeterministicAndRejects) {
  const LabelVector l = labels_with(100, 5);
  const auto nodes = iota_nodes(100);
  const auto a = split_support_query(nodes, l, 0.5, 9);
  const auto b = split_support_query(nodes, l, 0.5, 9);
  EXPECT_EQ(a.support, b.support);
  EXPECT_EQ(a.query, b.query);
  const LabelVector two = labels_with(2, 1);
  EXPECT_THROW(split_support_query(iota_nodes(2), two, 0.99, 1),
               std::invalid_argument);
  EXPECT_THROW(split_support_query(iota_nodes(1), two, 0.5, 1),
               std::invalid_argument);
}

// ---------------------------------------------------------- GNN tasks

std::vector<TaskBundle> small_corpus(std::uint64_t seed, int per_family = 2) {
  MetaCorpusOptions o;
  o.tasks_per_family = per_family;
  o.min_nodes = 80;
  o.max_nodes = 160;
  return build_meta_corpus(o, seed);
}

TrainConfig small_arch() {
  TrainConfig c;
  c.layers = 2;
  c.hidden = 8;
  return c;
}

std::vector<double> flat(const ModelParams& p) {
  std::vector<double> out;
  for (auto t : p.tensors()) out.insert(out.end(), t.begin(), t.end());
  return out;
}

TEST(Corpus, TasksAreValid) {
  const auto tasks = small_corpus(1);
  ASSERT_EQ(tasks.size(), 6u);
  EXPECT_EQ(tasks[0].id, "er-0");
  EXPECT_EQ(tasks[1].id, "sf-0");
  EXPECT_EQ(tasks[2].id, "grp-0");
  for (const auto& t : tasks) {
    EXPECT_NO_THROW(validate(t));
    EXPECT_GE(t.graph.num_nodes(), 80u);
    EXPECT_LE(t.graph.num_nodes(), 160u);
  }
}

TEST(InnerAdapt, ZeroStepSizeIsIdentity) {
  const auto tasks = small_corpus(2, 1);
  const ModelParams theta = init_params(small_arch(), 4);
  EXPECT_EQ(flat(inner_adapt(theta, tasks[0], 0.0, 3)), flat(theta));
  EXPECT_EQ(flat(fine_tune(theta, tasks[0], 0.1, 0)), flat(theta));
}

TEST(InnerAdapt, QueryLabelsNeverReachTheInnerLoop) {
  const auto tasks = small_corpus(3, 1);
  TaskBundle t = tasks[1];
  const ModelParams theta = init_params(small_arch(), 5);
  const auto before = flat(inner_adapt(theta, t, 0.1, 2));
  for (NodeId q : t.query) t.labels.labels[q] ^= 1;
  EXPECT_EQ(flat(inner_adapt(theta, t, 0.1, 2)), before);
}

TEST(MetaStep, ZeroAlphaEqualsPooledQueryGradient) {
  const auto tasks = small_corpus(4, 1);
  const ModelParams theta = init_params(small_arch(), 6);
  std::vector<GnnTask> views(tasks.begin(), tasks.end());
  const auto step = maml::meta_step(theta, std::span<const GnnTask>(views),
                                    0.0, 1, 0.001);
  ModelParams total = zeros_like(theta);
  for (const auto& t : tasks) {
    const ForwardTrace tr = forward(theta, t.graph, t.features.normalized);
    axpy(total, 1.0, backward(tr, t.graph, t.labels, t.query, theta, 0.0));
  }
  ModelParams expect = theta;
  axpy(expect, -0.001, total);
  EXPECT_EQ(flat(step.theta), flat(expect));
}

TEST(MetaTrain, DescendsAndIsDeterministic) {
  const auto tasks = small_corpus(5);
  MetaConfig c;
  c.meta_epochs = 15;
  c.meta_lr = 0.01;
  c.seed = 3;
  const MetaTrainResult a = meta_train(tasks, c, small_arch());
  const MetaTrainResult b = meta_train(tasks, c, small_arch());
  EXPECT_EQ(flat(a.params), flat(b.params));
  EXPECT_EQ(a.query_loss, b.query_loss);
  double at_best = 0, at_init = 0;
  const ModelParams init = init_params(small_arch(), 3);
  for (const auto& t : tasks) {
    GnnTask g(t);
    at_best += g.query_loss(inner_adapt(a.params, t, c.inner_lr, 1));
    at_init += g.query_loss(inner_adapt(init, t, c.inner_lr, 1));
  }
  EXPECT_LE(at_best, at_init);
  EXPECT_EQ(a.query_loss[a.best_epoch],
            *std::min_element(a.query_loss.begin(), a.query_loss.end()));
}

TEST(MetaTrain, EarlyStopsOnPatience) {
  const auto tasks = small_corpus(6, 1);
  MetaConfig c;
  c.meta_epochs = 200;
  c.patience = 2;
  c.meta_lr = 50.0;  // large enough to make the loss bounce
  c.seed = 1;
  const MetaTrainResult r = meta_train(tasks, c, small_arch());
  EXPECT_LT(r.query_loss.size(), 200u);
  EXPECT_LE(static_cast<int>(r.query_loss.size()), r.best_epoch + 1 + c.patience);
}

TEST(MetaTrain, RejectsBadConfigs) {
  const auto tasks = small_corpus(7, 1);
  MetaConfig c;
  c.second_order = true;
  EXPECT_THROW(meta_train(tasks, c, small_arch()), std::invalid_argument);
  c.second_order = false;
  c.inner_steps = 0;
  EXPECT_THROW(meta_train(tasks, c, small_arch()), std::invalid_argument);
  c.inner_steps = 1;
  EXPECT_THROW(meta_train(std::span(tasks).first(1), c, small_arch()),
               std::invalid_argument);
}

TEST(FineTune, SupportLossDoesNotIncrease) {
  MetaCorpusOptions o;
  o.tasks_per_family = 1;
  o.min_nodes = 500;
  o.max_nodes = 500;
  const auto tasks = build_meta_corpus(o, 8);
  const ModelParams theta = init_params(TrainConfig{}, 2);
  for (const auto& t : tasks) {
    GnnTask g(t);
    const double before = g.support_loss(theta);
    const ModelParams tuned = fine_tune(theta, t, 0.01, 10);
    EXPECT_LE(g.support_loss(tuned), before) << t.id;
    EXPECT_EQ(flat(fine_tune(theta, t, 0.01, 10)), flat(tuned));
  }
}

TEST(MetaEvaluate, QueryOnlyMetrics) {
  auto tasks = small_corpus(9, 1);
  TaskBundle t = tasks[0];
  const ModelParams theta = init_params(small_arch(), 1);
  const Metrics m = meta_evaluate(theta, t, 5);
  for (NodeId s : t.support) t.labels.labels[s] ^= 1;
  const Metrics m2 = meta_evaluate(theta, t, 5);
  EXPECT_EQ(m.accuracy, m2.accuracy);
  EXPECT_EQ(m.overlap, m2.overlap);
}

TEST(MetaEvaluate, PerfectAndMajority) {
  // A query set of 100 nodes with 5 positives.
  auto tasks = small_corpus(10, 1);
  TaskBundle t = tasks[1];
  const NodeId n = t.graph.num_nodes();
  std::vector<NodeId> all = iota_nodes(n);
  t.query.assign(all.begin(), all.begin() + 100);
  t.support.assign(all.begin() + 100, all.end());
  t.labels.labels.assign(n, 0);
  for (NodeId q = 0; q < 100; q += 20) t.labels.labels[q] = 1;
  LabelVector none;
  none.labels.assign(n, 0);
  const Metrics majority = accuracy_on(none, t.labels, t.query);
  EXPECT_DOUBLE_EQ(majority.accuracy, 0.95);
  EXPECT_EQ(accuracy_on(t.labels, t.labels, t.query).accuracy, 1.0);
}

TEST(TaskManifest, RoundTrip) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "shs_meta_manifest";
  fs::create_directories(dir);
  const auto tasks = small_corpus(11, 1);
  std::vector<TaskManifestEntry> entries;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    write_edgelist(t.graph, dir / (t.id + ".edges"));
    write_features(t.features, dir / (t.id + ".features.csv"));
    write_labels(ScoreVector{ScoreKind::kBetweenness,
                             std::vector<double>(t.graph.num_nodes(), 0.0)},
                 t.labels, dir / (t.id + ".labels.csv"));
    entries.push_back({t.id, t.id + ".edges", t.id + ".features.csv",
                       t.id + ".labels.csv", 100 + i, 0.5});
  }
  write_task_manifest(dir / "tasks.json", entries);
  const auto back = read_task_manifest(dir / "tasks.json");
  ASSERT_EQ(back.size(), entries.size());
  EXPECT_EQ(back[2].split_seed, 102u);
  const auto loaded = load_tasks(dir / "tasks.json");
  ASSERT_EQ(loaded.size(), tasks.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].graph, tasks[i].graph);
    EXPECT_EQ(loaded[i].labels.labels, tasks[i].labels.labels);
    const auto s = split_support_query(iota_nodes(tasks[i].graph.num_nodes()),
                                       tasks[i].labels, 0.5, 100 + i);
    EXPECT_EQ(loaded[i].support, s.support);
  }
  write_text(dir / "broken.json", "{\"tasks\": 3}");
  EXPECT_THROW(read_task_manifest(dir / "broken.json"), DataError);
}

}  // namespace
}  // namespace shs
