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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset. Exit status is 0 only if every selected
// criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "shs/bench.h"
#include "shs/centrality.h"
#include "shs/checkpoint.h"
#include "shs/features.h"
#include "shs/generators.h"
#include "shs/gnn.h"
#include "shs/io.h"
#include "shs/maml.h"
#include "shs/meta.h"
#include "gradient_oracle.h"
#include "test_support.h"

namespace shs {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and limits.
constexpr double kBcTolerance = 1e-9;
constexpr double kBcSeconds = 10.0;
constexpr double kGradientTolerance = 1e-4;
constexpr double kGradientSeconds = 30.0;
constexpr double kEquivarianceTolerance = 1e-9;
constexpr double kFeatureTolerance = 1e-9;
constexpr double kDeskAccuracy = 0.93;
constexpr double kDeskOverlap = 0.4;
constexpr double kDeskSeconds = 15 * 60.0;
constexpr double kInferenceSpeedup = 10.0;
constexpr double kMetaAccuracy = 0.90;
constexpr double kMetaSeconds = 30 * 60.0;
constexpr double kToyTolerance = 1e-12;
constexpr double kDynamicSpeedup = 10.0;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// The desk GraphSHS model (SF-1000 training graph, k = 5) is shared by
// criteria 5, 6 and 9.
struct DeskModel {
  ExperimentConfig config;
  StaticBenchmark bench;
  double seconds = 0;
};

DeskModel& desk_model() {
  static std::optional<DeskModel> model;
  if (!model) {
    DeskModel m;
    m.config = desk_static_config(7, false);
    m.config.k_percents = {5};
    m.config.methods = {"graphshs"};
    const auto t0 = Clock::now();
    m.bench = run_static_benchmark(m.config);
    m.seconds = since(t0);
    model = std::move(m);
  }
  return *model;
}

Graph path4() {
  return build_graph(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  double worst = 0;
  int graphs = 0;
  const double ps[] = {0.05, 0.1, 0.3};
  for (int i = 0; i < 100; ++i) {
    const NodeId n = 3 + static_cast<NodeId>(rng() % 48);
    const Graph g = i < 75 ? generate_er(n, ps[i % 3], rng())
                           : generate_sf(n, 0.4, 0.05, 0.55, rng());
    const auto a = brandes_bc(g).values;
    const auto b = bc_bruteforce(g).values;
    for (std::size_t v = 0; v < a.size(); ++v) {
      worst = std::max(worst, std::abs(a[v] - b[v]));
    }
    ++graphs;
  }
  const auto p4 = brandes_bc(path4()).values;
  const bool p4_ok = p4 == std::vector<double>{0, 2, 2, 0};
  const Graph star = build_graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  const bool star_ok = brandes_bc(star).values[0] == 3.0;
  const double secs = since(t0);
  return {worst < kBcTolerance && p4_ok && star_ok && secs < kBcSeconds,
          fmt::format("{} graphs, max |brandes - brute| {:.2e} (tol {:.0e}); "
                      "P4 {}; K1,3 center {}; {:.2f} s (limit {:.0f} s)",
                      graphs, worst, kBcTolerance, p4_ok ? "ok" : "WRONG",
                      star_ok ? "ok" : "WRONG", secs, kBcSeconds)};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  double worst = 0;
  int count = 0;
  for (int layers : {1, 2, 4}) {
    for (int hidden : {4, 16}) {
      for (int r = 0; r < 4; ++r) {
        const auto in = testing::random_gradient_instance(rng, layers, hidden);
        worst = std::max(worst, testing::gradient_check(in));
        ++count;
      }
    }
  }
  const double secs = since(t0);
  return {count >= 20 && worst < kGradientTolerance && secs < kGradientSeconds,
          fmt::format("{} instances, worst relative error {:.2e} (tol {:.0e}); "
                      "{:.2f} s (limit {:.0f} s)",
                      count, worst, kGradientTolerance, secs, kGradientSeconds)};
}

Outcome criterion3() {
  std::mt19937_64 rng(3);
  const Graph g = generate_sf(100, 0.4, 0.05, 0.55, 3);
  const FeatureMatrix f = node_features(g);
  TrainConfig c;
  const ModelParams p = init_params(c, 3);
  const Vector base = infer_probabilities(p, g, f.normalized);
  double worst = 0;
  for (int r = 0; r < 10; ++r) {
    const auto perm = testing::random_perm(100, rng);
    const Graph gp = permute_nodes(g, perm);
    const Vector q = infer_probabilities(p, gp, node_features(gp).normalized);
    for (NodeId v = 0; v < 100; ++v) {
      worst = std::max(worst, std::abs(q[perm[v]] - base[v]));
    }
  }
  return {worst < kEquivarianceTolerance,
          fmt::format("10 permutations of a 100-node graph, max |diff| {:.2e} "
                      "(tol {:.0e})",
                      worst, kEquivarianceTolerance)};
}

double redundancy_effective_size(const Graph& g, NodeId i) {
  const double d = static_cast<double>(g.degree(i));
  if (d == 0) return 0.0;
  double es = 0.0;
  for (NodeId j : g.neighbors(i)) {
    double r = 0.0;
    for (NodeId q = 0; q < g.num_nodes(); ++q) {
      if (q != i && q != j && g.has_edge(i, q) && g.has_edge(j, q)) r += 1.0 / d;
    }
    es += 1.0 - r;
  }
  return es;
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const NodeId n = 2 + static_cast<NodeId>(rng() % 29);
    const Graph g = testing::coin_graph(n, 0.05 + 0.1 * (i % 6), rng);
    for (NodeId v = 0; v < n; ++v) {
      worst = std::max(worst,
                       std::abs(effective_size(g, v) - redundancy_effective_size(g, v)));
    }
  }
  std::vector<Edge> k5;
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = u + 1; v < 5; ++v) k5.push_back({u, v});
  const Graph clique = build_graph(5, k5);
  const double es = effective_size(clique, 0), ef = efficiency(clique, 0);
  const bool k5_ok = std::abs(es - 1.0) < kFeatureTolerance &&
                     std::abs(ef - 0.25) < kFeatureTolerance;
  return {worst < kFeatureTolerance && k5_ok,
          fmt::format("50 graphs, max |closed - redundancy| {:.2e} (tol {:.0e}); "
                      "K5 ES {:.12g} efficiency {:.12g}",
                      worst, kFeatureTolerance, es, ef)};
}

Outcome criterion5() {
  const DeskModel& m = desk_model();
  double acc = 0, overlap = 0;
  int n = 0;
  std::string per;
  for (const auto& r : m.bench.rows) {
    if (r.method != "graphshs") continue;
    acc += r.metrics.accuracy;
    overlap += r.metrics.overlap;
    per += fmt::format(" {}={:.4f}", r.dataset, r.metrics.accuracy);
    ++n;
  }
  acc /= n;
  overlap /= n;
  return {n == 3 && acc >= kDeskAccuracy && overlap >= kDeskOverlap &&
              m.seconds < kDeskSeconds,
          fmt::format("Top-5% accuracy {:.4f} (min {:.2f}), overlap {:.3f} "
                      "(min {:.1f});{}; {:.1f} s (limit {:.0f} s)",
                      acc, kDeskAccuracy, overlap, kDeskOverlap, per, m.seconds,
                      kDeskSeconds)};
}

Outcome criterion6() {
  const ModelParams& p = desk_model().bench.models.at(0);
  const Graph g = generate_sf(20000, 0.4, 0.05, 0.55, 20000);
  auto t0 = Clock::now();
  const FeatureMatrix f = node_features(g);
  const Prediction pred = predict_ranked(p, g, f.normalized, 5);
  const double model_s = since(t0);
  t0 = Clock::now();
  const ScoreVector bc = brandes_bc(g);
  const double brandes_s = since(t0);
  const Metrics m = accuracy(pred.labels, label_top_k(bc, 5));
  const double speedup = brandes_s / model_s;
  return {speedup >= kInferenceSpeedup,
          fmt::format("SF-20000 ({} edges): GraphSHS features+forward {:.3f} s, "
                      "brandes {:.2f} s, speedup {:.1f}x (min {:.0f}x); "
                      "Top-5% accuracy {:.4f}",
                      g.num_edges(), model_s, brandes_s, speedup,
                      kInferenceSpeedup, m.accuracy)};
}

Outcome criterion7() {
  ExperimentConfig c;
  c.seed = 0;
  c.repeats = 5;
  const auto t0 = Clock::now();
  const MetaBenchmark b = run_meta_benchmark(c, desk_meta_corpus(false));
  const double secs = since(t0);
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double meta = mean(b.meta_accuracy), frozen = mean(b.frozen_accuracy),
               tuned = mean(b.tuned_accuracy);
  std::string per;
  for (std::size_t i = 0; i < b.meta_accuracy.size(); ++i) {
    per += fmt::format(" s{}:{:.4f}/{:.4f}", i, b.meta_accuracy[i],
                       b.frozen_accuracy[i]);
  }
  return {meta >= frozen && meta >= kMetaAccuracy && secs < kMetaSeconds,
          fmt::format("5 seeds, query accuracy Meta {:.4f} vs frozen GraphSHS "
                      "{:.4f} (need Meta >= frozen and Meta >= {:.2f}); "
                      "fine-tuned GraphSHS {:.4f}; per seed meta/frozen{}; "
                      "{:.0f} s (limit {:.0f} s)",
                      meta, frozen, kMetaAccuracy, tuned, per, secs,
                      kMetaSeconds)};
}

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

Outcome criterion8() {
  const SquareTask toy;
  const double inner = maml::inner_adapt(Scalar{1.0}, toy, 0.1, 1).v;
  const std::vector<SquareTask> one(1);
  const double outer = maml::meta_step(Scalar{1.0}, std::span(one), 0.1, 1, 0.001).theta.v;

  MetaCorpusOptions o;
  o.tasks_per_family = 1;
  o.min_nodes = 100;
  o.max_nodes = 200;
  const auto tasks = build_meta_corpus(o, 8);
  TrainConfig arch;
  arch.layers = 2;
  arch.hidden = 16;
  const ModelParams theta = init_params(arch, 8);
  std::vector<GnnTask> views(tasks.begin(), tasks.end());
  const ModelParams meta =
      maml::meta_step(theta, std::span<const GnnTask>(views), 0.0, 1, 0.001).theta;
  ModelParams pooled = zeros_like(theta);
  for (const auto& t : tasks) {
    const ForwardTrace tr = forward(theta, t.graph, t.features.normalized);
    axpy(pooled, 1.0, backward(tr, t.graph, t.labels, t.query, theta, 0.0));
  }
  ModelParams reference = theta;
  axpy(reference, -0.001, pooled);
  const bool bitwise = testing::flatten(meta) == testing::flatten(reference);
  return {std::abs(inner - 0.8) <= kToyTolerance &&
              std::abs(outer - 0.9984) <= kToyTolerance && bitwise,
          fmt::format("toy inner step {:.17g} (want 0.8), meta step {:.17g} "
                      "(want 0.9984), tol {:.0e}; alpha=0 vs pooled gradient "
                      "step on 3 tasks: {}",
                      inner, outer, kToyTolerance,
                      bitwise ? "bitwise equal" : "DIFFERENT")};
}

Outcome criterion9() {
  const ModelParams& p = desk_model().bench.models.at(0);
  const Graph g = generate_sf(5000, 0.4, 0.05, 0.55, 5000);
  DynamicReport r;
  try {
    r = run_dynamic_experiment(g, 100, p, 9, 5);
  } catch (const std::exception& e) {
    return {false, fmt::format("dynamic run aborted: {}", e.what())};
  }
  double min_speedup = 1e300, agreement = 0;
  for (const auto& s : r.steps) {
    min_speedup = std::min(min_speedup, s.speedup);
    agreement += s.agreement.accuracy / static_cast<double>(r.steps.size());
  }
  const bool all_steps = r.steps.size() == 100 &&
                         r.steps.back().edges_after == g.num_edges() - 100;
  return {all_steps && r.mean_speedup >= kDynamicSpeedup,
          fmt::format("SF-5000, {} deletions validated; mean speedup {:.1f}x "
                      "(min {:.0f}x), slowest step {:.1f}x, aggregate {:.1f}x; "
                      "mean Top-5% accuracy {:.4f}",
                      r.steps.size(), r.mean_speedup, kDynamicSpeedup,
                      min_speedup, r.total_speedup, agreement)};
}

Outcome criterion10() {
  ExperimentConfig c = desk_static_config(7, false);
  c.repeats = 3;
  const SweepReport s = run_sensitivity_sweep(c, SweepAxis::kLayers, 5);
  double l1 = 0, l4 = 0;
  std::string all;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.values[i] == 1) l1 = s.rows[i].metrics.accuracy;
    if (s.values[i] == 4) l4 = s.rows[i].metrics.accuracy;
    all += fmt::format(" L{}={:.4f}", s.values[i], s.rows[i].metrics.accuracy);
  }
  return {l1 < l4,
          fmt::format("Top-5% accuracy over 3 seeds x 3 test graphs:{}; need "
                      "L1 < L4",
                      all)};
}

Outcome criterion11() {
  const fs::path root = fs::temp_directory_path() / "shs_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> broken;
  auto check = [&](bool same, const std::string& what) {
    if (!same) broken.push_back(what);
  };

  // prepare
  GeneratorSpec gs;
  gs.n = 400;
  gs.seed = 11;
  const DatasetSpec ds{"sf-400", gs, {}};
  PrepareOptions po;
  write_prepared(prepare_dataset(ds, po), ds, root / "prep1");
  write_prepared(prepare_dataset(ds, po), ds, root / "prep2");
  check(read_text(root / "prep1" / "manifest.json") ==
            read_text(root / "prep2" / "manifest.json"),
        "prepare manifest");

  // static benchmark: manifests, checkpoints, accuracy numbers
  auto static_config = [&](const fs::path& out) {
    ExperimentConfig c;
    GeneratorSpec t = gs;
    c.train = DatasetSpec{"sf-400-s11", t, {}};
    t.seed = 12;
    c.tests = {DatasetSpec{"sf-400-s12", t, {}}};
    c.train_config.epochs = 40;
    c.train_config.seed = 3;
    c.out_dir = out;
    return c;
  };
  const StaticBenchmark a = run_static_benchmark(static_config(root / "bench1"));
  const StaticBenchmark b = run_static_benchmark(static_config(root / "bench2"));
  check(read_text(root / "bench1" / "manifest.json") ==
            read_text(root / "bench2" / "manifest.json"),
        "benchmark manifest");
  for (const char* k : {"5", "10", "20"}) {
    const std::string name = fmt::format("models/graphshs_k{}.ckpt", k);
    check(read_text(root / "bench1" / name) == read_text(root / "bench2" / name),
          name);
  }
  check(accuracy_digest(a.rows) == accuracy_digest(b.rows), "benchmark accuracy");

  // meta benchmark
  ExperimentConfig mc;
  mc.repeats = 1;
  mc.seed = 5;
  mc.train_config.layers = 2;
  mc.train_config.hidden = 16;
  mc.train_config.epochs = 30;
  mc.meta_config.meta_epochs = 10;
  MetaCorpusOptions mo;
  mo.tasks_per_family = 2;
  mo.min_nodes = 100;
  mo.max_nodes = 200;
  const MetaBenchmark m1 = run_meta_benchmark(mc, mo);
  const MetaBenchmark m2 = run_meta_benchmark(mc, mo);
  check(m1.manifest.dump() == m2.manifest.dump(), "meta manifest");
  check(accuracy_digest(m1.rows) == accuracy_digest(m2.rows), "meta accuracy");

  // sweep
  ExperimentConfig sc = static_config({});
  sc.train_config.epochs = 10;
  sc.train_config.hidden = 16;
  const SweepReport s1 = run_sensitivity_sweep(sc, SweepAxis::kLayers, 5);
  const SweepReport s2 = run_sensitivity_sweep(sc, SweepAxis::kLayers, 5);
  check(accuracy_digest(s1.rows) == accuracy_digest(s2.rows), "sweep accuracy");

  // dynamic
  const Graph g = generate(gs);
  const ModelParams& p = a.models.at(0);
  const DynamicReport d1 = run_dynamic_experiment(g, 20, p, 4, 5);
  const DynamicReport d2 = run_dynamic_experiment(g, 20, p, 4, 5);
  bool same = true;
  for (std::size_t i = 0; i < d1.steps.size(); ++i) {
    same = same && d1.steps[i].removed == d2.steps[i].removed &&
           d1.steps[i].agreement.accuracy == d2.steps[i].agreement.accuracy &&
           d1.steps[i].agreement.overlap == d2.steps[i].agreement.overlap;
  }
  check(same, "dynamic deletions");

  std::string detail =
      "prepare, static benchmark (3 checkpoints), meta benchmark, sweep and "
      "dynamic reruns";
  if (broken.empty()) {
    detail += " identical";
  } else {
    detail += "; differing:";
    for (const auto& w : broken) detail += " " + w;
  }
  return {broken.empty(), detail};
}

const char* const kTitles[] = {
    "",
    "oracle equivalence",
    "gradient correctness",
    "permutation equivariance",
    "feature oracle",
    "desk accuracy",
    "inference efficiency",
    "meta-learning benchmark",
    "MAML mechanics",
    "dynamic experiment",
    "sensitivity sweep",
    "determinism"};

}  // namespace
}  // namespace shs

int main(int argc, char** argv) {
  using namespace shs;
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (!selected.empty() && !selected.count(i)) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    if (!o.pass) ++failures;
    fmt::print("criterion {:2} {} {}: {} [{:.1f} s]\n", i, o.pass ? "PASS" : "FAIL",
               kTitles[i], o.detail, since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
