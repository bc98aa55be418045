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

// Command-line front end. Exit codes: 0 ok, 1 usage, 2 data, 3 numeric.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "shs/bench.h"
#include "shs/centrality.h"
#include "shs/checkpoint.h"
#include "shs/edgelist.h"
#include "shs/errors.h"
#include "shs/features.h"
#include "shs/generators.h"
#include "shs/gnn.h"
#include "shs/io.h"
#include "shs/meta.h"

namespace fs = std::filesystem;
using namespace shs;

namespace {

struct Global {
  std::uint64_t seed = 7;
  std::string out;
  bool paper_scale = false;
  bool timing_strict = false;
  bool force = false;
};

fs::path out_or(const Global& g, const fs::path& fallback) {
  return g.out.empty() ? fallback : fs::path(g.out);
}

void add_generator_options(CLI::App* cmd, GeneratorSpec& spec,
                           std::string& family) {
  cmd->add_option("--family", family, "er, sf or grp")
      ->check(CLI::IsMember({"er", "sf", "grp"}));
  cmd->add_option("--n", spec.n, "number of nodes");
  cmd->add_option("--p", spec.er_p, "ER edge probability");
  cmd->add_option("--sf-alpha", spec.sf_alpha);
  cmd->add_option("--sf-beta", spec.sf_beta);
  cmd->add_option("--sf-gamma", spec.sf_gamma);
  cmd->add_option("--grp-size", spec.grp_mean_size, "mean group size");
  cmd->add_option("--grp-shape", spec.grp_shape);
  cmd->add_option("--grp-pin", spec.grp_p_in);
  cmd->add_option("--grp-pout", spec.grp_p_out);
}

void add_train_options(CLI::App* cmd, TrainConfig& c) {
  cmd->add_option("--epochs", c.epochs);
  cmd->add_option("--lr", c.learning_rate, "Adam learning rate");
  cmd->add_option("--weight-decay", c.weight_decay);
  cmd->add_option("--layers", c.layers);
  cmd->add_option("--hidden", c.hidden);
}

void add_meta_options(CLI::App* cmd, MetaConfig& c) {
  cmd->add_option("--inner-lr", c.inner_lr);
  cmd->add_option("--meta-lr", c.meta_lr);
  cmd->add_option("--inner-steps", c.inner_steps);
  cmd->add_option("--meta-epochs", c.meta_epochs);
  cmd->add_option("--patience", c.patience);
  cmd->add_option("--fine-tune-steps", c.fine_tune_steps);
  cmd->add_option("--support-ratio", c.support_ratio);
}

void write_report_set(const std::vector<ReportRow>& rows, const fs::path& dir,
                      const std::string& stem) {
  fs::create_directories(dir);
  emit_report(rows, ReportFormat::kCsv, dir / (stem + ".csv"));
  emit_report(rows, ReportFormat::kJson, dir / (stem + ".json"));
  emit_report(rows, ReportFormat::kMarkdown, dir / (stem + ".md"));
  std::cout << format_report(rows, ReportFormat::kMarkdown);
}

void print_metrics(const Metrics& m) {
  fmt::print("accuracy {:.4f} precision {:.4f} recall {:.4f} f1 {:.4f} "
             "overlap {:.4f}\n",
             m.accuracy, m.precision, m.recall, m.f1, m.overlap);
}

std::string loss_csv(const std::vector<double>& loss) {
  std::string s = "epoch,loss\n";
  for (std::size_t i = 0; i < loss.size(); ++i) {
    s += fmt::format("{},{:.17g}\n", i, loss[i]);
  }
  return s;
}

CheckpointHeader train_header(const TrainConfig& c) {
  return {{"train.epochs", std::to_string(c.epochs)},
          {"train.learning_rate", fmt::format("{:.17g}", c.learning_rate)},
          {"train.weight_decay", fmt::format("{:.17g}", c.weight_decay)},
          {"train.seed", std::to_string(c.seed)}};
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Structural hole spanner detection toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--seed", gl.seed, "random seed");
  app.add_option("--out", gl.out, "output file or directory");
  app.add_flag("--paper-scale", gl.paper_scale, "use full-size experiments");
  app.add_flag("--timing-strict", gl.timing_strict,
               "record that timed cells ran uncontended");
  app.add_flag("--force", gl.force, "allow betweenness on very large graphs");

  // generate
  GeneratorSpec gen;
  std::string gen_family = "sf";
  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic graph");
  add_generator_options(generate_cmd, gen, gen_family);

  // prepare
  GeneratorSpec prep_gen;
  std::string prep_family = "sf";
  std::string prep_graph, prep_id;
  std::vector<double> prep_k = {5, 10, 20};
  auto* prepare_cmd = app.add_subcommand(
      "prepare", "compute betweenness, labels and features for a graph");
  add_generator_options(prepare_cmd, prep_gen, prep_family);
  prepare_cmd->add_option("--graph", prep_graph, "edge list instead of a generator");
  prepare_cmd->add_option("--id", prep_id, "dataset id");
  prepare_cmd->add_option("--k", prep_k, "top-k percentages")->delimiter(',');

  // train
  TrainConfig tc;
  std::string train_data, loss_path;
  double train_k = 5;
  auto* train_cmd = app.add_subcommand("train", "train GraphSHS on a prepared dataset");
  train_cmd->add_option("--data", train_data, "prepared dataset directory")->required();
  train_cmd->add_option("--k", train_k);
  train_cmd->add_option("--loss", loss_path, "loss history CSV");
  add_train_options(train_cmd, tc);

  // train-meta
  MetaConfig mc;
  TrainConfig meta_arch;
  std::string tasks_path;
  auto* meta_cmd = app.add_subcommand(
      "train-meta", "meta-train an initialization over a task corpus");
  meta_cmd->add_option("--tasks", tasks_path,
                       "task manifest (default: generated desk corpus)");
  add_meta_options(meta_cmd, mc);
  meta_cmd->add_option("--layers", meta_arch.layers);
  meta_cmd->add_option("--hidden", meta_arch.hidden);

  // eval
  std::string eval_model, eval_data, eval_mode = "ranked";
  double eval_k = 5;
  auto* eval_cmd = app.add_subcommand("eval", "score a model on a prepared dataset");
  eval_cmd->add_option("--model", eval_model)->required();
  eval_cmd->add_option("--data", eval_data)->required();
  eval_cmd->add_option("--k", eval_k);
  eval_cmd->add_option("--mode", eval_mode)
      ->check(CLI::IsMember({"ranked", "argmax"}));

  // bench
  std::vector<std::string> methods = {"graphshs", "constraint", "closeness",
                                      "brandes"};
  std::vector<double> bench_k = {5, 10, 20};
  bool include_features = false, constraint_desc = false;
  std::string train_graph;
  std::vector<std::string> test_graphs;
  auto* bench_cmd = app.add_subcommand("bench", "static accuracy and run time benchmark");
  bench_cmd->add_option("--methods", methods)->delimiter(',');
  bench_cmd->add_option("--k", bench_k)->delimiter(',');
  bench_cmd->add_flag("--include-features", include_features,
                      "count feature extraction in GraphSHS run time");
  bench_cmd->add_flag("--constraint-descending", constraint_desc);
  bench_cmd->add_option("--train-graph", train_graph, "edge list");
  bench_cmd->add_option("--test-graph", test_graphs, "edge list (repeatable)");
  TrainConfig bench_tc;
  add_train_options(bench_cmd, bench_tc);

  // bench-meta
  int meta_repeats = 5;
  MetaConfig bench_mc;
  auto* bench_meta_cmd = app.add_subcommand(
      "bench-meta", "Meta-GraphSHS versus GraphSHS on held-out tasks");
  bench_meta_cmd->add_option("--repeats", meta_repeats, "number of seeds");
  add_meta_options(bench_meta_cmd, bench_mc);

  // dynamic
  std::string dyn_model, dyn_graph;
  int deletions = 100;
  double dyn_k = 5;
  NodeId dyn_n = 5000;
  auto* dynamic_cmd = app.add_subcommand(
      "dynamic", "timed edge deletions against full recomputation");
  dynamic_cmd->add_option("--model", dyn_model,
                          "checkpoint (default: train the desk model)");
  dynamic_cmd->add_option("--graph", dyn_graph, "edge list (default: SF graph)");
  dynamic_cmd->add_option("--n", dyn_n, "size of the generated SF graph");
  dynamic_cmd->add_option("--deletions", deletions);
  dynamic_cmd->add_option("--k", dyn_k);

  // sweep
  std::string axis_name = "layers";
  int sweep_repeats = 3;
  double sweep_k = 5;
  auto* sweep_cmd = app.add_subcommand("sweep", "depth or width sensitivity");
  sweep_cmd->add_option("--axis", axis_name)
      ->check(CLI::IsMember({"layers", "hidden"}));
  sweep_cmd->add_option("--repeats", sweep_repeats, "model seeds per value");
  sweep_cmd->add_option("--k", sweep_k);

  // report
  std::string report_in, report_format = "markdown";
  auto* report_cmd = app.add_subcommand("report", "convert a CSV report");
  report_cmd->add_option("--in", report_in)->required();
  report_cmd->add_option("--format", report_format)
      ->check(CLI::IsMember({"csv", "json", "markdown", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  PrepareOptions popt;
  popt.force = gl.force;

  if (generate_cmd->parsed()) {
    gen.family = parse_family(gen_family);
    gen.seed = gl.seed;
    const Graph g = generate(gen);
    const fs::path out = out_or(gl, fmt::format("{}-{}.edges", gen_family, gen.n));
    write_edgelist(g, out);
    fmt::print("{} nodes, {} edges -> {}\n", g.num_nodes(), g.num_edges(),
               out.string());
  } else if (prepare_cmd->parsed()) {
    DatasetSpec spec;
    if (!prep_graph.empty()) {
      spec.edgelist = prep_graph;
      spec.id = prep_id.empty() ? fs::path(prep_graph).stem().string() : prep_id;
    } else {
      prep_gen.family = parse_family(prep_family);
      prep_gen.seed = gl.seed;
      spec.generator = prep_gen;
      spec.id = prep_id.empty()
                    ? fmt::format("{}-{}-s{}", prep_family, prep_gen.n, gl.seed)
                    : prep_id;
    }
    popt.k_percents = prep_k;
    const PreparedDataset d = prepare_dataset(spec, popt);
    const fs::path out = out_or(gl, spec.id);
    write_prepared(d, spec, out);
    fmt::print("{}: {} nodes, {} edges, betweenness {:.3f}s -> {}\n", d.id,
               d.graph.num_nodes(), d.graph.num_edges(), d.bc_seconds,
               out.string());
  } else if (train_cmd->parsed()) {
    tc.seed = gl.seed;
    const PreparedDataset d = load_prepared(train_data);
    const TrainResult r =
        train(d.graph, d.features.normalized, d.labels_for(train_k), tc);
    const fs::path out = out_or(gl, "graphshs.ckpt");
    CheckpointHeader h = train_header(tc);
    h.emplace_back("k_percent", fmt::format("{}", train_k));
    h.emplace_back("train_dataset", d.id);
    save_checkpoint(out, r.params, h);
    write_text(loss_path.empty() ? fs::path(out.string() + ".loss.csv")
                                 : fs::path(loss_path),
               loss_csv(r.loss_history));
    fmt::print("loss {:.6f} -> {:.6f}; model -> {}\n", r.loss_history.front(),
               r.loss_history.back(), out.string());
  } else if (meta_cmd->parsed()) {
    mc.seed = gl.seed;
    std::vector<TaskBundle> tasks =
        tasks_path.empty()
            ? build_meta_corpus(desk_meta_corpus(gl.paper_scale), gl.seed)
            : load_tasks(tasks_path);
    const MetaTrainResult r = meta_train(tasks, mc, meta_arch);
    const fs::path out = out_or(gl, "meta.ckpt");
    save_checkpoint(out, r.params, meta_header(mc));
    write_text(out.string() + ".loss.csv", loss_csv(r.query_loss));
    fmt::print("{} tasks, {} meta-epochs, best query loss {:.6f} at epoch {}; "
               "model -> {}\n",
               tasks.size(), r.query_loss.size(), r.query_loss[r.best_epoch],
               r.best_epoch, out.string());
  } else if (eval_cmd->parsed()) {
    const Checkpoint ck = load_checkpoint(eval_model);
    PreparedDataset d = load_prepared(eval_data);
    const Prediction p =
        eval_mode == "ranked"
            ? predict_ranked(ck.params, d.graph, d.features.normalized, eval_k)
            : predict(ck.params, d.graph, d.features.normalized);
    LabelVector truth = label_top_k(d.bc, eval_k);
    print_metrics(accuracy(p.labels, truth));
    if (!gl.out.empty()) write_labels(p.prob_shs, p.labels, gl.out);
  } else if (bench_cmd->parsed()) {
    ExperimentConfig c = desk_static_config(gl.seed, gl.paper_scale);
    c.methods = methods;
    c.k_percents = bench_k;
    c.include_features = include_features;
    c.constraint_descending = constraint_desc;
    c.timing_strict = gl.timing_strict;
    c.prepare.force = gl.force;
    bench_tc.seed = gl.seed;
    c.train_config = bench_tc;
    if (!train_graph.empty()) {
      c.train = DatasetSpec{fs::path(train_graph).stem().string(), std::nullopt,
                            train_graph};
    }
    if (!test_graphs.empty()) {
      c.tests.clear();
      for (const auto& t : test_graphs) {
        c.tests.push_back(
            DatasetSpec{fs::path(t).stem().string(), std::nullopt, t});
      }
    }
    c.out_dir = out_or(gl, "bench-out");
    const StaticBenchmark b = run_static_benchmark(c);
    write_report_set(b.rows, c.out_dir, "report");
  } else if (bench_meta_cmd->parsed()) {
    ExperimentConfig c;
    c.seed = gl.seed;
    c.repeats = meta_repeats;
    c.meta_config = bench_mc;
    c.paper_scale = gl.paper_scale;
    c.out_dir = out_or(gl, "bench-meta-out");
    const MetaBenchmark b =
        run_meta_benchmark(c, desk_meta_corpus(gl.paper_scale));
    write_report_set(b.rows, c.out_dir, "report");
    double m = 0, f = 0, t = 0;
    for (std::size_t i = 0; i < b.meta_accuracy.size(); ++i) {
      fmt::print("seed {}: meta {:.4f} graphshs {:.4f} graphshs-ft {:.4f}\n",
                 c.seed + i, b.meta_accuracy[i], b.frozen_accuracy[i],
                 b.tuned_accuracy[i]);
      m += b.meta_accuracy[i];
      f += b.frozen_accuracy[i];
      t += b.tuned_accuracy[i];
    }
    const double n = static_cast<double>(b.meta_accuracy.size());
    fmt::print("mean: meta {:.4f} graphshs {:.4f} graphshs-ft {:.4f}\n", m / n,
               f / n, t / n);
  } else if (dynamic_cmd->parsed()) {
    Graph g = dyn_graph.empty()
                  ? generate_sf(dyn_n, 0.4, 0.05, 0.55, gl.seed)
                  : read_edgelist(dyn_graph);
    ModelParams params;
    if (!dyn_model.empty()) {
      params = load_checkpoint(dyn_model).params;
    } else {
      ExperimentConfig c = desk_static_config(gl.seed, gl.paper_scale);
      c.k_percents = {dyn_k};
      PrepareOptions po;
      po.k_percents = {dyn_k};
      const PreparedDataset d = prepare_dataset(c.train, po);
      params = train(d.graph, d.features.normalized, d.labels_for(dyn_k),
                     c.train_config)
                   .params;
    }
    const DynamicReport r =
        run_dynamic_experiment(g, deletions, params, gl.seed, dyn_k);
    std::string csv =
        "step,u,v,edges_after,model_s,brandes_s,speedup,accuracy,overlap\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
      const auto& s = r.steps[i];
      csv += fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                         i, s.removed.u, s.removed.v, s.edges_after,
                         s.model_seconds, s.brandes_seconds, s.speedup,
                         s.agreement.accuracy, s.agreement.overlap);
    }
    const fs::path out = out_or(gl, "dynamic.csv");
    write_text(out, csv);
    fmt::print("{} deletions: mean speedup {:.1f}x, aggregate {:.1f}x -> {}\n",
               r.steps.size(), r.mean_speedup, r.total_speedup, out.string());
  } else if (sweep_cmd->parsed()) {
    ExperimentConfig c = desk_static_config(gl.seed, gl.paper_scale);
    c.repeats = sweep_repeats;
    c.prepare.force = gl.force;
    c.out_dir = out_or(gl, "sweep-out");
    const SweepReport s =
        run_sensitivity_sweep(c, parse_sweep_axis(axis_name), sweep_k);
    write_report_set(s.rows, c.out_dir, "report");
  } else if (report_cmd->parsed()) {
    const auto rows = parse_report_csv(read_text(report_in));
    const std::string text =
        format_report(rows, parse_report_format(report_format));
    if (gl.out.empty()) {
      std::cout << text;
    } else {
      emit_report(rows, parse_report_format(report_format), gl.out);
    }
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const NumericError& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return 3;
  } catch (const DataError& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
}
