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

#include "shs/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "shs/checkpoint.h"
#include "shs/edgelist.h"
#include "shs/errors.h"
#include "shs/io.h"

namespace shs {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string k_suffix(double k) { return fmt::format("{}", k); }

std::vector<NodeId> all_nodes(NodeId n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  return v;
}

LabelVector all_normal(std::size_t n, double k) {
  LabelVector l;
  l.labels.assign(n, 0);
  l.k_percent = k;
  return l;
}

Metrics mean_metrics(const std::vector<Metrics>& ms) {
  Metrics out;
  if (ms.empty()) return out;
  for (const auto& m : ms) {
    out.accuracy += m.accuracy;
    out.precision += m.precision;
    out.recall += m.recall;
    out.f1 += m.f1;
    out.overlap += m.overlap;
  }
  const double s = 1.0 / static_cast<double>(ms.size());
  out.accuracy *= s;
  out.precision *= s;
  out.recall *= s;
  out.f1 *= s;
  out.overlap *= s;
  return out;
}

std::string real(double x) { return fmt::format("{:.17g}", x); }

double parse_real(const std::string& s, std::size_t line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) {
    throw DataError(fmt::format("report line {}: bad number '{}'", line, s));
  }
  return v;
}

void check_field(const std::string& s) {
  if (s.find_first_of(",\n\r\"|") != std::string::npos) {
    throw std::invalid_argument(
        fmt::format("report field '{}' contains a reserved character", s));
  }
}

Json stats_json(const FeatureStats& stats) {
  Json j;
  j["mean"] = stats.mean;
  j["std"] = stats.stddev;
  return j;
}

std::string dataset_label(const GeneratorSpec& g) {
  return fmt::format("{}-{}-s{}", family_name(g.family), g.n, g.seed);
}

DatasetSpec sf_dataset(NodeId n, std::uint64_t seed) {
  GeneratorSpec g;
  g.family = GraphFamily::kScaleFree;
  g.n = n;
  g.seed = seed;
  return DatasetSpec{dataset_label(g), g, {}};
}

}  // namespace

// ---------------------------------------------------------------- json

Json to_json(const GeneratorSpec& spec) {
  Json j;
  j["family"] = std::string(family_name(spec.family));
  j["n"] = spec.n;
  switch (spec.family) {
    case GraphFamily::kErdosRenyi:
      j["p"] = spec.er_p;
      break;
    case GraphFamily::kScaleFree:
      j["alpha"] = spec.sf_alpha;
      j["beta"] = spec.sf_beta;
      j["gamma"] = spec.sf_gamma;
      break;
    case GraphFamily::kGaussianPartition:
      j["mean_size"] = spec.grp_mean_size;
      j["shape"] = spec.grp_shape;
      j["p_in"] = spec.grp_p_in;
      j["p_out"] = spec.grp_p_out;
      break;
  }
  j["seed"] = spec.seed;
  return j;
}

Json to_json(const DatasetSpec& spec) {
  Json j;
  j["id"] = spec.id;
  if (spec.generator) {
    j["generator"] = to_json(*spec.generator);
  } else {
    j["edgelist"] = spec.edgelist.string();
  }
  return j;
}

Json to_json(const TrainConfig& c) {
  Json j;
  j["epochs"] = c.epochs;
  j["learning_rate"] = c.learning_rate;
  j["weight_decay"] = c.weight_decay;
  j["seed"] = c.seed;
  j["layers"] = c.layers;
  j["hidden"] = c.hidden;
  j["adam_beta1"] = c.adam_beta1;
  j["adam_beta2"] = c.adam_beta2;
  j["adam_eps"] = c.adam_eps;
  return j;
}

Json to_json(const MetaConfig& c) {
  Json j;
  j["inner_lr"] = c.inner_lr;
  j["meta_lr"] = c.meta_lr;
  j["inner_steps"] = c.inner_steps;
  j["meta_epochs"] = c.meta_epochs;
  j["patience"] = c.patience;
  j["fine_tune_steps"] = c.fine_tune_steps;
  j["support_ratio"] = c.support_ratio;
  j["second_order"] = c.second_order;
  j["seed"] = c.seed;
  return j;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["train"] = to_json(c.train);
  j["tests"] = Json::array();
  for (const auto& t : c.tests) j["tests"].push_back(to_json(t));
  j["k_percents"] = c.k_percents;
  j["methods"] = c.methods;
  j["train_config"] = to_json(c.train_config);
  j["meta_config"] = to_json(c.meta_config);
  j["repeats"] = c.repeats;
  j["seed"] = c.seed;
  j["include_features"] = c.include_features;
  j["constraint_descending"] = c.constraint_descending;
  j["timing_strict"] = c.timing_strict;
  j["paper_scale"] = c.paper_scale;
  j["bc_node_cap"] = c.prepare.bc_node_cap;
  j["force"] = c.prepare.force;
  return j;
}

// ------------------------------------------------------------- datasets

const LabelVector& PreparedDataset::labels_for(double k_percent) const {
  for (std::size_t i = 0; i < k_percents.size(); ++i) {
    if (k_percents[i] == k_percent) return labels[i];
  }
  throw std::invalid_argument(
      fmt::format("dataset {} has no labels for k={}", id, k_percent));
}

PreparedDataset prepare_dataset(const DatasetSpec& spec,
                                const PrepareOptions& options) {
  if (options.k_percents.empty()) {
    throw std::invalid_argument("prepare: no k values");
  }
  for (double k : options.k_percents) {
    if (!(k > 0.0 && k <= 100.0)) {
      throw std::invalid_argument(fmt::format("k={} outside (0, 100]", k));
    }
  }
  PreparedDataset out;
  out.id = spec.id;
  if (spec.generator) {
    out.graph = generate(*spec.generator);
  } else {
    LoadedGraph loaded = read_edgelist_with_ids(spec.edgelist);
    out.graph = std::move(loaded.graph);
    out.original_ids = std::move(loaded.original_ids);
  }
  if (out.graph.num_nodes() > options.bc_node_cap && !options.force) {
    throw std::invalid_argument(fmt::format(
        "{} has {} nodes, above the betweenness cap of {}; pass --force",
        spec.id, out.graph.num_nodes(), options.bc_node_cap));
  }
  auto t0 = Clock::now();
  out.bc = brandes_bc(out.graph);
  out.bc_seconds = seconds_since(t0);
  out.k_percents = options.k_percents;
  for (double k : options.k_percents) {
    out.labels.push_back(label_top_k(out.bc, k));
  }
  t0 = Clock::now();
  out.features = node_features(out.graph);
  out.feature_seconds = seconds_since(t0);
  return out;
}

Json write_prepared(const PreparedDataset& data, const DatasetSpec& spec,
                    const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw DataError(fmt::format("cannot create {}: {}", dir.string(),
                                ec.message()));
  }
  std::vector<std::string> files;
  write_edgelist(data.graph, dir / "graph.edges");
  files.push_back("graph.edges");
  write_features(data.features, dir / "features.csv");
  files.push_back("features.csv");
  write_scores(data.bc, dir / "bc.csv");
  files.push_back("bc.csv");
  for (std::size_t i = 0; i < data.k_percents.size(); ++i) {
    const std::string name =
        fmt::format("labels_k{}.csv", k_suffix(data.k_percents[i]));
    write_labels(data.bc, data.labels[i], dir / name);
    files.push_back(name);
  }
  if (!data.original_ids.empty()) {
    write_idmap(data.original_ids, dir / "graph.edges.idmap");
    files.push_back("graph.edges.idmap");
  }

  Json m;
  m["format"] = "shs-dataset";
  m["version"] = 1;
  m["dataset"] = to_json(spec);
  if (!spec.generator) m["source_sha256"] = sha256_file(spec.edgelist);
  m["nodes"] = data.graph.num_nodes();
  m["edges"] = data.graph.num_edges();
  m["k_percents"] = data.k_percents;
  m["feature_stats"] = stats_json(data.features.stats);
  m["artifacts"] = Json::array();
  for (const auto& f : files) {
    m["artifacts"].push_back({{"file", f}, {"sha256", sha256_file(dir / f)}});
  }
  write_manifest(m, dir);
  return m;
}

PreparedDataset load_prepared(const fs::path& dir) {
  Json m;
  try {
    m = Json::parse(read_text(dir / "manifest.json"));
  } catch (const Json::exception& e) {
    throw DataError(fmt::format("{}: {}", (dir / "manifest.json").string(),
                                e.what()));
  }
  PreparedDataset out;
  try {
    if (m.value("format", "") != "shs-dataset") {
      throw DataError(fmt::format("{} is not a dataset manifest",
                                  (dir / "manifest.json").string()));
    }
    out.id = m.at("dataset").at("id").get<std::string>();
    out.k_percents = m.at("k_percents").get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw DataError(fmt::format("dataset manifest: {}", e.what()));
  }
  LoadedGraph loaded = read_edgelist_with_ids(dir / "graph.edges");
  out.graph = std::move(loaded.graph);
  out.features = read_features(dir / "features.csv");
  out.bc = ScoreVector{ScoreKind::kBetweenness, read_scores(dir / "bc.csv")};
  for (double k : out.k_percents) {
    LabelVector l =
        read_labels(dir / fmt::format("labels_k{}.csv", k_suffix(k)));
    l.k_percent = k;
    out.labels.push_back(std::move(l));
  }
  const std::size_t n = out.graph.num_nodes();
  if (static_cast<std::size_t>(out.features.rows()) != n ||
      out.bc.values.size() != n) {
    throw DataError(fmt::format("{}: artifact sizes disagree with the graph",
                                dir.string()));
  }
  for (const auto& l : out.labels) {
    if (l.labels.size() != n) {
      throw DataError(fmt::format("{}: label file size disagrees",
                                  dir.string()));
    }
  }
  return out;
}

void write_manifest(const Json& manifest, const fs::path& dir) {
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

// -------------------------------------------------------------- reports

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw std::invalid_argument(fmt::format("unknown report format '{}'", name));
}

namespace {

std::vector<std::string> csv_fields(const ReportRow& r) {
  return {r.dataset,
          r.method,
          real(r.k_percent),
          real(r.metrics.accuracy),
          real(r.metrics.precision),
          real(r.metrics.recall),
          real(r.metrics.f1),
          real(r.metrics.overlap),
          real(r.prepare_seconds),
          real(r.train_seconds),
          real(r.infer_seconds),
          real(r.speedup)};
}

std::string format_csv(std::span<const ReportRow> rows) {
  std::string out;
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
    if (i) out += ',';
    out += kReportColumns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    check_field(r.dataset);
    check_field(r.method);
    const auto f = csv_fields(r);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::string format_json(std::span<const ReportRow> rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["dataset"] = r.dataset;
    j["method"] = r.method;
    j["k_percent"] = r.k_percent;
    j["accuracy"] = r.metrics.accuracy;
    j["precision"] = r.metrics.precision;
    j["recall"] = r.metrics.recall;
    j["f1"] = r.metrics.f1;
    j["overlap"] = r.metrics.overlap;
    j["prepare_s"] = r.prepare_seconds;
    j["train_s"] = r.train_seconds;
    j["infer_s"] = r.infer_seconds;
    j["speedup"] = r.speedup;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string format_markdown(std::span<const ReportRow> rows) {
  std::string out =
      "| Dataset | Method | Top-k (%) | Accuracy (%) | Precision | Recall | "
      "F1 | Overlap | Prepare (s) | Train (s) | Run time (s) | Speedup |\n"
      "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    check_field(r.dataset);
    check_field(r.method);
    out += fmt::format(
        "| {} | {} | {} | {:.2f} | {:.4f} | {:.4f} | {:.4f} | {:.4f} | {:.4g} "
        "| {:.4g} | {:.4g} | {:.1f}x |\n",
        r.dataset, r.method, r.k_percent, 100.0 * r.metrics.accuracy,
        r.metrics.precision, r.metrics.recall, r.metrics.f1, r.metrics.overlap,
        r.prepare_seconds, r.train_seconds, r.infer_seconds, r.speedup);
  }
  return out;
}

}  // namespace

std::string format_report(std::span<const ReportRow> rows,
                          ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return format_csv(rows);
    case ReportFormat::kJson:
      return format_json(rows);
    case ReportFormat::kMarkdown:
      return format_markdown(rows);
  }
  throw std::invalid_argument("bad report format");
}

void emit_report(std::span<const ReportRow> rows, ReportFormat format,
                 const fs::path& path) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  write_text(path, format_report(rows, format));
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<ReportRow> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto pos = s.find(',', start);
      f.push_back(s.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return f;
  };
  if (!std::getline(in, line)) throw DataError("report: empty input");
  ++lineno;
  const auto header = split(line);
  if (header.size() != kReportColumns.size() ||
      !std::equal(header.begin(), header.end(), kReportColumns.begin())) {
    throw DataError("report: unexpected header");
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kReportColumns.size()) {
      throw DataError(fmt::format("report line {}: expected {} fields, got {}",
                                  lineno, kReportColumns.size(), f.size()));
    }
    ReportRow r;
    r.dataset = f[0];
    r.method = f[1];
    r.k_percent = parse_real(f[2], lineno);
    r.metrics.accuracy = parse_real(f[3], lineno);
    r.metrics.precision = parse_real(f[4], lineno);
    r.metrics.recall = parse_real(f[5], lineno);
    r.metrics.f1 = parse_real(f[6], lineno);
    r.metrics.overlap = parse_real(f[7], lineno);
    r.prepare_seconds = parse_real(f[8], lineno);
    r.train_seconds = parse_real(f[9], lineno);
    r.infer_seconds = parse_real(f[10], lineno);
    r.speedup = parse_real(f[11], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string accuracy_digest(std::span<const ReportRow> rows) {
  std::vector<ReportRow> copy(rows.begin(), rows.end());
  for (auto& r : copy) {
    r.prepare_seconds = r.train_seconds = r.infer_seconds = r.speedup = 0.0;
  }
  return sha256_hex(format_csv(copy));
}

// ------------------------------------------------------- static benchmark

namespace {

const std::set<std::string> kKnownMethods = {"graphshs", "meta", "constraint",
                                             "closeness", "brandes"};

bool has_method(const ExperimentConfig& c, const std::string& m) {
  return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

PrepareOptions prepare_options(const ExperimentConfig& c) {
  PrepareOptions p = c.prepare;
  p.k_percents = c.k_percents;
  return p;
}

// Prepares a dataset, writing its artifacts under out_dir/datasets/<id>
// when an output directory is configured.
PreparedDataset prepare_into(const ExperimentConfig& c, const DatasetSpec& s,
                             Json& manifests) {
  PreparedDataset d = prepare_dataset(s, prepare_options(c));
  if (!c.out_dir.empty()) {
    manifests.push_back(write_prepared(d, s, c.out_dir / "datasets" / s.id));
  } else {
    manifests.push_back(to_json(s));
  }
  return d;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.methods.empty()) {
    throw std::invalid_argument("experiment: at least one method is required");
  }
  for (const auto& m : c.methods) {
    if (!kKnownMethods.count(m)) {
      throw std::invalid_argument(fmt::format("unknown method '{}'", m));
    }
  }
  if (c.k_percents.empty()) throw std::invalid_argument("experiment: no k");
  for (double k : c.k_percents) {
    if (!(k > 0.0 && k <= 100.0)) {
      throw std::invalid_argument(fmt::format("k={} outside (0, 100]", k));
    }
  }
  if (c.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  validate(c.train_config);
  validate(c.meta_config);
}

ExperimentConfig desk_static_config(std::uint64_t seed, bool paper_scale) {
  ExperimentConfig c;
  c.seed = seed;
  c.paper_scale = paper_scale;
  c.train_config.seed = seed;
  c.meta_config.seed = seed;
  if (paper_scale) {
    c.train = sf_dataset(5000, 1);
    NodeId s = 100;
    for (NodeId n : {5000u, 10000u, 20000u, 50000u}) {
      c.tests.push_back(sf_dataset(n, s++));
    }
  } else {
    c.train = sf_dataset(1000, 1);
    for (std::uint64_t s : {100u, 101u, 102u}) {
      c.tests.push_back(sf_dataset(1000, s));
    }
  }
  return c;
}

StaticBenchmark run_static_benchmark(const ExperimentConfig& config) {
  validate(config);
  if (has_method(config, "meta")) {
    throw std::invalid_argument(
        "method 'meta' is evaluated by the meta benchmark, not the static one");
  }
  if (config.tests.empty()) throw std::invalid_argument("no test datasets");

  StaticBenchmark out;
  Json datasets = Json::array();
  const PreparedDataset train = prepare_into(config, config.train, datasets);
  const double train_prepare = train.bc_seconds + train.feature_seconds;

  const bool use_gnn = has_method(config, "graphshs");
  std::vector<double> train_seconds;
  Json models = Json::array();
  if (use_gnn) {
    for (double k : config.k_percents) {
      const auto t0 = Clock::now();
      TrainResult r = train_pooled(
          std::vector<TrainingGraph>{{&train.graph,
                                      &train.features.normalized,
                                      &train.labels_for(k),
                                      {}}},
          config.train_config);
      train_seconds.push_back(seconds_since(t0));
      CheckpointHeader header = {{"k_percent", k_suffix(k)},
                                 {"train_dataset", train.id}};
      const std::string ckpt = serialize_checkpoint(r.params, header);
      Json mj = {{"k_percent", k}, {"sha256", sha256_hex(ckpt)}};
      if (!config.out_dir.empty()) {
        const std::string name = fmt::format("graphshs_k{}.ckpt", k_suffix(k));
        fs::create_directories(config.out_dir / "models");
        write_text(config.out_dir / "models" / name, ckpt);
        mj["file"] = "models/" + name;
      }
      models.push_back(std::move(mj));
      out.models.push_back(std::move(r.params));
    }
  }

  for (const auto& spec : config.tests) {
    const PreparedDataset test = prepare_into(config, spec, datasets);
    const Graph& g = test.graph;
    const double prepare_s = test.bc_seconds + test.feature_seconds;

    // Score-producing baselines run once per graph; ranking is per k.
    std::optional<ScoreVector> cons, clos;
    double cons_s = 0.0, clos_s = 0.0;
    if (has_method(config, "constraint")) {
      const auto t0 = Clock::now();
      cons = constraint(g);
      cons_s = seconds_since(t0);
    }
    if (has_method(config, "closeness")) {
      const auto t0 = Clock::now();
      clos = closeness(g);
      clos_s = seconds_since(t0);
    }

    for (std::size_t ki = 0; ki < config.k_percents.size(); ++ki) {
      const double k = config.k_percents[ki];
      const LabelVector& truth = test.labels_for(k);
      std::vector<ReportRow> cell;
      auto add = [&](const std::string& method, const LabelVector& pred,
                     double infer_s, double train_s) {
        ReportRow r;
        r.dataset = test.id;
        r.method = method;
        r.k_percent = k;
        r.metrics = accuracy(pred, truth);
        r.prepare_seconds = prepare_s;
        r.train_seconds = train_s;
        r.infer_seconds = infer_s;
        cell.push_back(std::move(r));
      };

      // The brandes row reproduces the ground truth; its time is the exact
      // computation plus the ranking.
      auto t0 = Clock::now();
      const LabelVector exact = label_top_k(test.bc, k);
      const double brandes_s = test.bc_seconds + seconds_since(t0);
      double slowest = brandes_s;

      for (const auto& m : config.methods) {
        if (m == "graphshs") {
          t0 = Clock::now();
          const Prediction p = predict_ranked(
              out.models[ki], g, test.features.normalized, k);
          double s = seconds_since(t0);
          if (config.include_features) s += test.feature_seconds;
          add(m, p.labels, s, train_seconds[ki] + train_prepare);
        } else if (m == "constraint") {
          t0 = Clock::now();
          const LabelVector l =
              baseline_predict(*cons, k, config.constraint_descending);
          const double s = cons_s + seconds_since(t0);
          slowest = std::max(slowest, s);
          add(m, l, s, 0.0);
        } else if (m == "closeness") {
          t0 = Clock::now();
          const LabelVector l = baseline_predict(*clos, k);
          const double s = clos_s + seconds_since(t0);
          slowest = std::max(slowest, s);
          add(m, l, s, 0.0);
        } else if (m == "brandes") {
          add(m, exact, brandes_s, 0.0);
        }
      }
      for (auto& r : cell) {
        r.speedup = r.infer_seconds > 0.0 ? slowest / r.infer_seconds : 0.0;
      }
      ReportRow majority;
      majority.dataset = test.id;
      majority.method = kMajorityMethod;
      majority.k_percent = k;
      majority.metrics = accuracy(all_normal(g.num_nodes(), k), truth);
      cell.push_back(std::move(majority));
      for (auto& r : cell) out.rows.push_back(std::move(r));
    }
  }

  out.manifest = {{"format", "shs-run"},
                  {"version", 1},
                  {"kind", "static"},
                  {"config", to_json(config)},
                  {"datasets", std::move(datasets)},
                  {"models", std::move(models)},
                  {"accuracy_sha256", accuracy_digest(out.rows)}};
  if (!config.out_dir.empty()) write_manifest(out.manifest, config.out_dir);
  return out;
}

// --------------------------------------------------------- meta benchmark

MetaCorpusOptions desk_meta_corpus(bool paper_scale) {
  MetaCorpusOptions o;
  if (paper_scale) {
    o.tasks_per_family = 12;
    o.min_nodes = 1000;
    o.max_nodes = 5000;
  }
  return o;
}

std::vector<TaskBundle> build_meta_corpus(const MetaCorpusOptions& o,
                                          std::uint64_t seed) {
  if (o.tasks_per_family < 1 || o.min_nodes < 3 || o.max_nodes < o.min_nodes) {
    throw std::invalid_argument("meta corpus: bad size options");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> size(o.min_nodes, o.max_nodes);
  std::vector<TaskBundle> tasks;
  const GraphFamily families[] = {GraphFamily::kErdosRenyi,
                                  GraphFamily::kScaleFree,
                                  GraphFamily::kGaussianPartition};
  for (int i = 0; i < o.tasks_per_family; ++i) {
    for (GraphFamily f : families) {
      GeneratorSpec g;
      g.family = f;
      g.n = size(rng);
      g.er_p = o.er_mean_degree / static_cast<double>(g.n - 1);
      g.seed = rng();
      const std::uint64_t split_seed = rng();
      TaskBundle t;
      t.id = fmt::format("{}-{}", family_name(f), i);
      t.graph = generate(g);
      t.features = node_features(t.graph);
      t.labels = label_top_k(brandes_bc(t.graph), o.k_percent);
      const auto nodes = all_nodes(t.graph.num_nodes());
      SupportQuerySplit s =
          split_support_query(nodes, t.labels, o.support_ratio, split_seed);
      t.support = std::move(s.support);
      t.query = std::move(s.query);
      tasks.push_back(std::move(t));
    }
  }
  return tasks;
}

MetaBenchmark run_meta_benchmark(const ExperimentConfig& config,
                                 const MetaCorpusOptions& corpus) {
  validate(config);
  MetaBenchmark out;
  Json runs = Json::array();
  const double k = corpus.k_percent;
  for (int r = 0; r < config.repeats; ++r) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
    auto t0 = Clock::now();
    std::vector<TaskBundle> tasks = build_meta_corpus(corpus, seed);
    const double prepare_s = seconds_since(t0);

    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_test = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(corpus.test_fraction *
                        static_cast<double>(tasks.size()))));
    if (n_test >= tasks.size() || tasks.size() - n_test < 2) {
      throw std::invalid_argument("meta corpus too small for the task split");
    }
    std::vector<TaskBundle> train, test;
    for (std::size_t i = 0; i < order.size(); ++i) {
      (i < tasks.size() - n_test ? train : test)
          .push_back(std::move(tasks[order[i]]));
    }
    auto by_id = [](const TaskBundle& a, const TaskBundle& b) {
      return a.id < b.id;
    };
    std::sort(train.begin(), train.end(), by_id);
    std::sort(test.begin(), test.end(), by_id);

    std::vector<std::string> train_ids, test_ids;
    for (const auto& t : train) train_ids.push_back(t.id);
    for (const auto& t : test) test_ids.push_back(t.id);
    for (const auto& id : test_ids) {
      if (std::find(train_ids.begin(), train_ids.end(), id) !=
          train_ids.end()) {
        throw std::logic_error("held-out task " + id + " leaked into training");
      }
    }

    MetaConfig mc = config.meta_config;
    mc.seed = seed;
    TrainConfig tc = config.train_config;
    tc.seed = seed;

    t0 = Clock::now();
    const MetaTrainResult meta = meta_train(train, mc, tc);
    const double meta_train_s = seconds_since(t0);

    std::vector<TrainingGraph> pooled;
    for (const auto& t : train) {
      pooled.push_back({&t.graph, &t.features.normalized, &t.labels, {}});
    }
    t0 = Clock::now();
    const TrainResult gnn = train_pooled(pooled, tc);
    const double gnn_train_s = seconds_since(t0);

    double meta_acc = 0.0, frozen_acc = 0.0, tuned_acc = 0.0;
    for (const auto& t : test) {
      auto add = [&](const std::string& method, const Metrics& m,
                     double train_s, double infer_s) {
        ReportRow row;
        row.dataset = fmt::format("{}/s{}", t.id, seed);
        row.method = method;
        row.k_percent = k;
        row.metrics = m;
        row.prepare_seconds = prepare_s;
        row.train_seconds = train_s;
        row.infer_seconds = infer_s;
        out.rows.push_back(std::move(row));
      };
      t0 = Clock::now();
      const Metrics mm = meta_evaluate(
          fine_tune(meta.params, t, mc.inner_lr, mc.fine_tune_steps), t, k);
      add("meta", mm, meta_train_s, seconds_since(t0));
      t0 = Clock::now();
      const Metrics fm = meta_evaluate(gnn.params, t, k);
      add("graphshs", fm, gnn_train_s, seconds_since(t0));
      t0 = Clock::now();
      const Metrics tm = meta_evaluate(
          fine_tune(gnn.params, t, mc.inner_lr, mc.fine_tune_steps), t, k);
      add("graphshs-ft", tm, gnn_train_s, seconds_since(t0));
      add(kMajorityMethod,
          accuracy_on(all_normal(t.graph.num_nodes(), k), t.labels, t.query),
          0.0, 0.0);
      meta_acc += mm.accuracy;
      frozen_acc += fm.accuracy;
      tuned_acc += tm.accuracy;
    }
    const double nt = static_cast<double>(test.size());
    out.meta_accuracy.push_back(meta_acc / nt);
    out.frozen_accuracy.push_back(frozen_acc / nt);
    out.tuned_accuracy.push_back(tuned_acc / nt);

    runs.push_back({{"seed", seed},
                    {"train_tasks", train_ids},
                    {"test_tasks", test_ids},
                    {"meta_epochs_run", meta.query_loss.size()},
                    {"meta_best_epoch", meta.best_epoch},
                    {"meta_sha256", sha256_hex(serialize_checkpoint(
                                        meta.params, meta_header(mc)))},
                    {"graphshs_sha256",
                     sha256_hex(serialize_checkpoint(gnn.params))}});
    out.train_ids.push_back(std::move(train_ids));
    out.test_ids.push_back(std::move(test_ids));
  }
  Json corpus_json = {{"tasks_per_family", corpus.tasks_per_family},
                      {"min_nodes", corpus.min_nodes},
                      {"max_nodes", corpus.max_nodes},
                      {"er_mean_degree", corpus.er_mean_degree},
                      {"k_percent", corpus.k_percent},
                      {"test_fraction", corpus.test_fraction},
                      {"support_ratio", corpus.support_ratio}};
  out.manifest = {{"format", "shs-run"},
                  {"version", 1},
                  {"kind", "meta"},
                  {"train_config", to_json(config.train_config)},
                  {"meta_config", to_json(config.meta_config)},
                  {"seed", config.seed},
                  {"repeats", config.repeats},
                  {"corpus", std::move(corpus_json)},
                  {"runs", std::move(runs)},
                  {"accuracy_sha256", accuracy_digest(out.rows)}};
  if (!config.out_dir.empty()) {
    fs::create_directories(config.out_dir);
    write_manifest(out.manifest, config.out_dir);
  }
  return out;
}

// ------------------------------------------------------ dynamic deletions

DynamicReport run_dynamic_experiment(const Graph& g0, int deletions,
                                     const ModelParams& params,
                                     std::uint64_t seed, double k_percent) {
  if (deletions < 0 || static_cast<std::size_t>(deletions) > g0.num_edges()) {
    throw std::invalid_argument(fmt::format(
        "cannot delete {} edges from a graph with {}", deletions,
        g0.num_edges()));
  }
  if (params.in_features() != kNumFeatures) {
    throw std::invalid_argument("model does not take the node features");
  }
  DynamicReport report;
  Graph g = g0;
  FeatureMatrix features = node_features(g);
  std::mt19937_64 rng(seed);
  double model_total = 0.0, brandes_total = 0.0;
  for (int step = 0; step < deletions; ++step) {
    const std::vector<Edge> edges = g.edges();
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const Edge e = edges[pick(rng)];
    const std::size_t before = g.num_edges();
    g = delete_edge(g, e.u, e.v);
    validate(g);
    if (g.num_edges() != before - 1) {
      throw std::logic_error("edge deletion did not remove exactly one edge");
    }

    DynamicStep s;
    s.removed = e;
    s.edges_after = g.num_edges();

    auto t0 = Clock::now();
    std::vector<NodeId> touched = {e.u, e.v};
    for (NodeId end : {e.u, e.v}) {
      for (NodeId w : g.neighbors(end)) touched.push_back(w);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    update_features(features, g, touched);
    const Prediction p =
        predict_ranked(params, g, features.normalized, k_percent);
    s.model_seconds = seconds_since(t0);

    t0 = Clock::now();
    const LabelVector truth = label_top_k(brandes_bc(g), k_percent);
    s.brandes_seconds = seconds_since(t0);

    s.speedup = s.model_seconds > 0.0 ? s.brandes_seconds / s.model_seconds
                                      : 0.0;
    s.agreement = accuracy(p.labels, truth);
    model_total += s.model_seconds;
    brandes_total += s.brandes_seconds;
    report.mean_speedup += s.speedup;
    report.steps.push_back(s);
  }
  if (deletions > 0) {
    report.mean_speedup /= deletions;
    report.total_speedup = model_total > 0.0 ? brandes_total / model_total : 0.0;
  }
  return report;
}

// ---------------------------------------------------------------- sweeps

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "layers") return SweepAxis::kLayers;
  if (name == "hidden") return SweepAxis::kHidden;
  throw std::invalid_argument(fmt::format("unknown sweep axis '{}'", name));
}

std::vector<int> sweep_values(SweepAxis axis) {
  if (axis == SweepAxis::kLayers) return {1, 2, 3, 4, 5, 6};
  return {16, 32, 64, 128, 256};
}

SweepReport run_sensitivity_sweep(const ExperimentConfig& config,
                                  SweepAxis axis, double k_percent) {
  validate(config);
  if (config.tests.empty()) throw std::invalid_argument("no test datasets");
  ExperimentConfig prep = config;
  prep.k_percents = {k_percent};

  SweepReport out;
  out.axis = axis;
  out.values = sweep_values(axis);
  Json datasets = Json::array();
  const PreparedDataset train = prepare_into(prep, config.train, datasets);
  std::vector<PreparedDataset> tests;
  for (const auto& t : config.tests) {
    tests.push_back(prepare_into(prep, t, datasets));
  }
  const std::string axis_name = axis == SweepAxis::kLayers ? "layers" : "hidden";
  Json models = Json::array();

  for (int value : out.values) {
    std::vector<Metrics> ms;
    double train_s = 0.0, infer_s = 0.0;
    for (int r = 0; r < config.repeats; ++r) {
      TrainConfig tc = config.train_config;
      (axis == SweepAxis::kLayers ? tc.layers : tc.hidden) = value;
      tc.seed = config.train_config.seed + static_cast<std::uint64_t>(r);
      auto t0 = Clock::now();
      const TrainResult tr =
          shs::train(train.graph, train.features.normalized,
                train.labels_for(k_percent), tc);
      train_s += seconds_since(t0);
      models.push_back({{axis_name, value},
                        {"seed", tc.seed},
                        {"sha256", sha256_hex(serialize_checkpoint(tr.params))}});
      for (const auto& t : tests) {
        t0 = Clock::now();
        const Prediction p =
            predict_ranked(tr.params, t.graph, t.features.normalized, k_percent);
        infer_s += seconds_since(t0);
        ms.push_back(accuracy(p.labels, t.labels_for(k_percent)));
      }
    }
    ReportRow row;
    row.dataset = fmt::format("{}={}", axis_name, value);
    row.method = "graphshs";
    row.k_percent = k_percent;
    row.metrics = mean_metrics(ms);
    row.train_seconds = train_s / config.repeats;
    row.infer_seconds = infer_s / static_cast<double>(ms.size());
    out.rows.push_back(std::move(row));
  }

  Json shared = to_json(config.train_config);
  shared.erase(axis_name);
  shared.erase("seed");
  shared["seeds"] = Json::array();
  for (int r = 0; r < config.repeats; ++r) {
    shared["seeds"].push_back(config.train_config.seed +
                              static_cast<std::uint64_t>(r));
  }
  shared["k_percent"] = k_percent;
  shared["train_dataset"] = config.train.id;
  shared["test_datasets"] = Json::array();
  for (const auto& t : config.tests) shared["test_datasets"].push_back(t.id);
  out.shared_hyperparameters = shared;

  if (!config.out_dir.empty()) {
    write_manifest({{"format", "shs-run"},
                    {"version", 1},
                    {"kind", "sweep"},
                    {"axis", axis_name},
                    {"shared", shared},
                    {"datasets", std::move(datasets)},
                    {"models", std::move(models)},
                    {"accuracy_sha256", accuracy_digest(out.rows)}},
                   config.out_dir);
  }
  return out;
}

}  // namespace shs
