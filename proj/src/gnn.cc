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

#include "shs/gnn.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "shs/errors.h"

namespace shs {
namespace {

std::span<double> span_of(Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}
std::span<double> span_of(Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void check_input(const ModelParams& params, const Graph& g, const Matrix& x) {
  if (params.layers.empty()) throw std::invalid_argument("model has no layers");
  if (x.rows() != g.num_nodes()) {
    throw std::invalid_argument(fmt::format(
        "feature rows ({}) do not match node count ({})", x.rows(), g.num_nodes()));
  }
  if (x.cols() != params.in_features()) {
    throw std::invalid_argument(fmt::format(
        "feature width {} does not match model input width {}", x.cols(),
        params.in_features()));
  }
}

// z = [h ‖ a] W^T + b, computed blockwise to skip the concatenation copy.
Matrix combine(const Layer& layer, const Matrix& h, const Matrix& a) {
  const Eigen::Index d = h.cols();
  Matrix z(h.rows(), layer.weight.rows());
  z.noalias() = h * layer.weight.leftCols(d).transpose();
  z.noalias() += a * layer.weight.rightCols(d).transpose();
  z.rowwise() += layer.bias.transpose();
  return z;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix probs(logits.rows(), 2);
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = std::max(logits(i, 0), logits(i, 1));
    const double e0 = std::exp(logits(i, 0) - m);
    const double e1 = std::exp(logits(i, 1) - m);
    const double s = e0 + e1;
    probs(i, 0) = e0 / s;
    probs(i, 1) = e1 / s;
  }
  return probs;
}

Matrix head_logits(const ModelParams& params, const Matrix& z) {
  Matrix logits(z.rows(), 2);
  logits.noalias() = z * params.head_weight.transpose();
  logits.rowwise() += params.head_bias.transpose();
  return logits;
}

double clamp_prob(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

double bce_term(double p, bool y) {
  const double c = clamp_prob(p);
  return y ? -std::log(c) : -std::log1p(-c);
}

}  // namespace

int ModelParams::in_features() const {
  return layers.empty() ? 0 : static_cast<int>(layers.front().weight.cols() / 2);
}

int ModelParams::hidden() const {
  return layers.empty() ? 0 : static_cast<int>(layers.back().weight.rows());
}

std::size_t ModelParams::size() const {
  std::size_t total = 0;
  for (auto t : tensors()) total += t.size();
  return total;
}

std::vector<std::span<double>> ModelParams::tensors() {
  std::vector<std::span<double>> out;
  for (Layer& layer : layers) {
    out.push_back(span_of(layer.weight));
    out.push_back(span_of(layer.bias));
  }
  out.push_back(span_of(head_weight));
  out.push_back(span_of(head_bias));
  return out;
}

std::vector<std::span<const double>> ModelParams::tensors() const {
  auto mutable_spans = const_cast<ModelParams*>(this)->tensors();
  return {mutable_spans.begin(), mutable_spans.end()};
}

bool same_shape(const ModelParams& a, const ModelParams& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    if (a.layers[l].weight.rows() != b.layers[l].weight.rows() ||
        a.layers[l].weight.cols() != b.layers[l].weight.cols() ||
        a.layers[l].bias.size() != b.layers[l].bias.size()) {
      return false;
    }
  }
  return a.head_weight.rows() == b.head_weight.rows() &&
         a.head_weight.cols() == b.head_weight.cols() &&
         a.head_bias.size() == b.head_bias.size();
}

ModelParams zeros_like(const ModelParams& p) {
  ModelParams out = p;
  for (auto t : out.tensors()) std::fill(t.begin(), t.end(), 0.0);
  return out;
}

void axpy(ModelParams& y, double a, const ModelParams& x) {
  if (!same_shape(y, x)) throw std::invalid_argument("axpy on mismatched params");
  auto ys = y.tensors();
  auto xs = x.tensors();
  for (std::size_t t = 0; t < ys.size(); ++t) {
    for (std::size_t i = 0; i < ys[t].size(); ++i) ys[t][i] += a * xs[t][i];
  }
}

bool all_finite(const ModelParams& p) {
  for (auto t : p.tensors()) {
    for (double v : t) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

double weight_squared_norm(const ModelParams& p) {
  double total = 0.0;
  for (const Layer& layer : p.layers) total += layer.weight.squaredNorm();
  return total + p.head_weight.squaredNorm();
}

std::uint64_t fingerprint(const ModelParams& p) {
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](const void* data, std::size_t bytes) {
    const auto* c = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      hash ^= c[i];
      hash *= 1099511628211ULL;
    }
  };
  for (auto t : p.tensors()) {
    const std::uint64_t len = t.size();
    mix(&len, sizeof(len));
    mix(t.data(), t.size_bytes());
  }
  return hash;
}

void validate(const TrainConfig& config) {
  if (config.layers < 1) throw std::invalid_argument("need at least one layer");
  if (config.hidden < 1) throw std::invalid_argument("hidden width must be >= 1");
  if (config.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (config.weight_decay < 0.0) {
    throw std::invalid_argument("weight decay must be non-negative");
  }
}

ModelParams init_params(const TrainConfig& config, std::uint64_t seed,
                        int in_features) {
  validate(config);
  std::mt19937_64 rng(seed);
  auto glorot = [&rng](Eigen::Index rows, Eigen::Index cols) {
    const double bound =
        std::sqrt(6.0 / static_cast<double>(rows + cols));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Matrix w(rows, cols);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
    return w;
  };
  ModelParams p;
  int in = in_features;
  for (int l = 0; l < config.layers; ++l) {
    p.layers.push_back({glorot(config.hidden, 2 * in), Vector::Zero(config.hidden)});
    in = config.hidden;
  }
  p.head_weight = glorot(2, config.hidden);
  p.head_bias = Vector::Zero(2);
  return p;
}

Matrix aggregate(const Matrix& h, const Graph& g) {
  if (h.rows() != g.num_nodes()) {
    throw std::invalid_argument(fmt::format(
        "aggregate: {} rows for {} nodes", h.rows(), g.num_nodes()));
  }
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    auto adj = g.neighbors(i);
    if (adj.empty()) continue;
    auto row = out.row(i);
    for (NodeId j : adj) row += h.row(j);
    row /= static_cast<double>(adj.size());
  }
  return out;
}

Matrix aggregate_adjoint(const Matrix& grad, const Graph& g) {
  if (grad.rows() != g.num_nodes()) {
    throw std::invalid_argument("aggregate_adjoint: row count mismatch");
  }
  Matrix out = Matrix::Zero(grad.rows(), grad.cols());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    auto adj = g.neighbors(i);
    if (adj.empty()) continue;
    const double w = 1.0 / static_cast<double>(adj.size());
    for (NodeId j : adj) out.row(j) += w * grad.row(i);
  }
  return out;
}

ForwardTrace forward(const ModelParams& params, const Graph& g,
                     const Matrix& x) {
  check_input(params, g, x);
  ForwardTrace trace;
  trace.params_fingerprint = fingerprint(params);
  trace.h.reserve(params.layers.size() + 1);
  trace.h.push_back(x);
  for (const Layer& layer : params.layers) {
    const Matrix& prev = trace.h.back();
    trace.agg.push_back(aggregate(prev, g));
    trace.pre.push_back(combine(layer, prev, trace.agg.back()));
    trace.h.push_back(trace.pre.back().cwiseMax(0.0));
  }
  trace.logits = head_logits(params, trace.h.back());
  trace.probs = softmax_rows(trace.logits);
  return trace;
}

Matrix infer_logits(const ModelParams& params, const Graph& g, const Matrix& x) {
  check_input(params, g, x);
  Matrix h = x;
  for (const Layer& layer : params.layers) {
    Matrix a = aggregate(h, g);
    h = combine(layer, h, a).cwiseMax(0.0);
  }
  return head_logits(params, h);
}

Vector infer_probabilities(const ModelParams& params, const Graph& g,
                           const Matrix& x) {
  return softmax_rows(infer_logits(params, g, x)).col(1);
}

double bce_loss(std::span<const double> probs,
                std::span<const std::uint8_t> labels) {
  if (probs.size() != labels.size()) {
    throw std::invalid_argument("bce_loss: probs and labels differ in length");
  }
  if (probs.empty()) throw std::invalid_argument("bce_loss over zero nodes");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    total += bce_term(probs[i], labels[i] != 0);
  }
  return total / static_cast<double>(probs.size());
}

double bce_loss(const ForwardTrace& trace, const LabelVector& labels,
                std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("bce_loss over zero nodes");
  if (labels.labels.size() != static_cast<std::size_t>(trace.num_nodes())) {
    throw std::invalid_argument("bce_loss: label count does not match trace");
  }
  double total = 0.0;
  for (NodeId v : nodes) total += bce_term(trace.probs(v, 1), labels.labels[v] != 0);
  return total / static_cast<double>(nodes.size());
}

void accumulate_gradient(const ForwardTrace& trace, const Graph& g,
                         const LabelVector& labels,
                         std::span<const NodeId> nodes,
                         const ModelParams& params, double scale,
                         ModelParams& grad) {
  if (trace.params_fingerprint != fingerprint(params)) {
    throw std::invalid_argument("stale forward trace: params changed since forward()");
  }
  if (!same_shape(grad, params)) {
    throw std::invalid_argument("gradient buffer shape does not match params");
  }
  if (labels.labels.size() != static_cast<std::size_t>(trace.num_nodes()) ||
      trace.num_nodes() != g.num_nodes()) {
    throw std::invalid_argument("trace, labels and graph disagree on node count");
  }

  // dL/dlogits; clamped probabilities pass no gradient.
  Matrix d_logits = Matrix::Zero(trace.num_nodes(), 2);
  for (NodeId v : nodes) {
    const double p = trace.probs(v, 1);
    if (p < kProbClamp || p > 1.0 - kProbClamp) continue;
    const double r = scale * (p - (labels.labels[v] != 0 ? 1.0 : 0.0));
    d_logits(v, 1) += r;
    d_logits(v, 0) -= r;
  }

  const Matrix& z = trace.h.back();
  grad.head_weight.noalias() += d_logits.transpose() * z;
  grad.head_bias += d_logits.colwise().sum().transpose();
  Matrix d_h = d_logits * params.head_weight;

  for (std::size_t l = params.layers.size(); l-- > 0;) {
    const Layer& layer = params.layers[l];
    const Matrix& h_in = trace.h[l];
    const Eigen::Index d = h_in.cols();
    // ReLU subgradient is 0 at 0.
    Matrix d_pre = (trace.pre[l].array() > 0.0).select(d_h, 0.0);
    Layer& g_layer = grad.layers[l];
    g_layer.weight.leftCols(d).noalias() += d_pre.transpose() * h_in;
    g_layer.weight.rightCols(d).noalias() += d_pre.transpose() * trace.agg[l];
    g_layer.bias += d_pre.colwise().sum().transpose();
    if (l == 0) break;
    Matrix d_agg = d_pre * layer.weight.rightCols(d);
    d_h.noalias() = d_pre * layer.weight.leftCols(d);
    d_h += aggregate_adjoint(d_agg, g);
  }
}

ModelParams backward(const ForwardTrace& trace, const Graph& g,
                     const LabelVector& labels, std::span<const NodeId> nodes,
                     const ModelParams& params, double weight_decay) {
  if (nodes.empty()) throw std::invalid_argument("backward over zero nodes");
  ModelParams grad = zeros_like(params);
  accumulate_gradient(trace, g, labels, nodes, params,
                      1.0 / static_cast<double>(nodes.size()), grad);
  if (weight_decay != 0.0) {
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
      grad.layers[l].weight += 2.0 * weight_decay * params.layers[l].weight;
    }
    grad.head_weight += 2.0 * weight_decay * params.head_weight;
  }
  return grad;
}

void adam_step(ModelParams& params, const ModelParams& grads,
               AdamState& state, const TrainConfig& config) {
  if (!same_shape(params, grads)) {
    throw std::invalid_argument("adam_step: gradient shape mismatch");
  }
  if (state.step == 0) {
    state.m = zeros_like(params);
    state.v = zeros_like(params);
  }
  ++state.step;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  auto ps = params.tensors();
  auto gs = grads.tensors();
  auto ms = state.m.tensors();
  auto vs = state.v.tensors();
  for (std::size_t t = 0; t < ps.size(); ++t) {
    for (std::size_t i = 0; i < ps[t].size(); ++i) {
      const double g = gs[t][i];
      ms[t][i] = b1 * ms[t][i] + (1.0 - b1) * g;
      vs[t][i] = b2 * vs[t][i] + (1.0 - b2) * g * g;
      const double m_hat = ms[t][i] / c1;
      const double v_hat = vs[t][i] / c2;
      ps[t][i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_eps);
    }
  }
}

TrainResult train_pooled(std::span<const TrainingGraph> graphs,
                         const TrainConfig& config) {
  validate(config);
  if (graphs.empty()) throw std::invalid_argument("no training graphs");

  std::vector<std::vector<NodeId>> node_sets;
  std::size_t total = 0;
  for (const TrainingGraph& tg : graphs) {
    if (!tg.graph || !tg.features || !tg.labels) {
      throw std::invalid_argument("training graph is missing a component");
    }
    std::vector<NodeId> nodes = tg.nodes;
    if (nodes.empty()) {
      nodes.resize(tg.graph->num_nodes());
      std::iota(nodes.begin(), nodes.end(), NodeId{0});
    }
    total += nodes.size();
    node_sets.push_back(std::move(nodes));
  }
  if (total == 0) throw std::invalid_argument("no labeled training nodes");

  TrainResult result;
  result.params = init_params(config, config.seed,
                              static_cast<int>(graphs.front().features->cols()));
  AdamState state;
  const double scale = 1.0 / static_cast<double>(total);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ModelParams grad = zeros_like(result.params);
    double loss = 0.0;
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const TrainingGraph& tg = graphs[k];
      ForwardTrace trace = forward(result.params, *tg.graph, *tg.features);
      loss += bce_loss(trace, *tg.labels, node_sets[k]) *
              static_cast<double>(node_sets[k].size()) * scale;
      accumulate_gradient(trace, *tg.graph, *tg.labels, node_sets[k],
                          result.params, scale, grad);
    }
    if (!std::isfinite(loss)) {
      throw NumericError(fmt::format("training loss is {} at epoch {}", loss, epoch));
    }
    result.loss_history.push_back(loss);
    if (config.weight_decay != 0.0) {
      for (std::size_t l = 0; l < grad.layers.size(); ++l) {
        grad.layers[l].weight += 2.0 * config.weight_decay * result.params.layers[l].weight;
      }
      grad.head_weight += 2.0 * config.weight_decay * result.params.head_weight;
    }
    adam_step(result.params, grad, state, config);
    if (!all_finite(result.params)) {
      throw NumericError(fmt::format("non-finite parameters after epoch {}", epoch));
    }
  }
  return result;
}

TrainResult train(const Graph& g, const Matrix& x, const LabelVector& labels,
                  const TrainConfig& config) {
  TrainingGraph tg{&g, &x, &labels, {}};
  return train_pooled(std::span<const TrainingGraph>(&tg, 1), config);
}

Prediction predict(const ModelParams& params, const Graph& g, const Matrix& x) {
  const Matrix logits = infer_logits(params, g, x);
  const Matrix probs = softmax_rows(logits);
  Prediction out;
  out.prob_shs.kind = ScoreKind::kProbShs;
  out.prob_shs.values.resize(static_cast<std::size_t>(probs.rows()));
  out.labels.labels.resize(static_cast<std::size_t>(probs.rows()));
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    out.prob_shs.values[i] = probs(i, 1);
    out.labels.labels[i] = logits(i, 1) > logits(i, 0) ? 1 : 0;
  }
  return out;
}

Prediction predict_ranked(const ModelParams& params, const Graph& g,
                          const Matrix& x, double k_percent) {
  Prediction out;
  out.prob_shs.kind = ScoreKind::kProbShs;
  const Vector p = infer_probabilities(params, g, x);
  out.prob_shs.values.assign(p.data(), p.data() + p.size());
  out.labels = baseline_predict(out.prob_shs, k_percent);
  return out;
}

}  // namespace shs
