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

#ifndef SHS_GNN_H_
#define SHS_GNN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "shs/centrality.h"
#include "shs/features.h"
#include "shs/graph.h"
#include "shs/matrix.h"

namespace shs {

// One message-passing layer: h' = ReLU(W [h ‖ mean_{N(i)} h] + b).
struct Layer {
  Matrix weight;  // out x 2*in
  Vector bias;    // out
};

// Complete trainable state. Gradients reuse this type.
struct ModelParams {
  std::vector<Layer> layers;
  Matrix head_weight;  // 2 x hidden, row 1 is the SHS logit
  Vector head_bias;    // 2

  int num_layers() const { return static_cast<int>(layers.size()); }
  int in_features() const;
  int hidden() const;
  std::size_t size() const;  // scalar parameter count

  // Contiguous storage of every tensor, in a fixed order.
  std::vector<std::span<double>> tensors();
  std::vector<std::span<const double>> tensors() const;
};

bool same_shape(const ModelParams& a, const ModelParams& b);
ModelParams zeros_like(const ModelParams& p);
// y += a * x, elementwise.
void axpy(ModelParams& y, double a, const ModelParams& x);
bool all_finite(const ModelParams& p);
// Sum of squared weight-matrix entries (biases excluded).
double weight_squared_norm(const ModelParams& p);
// Hash of shapes and values; identifies the params a trace came from.
std::uint64_t fingerprint(const ModelParams& p);

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  std::uint64_t seed = 0;
  int layers = 4;
  int hidden = 128;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

void validate(const TrainConfig& config);

// Glorot-uniform weights, zero biases.
ModelParams init_params(const TrainConfig& config, std::uint64_t seed,
                        int in_features = kNumFeatures);

// Everything the backward pass needs from one forward evaluation.
struct ForwardTrace {
  std::vector<Matrix> h;    // h[0] = input, h[l] = layer-l output (L + 1)
  std::vector<Matrix> agg;  // agg[l] = mean of h[l] over neighbors (L)
  std::vector<Matrix> pre;  // pre-activations (L)
  Matrix logits;            // n x 2
  Matrix probs;             // n x 2, rows sum to 1
  std::uint64_t params_fingerprint = 0;

  Eigen::Index num_nodes() const { return probs.rows(); }
};

// Row i = sum of h over N(i), divided by d(i); zero for isolated nodes.
Matrix aggregate(const Matrix& h, const Graph& g);
// Transpose of aggregate: row j gathers grad[i] / d(i) over i in N(j).
Matrix aggregate_adjoint(const Matrix& grad, const Graph& g);

ForwardTrace forward(const ModelParams& params, const Graph& g,
                     const Matrix& x);

// P(SHS) per node without retaining intermediates.
Vector infer_probabilities(const ModelParams& params, const Graph& g,
                           const Matrix& x);
// Logits per node (n x 2) without retaining intermediates.
Matrix infer_logits(const ModelParams& params, const Graph& g, const Matrix& x);

inline constexpr double kProbClamp = 1e-12;

// Mean binary cross-entropy; probabilities are clamped to
// [1e-12, 1 - 1e-12]. Throws std::invalid_argument on empty input.
double bce_loss(std::span<const double> probs,
                std::span<const std::uint8_t> labels);
// BCE of the trace's P(SHS) over `nodes` (repeats allowed).
double bce_loss(const ForwardTrace& trace, const LabelVector& labels,
                std::span<const NodeId> nodes);

// Gradient of bce_loss(trace, labels, nodes) + weight_decay * ||W||^2.
// Throws std::invalid_argument if the trace was produced by other params.
ModelParams backward(const ForwardTrace& trace, const Graph& g,
                     const LabelVector& labels, std::span<const NodeId> nodes,
                     const ModelParams& params, double weight_decay);

// Adds scale * d(sum of per-node BCE over nodes)/d(params) into grad.
void accumulate_gradient(const ForwardTrace& trace, const Graph& g,
                         const LabelVector& labels,
                         std::span<const NodeId> nodes,
                         const ModelParams& params, double scale,
                         ModelParams& grad);

struct AdamState {
  ModelParams m;
  ModelParams v;
  long step = 0;
};

// Bias-corrected Adam. A default-constructed state is zero-initialized on
// the first call.
void adam_step(ModelParams& params, const ModelParams& grads,
               AdamState& state, const TrainConfig& config);

// One labeled graph for training.
struct TrainingGraph {
  const Graph* graph = nullptr;
  const Matrix* features = nullptr;
  const LabelVector* labels = nullptr;
  std::vector<NodeId> nodes;  // empty = every node
};

struct TrainResult {
  ModelParams params;
  std::vector<double> loss_history;  // BCE before each epoch's update
};

// Full-batch Adam on the mean BCE over all labeled nodes of all graphs.
// Throws NumericError if the loss turns non-finite.
TrainResult train_pooled(std::span<const TrainingGraph> graphs,
                         const TrainConfig& config);
TrainResult train(const Graph& g, const Matrix& x, const LabelVector& labels,
                  const TrainConfig& config);

struct Prediction {
  ScoreVector prob_shs;  // kind kProbShs
  LabelVector labels;
};

// Argmax labels: SHS iff its logit is strictly larger.
Prediction predict(const ModelParams& params, const Graph& g, const Matrix& x);
// Top-k% of P(SHS), ties to the lower id.
Prediction predict_ranked(const ModelParams& params, const Graph& g,
                          const Matrix& x, double k_percent);

}  // namespace shs

#endif  // SHS_GNN_H_
