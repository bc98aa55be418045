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

#ifndef SHS_MAML_H_
#define SHS_MAML_H_

#include <span>
#include <stdexcept>
#include <utility>

// First-order MAML over any parameter type.
//
// Params needs value semantics plus ADL-visible
//   void axpy(Params& y, double a, const Params& x);   // y += a * x
//   Params zeros_like(const Params& p);
// and a Task provides
//   Params support_gradient(const Params& theta) const;
//   std::pair<double, Params> query_loss_gradient(const Params& theta) const;
namespace shs::maml {

// theta' = theta - alpha * grad L_support(theta), repeated `steps` times.
template <class Params, class Task>
Params inner_adapt(const Params& theta, const Task& task, double alpha,
                   int steps) {
  if (steps < 0) throw std::invalid_argument("inner steps must be >= 0");
  Params adapted = theta;
  for (int s = 0; s < steps; ++s) {
    const Params grad = task.support_gradient(adapted);
    axpy(adapted, -alpha, grad);
  }
  return adapted;
}

template <class Params>
struct MetaStep {
  Params theta;               // updated initialization
  double mean_query_loss = 0;  // mean over tasks, at each adapted theta'_i
};

// theta <- theta - gamma * sum_i grad L_Q_i(theta'_i), with the gradient
// taken at theta'_i (the inner Jacobian is treated as the identity).
// Per-task gradients are summed in task order.
template <class Params, class Task>
MetaStep<Params> meta_step(const Params& theta, std::span<const Task> tasks,
                           double alpha, int inner_steps, double gamma) {
  if (tasks.empty()) throw std::invalid_argument("meta step over zero tasks");
  Params total = zeros_like(theta);
  double loss_sum = 0.0;
  for (const Task& task : tasks) {
    const Params adapted = inner_adapt(theta, task, alpha, inner_steps);
    auto [loss, grad] = task.query_loss_gradient(adapted);
    loss_sum += loss;
    axpy(total, 1.0, grad);
  }
  MetaStep<Params> out{theta, loss_sum / static_cast<double>(tasks.size())};
  axpy(out.theta, -gamma, total);
  return out;
}

}  // namespace shs::maml

#endif  // SHS_MAML_H_
