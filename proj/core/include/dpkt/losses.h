//
// Copyright 2026 The dpkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPKT_LOSSES_H_
#define DPKT_LOSSES_H_

#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"

namespace dpkt {

enum class LossKind { kLinear, kLogistic };

std::string_view LossKindName(LossKind kind);
absl::StatusOr<LossKind> ParseLossKind(std::string_view name);

// Numerically stable log(1 + exp(z)).
double Softplus(double z);
// exp(z) / (1 + exp(z)) without overflow.
double Sigmoid(double z);

// Ridge-regularized empirical loss L_S(theta) + (ridge/2)||theta||^2.
//
//   Linear:   L_S = (1/2n) ||X theta - y||^2
//   Logistic: L_S = -(1/n) sum [y_i theta^T x_i - log(1 + exp(theta^T x_i))]
//
// Logistic labels must be 0 or 1. The model is an immutable value; evaluation
// is safe to call concurrently.
class LossModel {
 public:
  static absl::StatusOr<LossModel> Create(LossKind kind, Dataset data,
                                          double ridge_weight);

  LossKind kind() const { return kind_; }
  const Dataset& data() const { return data_; }
  double ridge_weight() const { return ridge_; }
  int64_t dim() const { return data_.dim(); }
  int64_t num_examples() const { return data_.num_examples(); }

  absl::StatusOr<double> Value(const ParamVector& theta) const;
  // grad L_S(theta) + ridge * theta.
  absl::StatusOr<ParamVector> Gradient(const ParamVector& theta) const;
  // grad l(theta; x_i, y_i), without the ridge term.
  absl::StatusOr<ParamVector> PerExampleGradient(const ParamVector& theta,
                                                 int64_t i) const;

  // Solver fast path. `margins` must equal X * theta. The per-example loss
  // gradient is always dl/dz(z_i, y_i) * x_i, so everything below is driven
  // by the margins.
  Eigen::VectorXd Margins(const ParamVector& theta) const;
  double ValueAtMargins(const ParamVector& theta, const Eigen::VectorXd& margins) const;
  // dl/dz at each example: z - y (linear) or sigmoid(z) - y (logistic).
  Eigen::VectorXd MarginDerivatives(const Eigen::VectorXd& margins) const;
  ParamVector GradientAtMargins(const ParamVector& theta,
                                const Eigen::VectorXd& margins) const;

 private:
  LossModel(LossKind kind, Dataset data, double ridge)
      : kind_(kind), data_(std::move(data)), ridge_(ridge) {}

  absl::Status CheckDim(const ParamVector& theta) const;

  LossKind kind_;
  Dataset data_;
  double ridge_;
};

// Model-specific constants consumed by privacy calibration and step sizes.
struct ModelBounds {
  // l_inf bound on per-example gradients at the constrained minimizer.
  double gamma;
  // Restricted smoothness of the regularized loss.
  double smoothness;
  // K = max_i ||x_i||_inf.
  double inf_norm_bound;
};

// Linear:   gamma = c_gamma * sqrt(s) * K^2, smoothness = 3 s K^2 + ridge.
// Logistic: gamma = K,                       smoothness = 3 s K + ridge.
// These are analytic worst-case bounds, not empirical maxima.
absl::StatusOr<ModelBounds> ComputeModelBounds(const LossModel& model,
                                               int64_t sparsity,
                                               double c_gamma = 1.0);

}  // namespace dpkt

#endif  // DPKT_LOSSES_H_
