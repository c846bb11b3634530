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

#include "dpkt/losses.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "string_compat.h"

namespace dpkt {

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kLinear:
      return "linear";
    case LossKind::kLogistic:
      return "logistic";
  }
  return "unknown";
}

absl::StatusOr<LossKind> ParseLossKind(std::string_view name) {
  if (name == "linear") return LossKind::kLinear;
  if (name == "logistic") return LossKind::kLogistic;
  return absl::InvalidArgumentError(absl::StrCat("unknown task '", ToAbsl(name), "'"));
}

double Softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

absl::StatusOr<LossModel> LossModel::Create(LossKind kind, Dataset data,
                                            double ridge_weight) {
  if (!(ridge_weight >= 0.0) || !std::isfinite(ridge_weight)) {
    return absl::InvalidArgumentError("ridge weight must be finite and >= 0");
  }
  if (data.num_examples() == 0) {
    return absl::InvalidArgumentError("loss over an empty dataset");
  }
  if (kind == LossKind::kLogistic) {
    const Eigen::VectorXd& y = data.labels();
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 0.0 && y[i] != 1.0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "logistic labels must be 0 or 1; example ", i, " has ", y[i]));
      }
    }
  }
  return LossModel(kind, std::move(data), ridge_weight);
}

absl::Status LossModel::CheckDim(const ParamVector& theta) const {
  if (theta.size() != dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "parameter dimension ", theta.size(), " != data dimension ", dim()));
  }
  return absl::OkStatus();
}

Eigen::VectorXd LossModel::Margins(const ParamVector& theta) const {
  return data_.features().Multiply(theta);
}

double LossModel::ValueAtMargins(const ParamVector& theta,
                                 const Eigen::VectorXd& margins) const {
  const Eigen::VectorXd& y = data_.labels();
  const double n = static_cast<double>(num_examples());
  double data_term = 0.0;
  if (kind_ == LossKind::kLinear) {
    data_term = (margins - y).squaredNorm() / (2.0 * n);
  } else {
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      data_term += Softplus(margins[i]) - y[i] * margins[i];
    }
    data_term /= n;
  }
  return data_term + 0.5 * ridge_ * theta.squaredNorm();
}

Eigen::VectorXd LossModel::MarginDerivatives(const Eigen::VectorXd& margins) const {
  if (kind_ == LossKind::kLinear) return margins - data_.labels();
  Eigen::VectorXd out(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    out[i] = Sigmoid(margins[i]) - data_.labels()[i];
  }
  return out;
}

ParamVector LossModel::GradientAtMargins(const ParamVector& theta,
                                         const Eigen::VectorXd& margins) const {
  const double n = static_cast<double>(num_examples());
  ParamVector g = data_.features().TransposeMultiply(MarginDerivatives(margins)) / n;
  if (ridge_ != 0.0) g += ridge_ * theta;
  return g;
}

absl::StatusOr<double> LossModel::Value(const ParamVector& theta) const {
  if (absl::Status s = CheckDim(theta); !s.ok()) return s;
  return ValueAtMargins(theta, Margins(theta));
}

absl::StatusOr<ParamVector> LossModel::Gradient(const ParamVector& theta) const {
  if (absl::Status s = CheckDim(theta); !s.ok()) return s;
  return GradientAtMargins(theta, Margins(theta));
}

absl::StatusOr<ParamVector> LossModel::PerExampleGradient(const ParamVector& theta,
                                                          int64_t i) const {
  if (absl::Status s = CheckDim(theta); !s.ok()) return s;
  if (i < 0 || i >= num_examples()) {
    return absl::OutOfRangeError(absl::StrCat("example index ", i, " out of range"));
  }
  const double z = data_.features().RowDot(i, theta);
  const double y = data_.labels()[i];
  const double scale = kind_ == LossKind::kLinear ? z - y : Sigmoid(z) - y;
  ParamVector g = ParamVector::Zero(dim());
  data_.features().AddScaledRow(i, scale, &g);
  return g;
}

absl::StatusOr<ModelBounds> ComputeModelBounds(const LossModel& model,
                                               int64_t sparsity, double c_gamma) {
  if (sparsity < 1) return absl::InvalidArgumentError("sparsity must be >= 1");
  if (!(c_gamma > 0.0)) return absl::InvalidArgumentError("c_gamma must be > 0");
  const double k = model.data().inf_norm_bound();
  if (k == 0.0) {
    return absl::InvalidArgumentError("all-zero features: K = 0 gives no usable bound");
  }
  const double s = static_cast<double>(sparsity);
  const double lambda = model.ridge_weight();
  if (model.kind() == LossKind::kLinear) {
    return ModelBounds{c_gamma * std::sqrt(s) * k * k, 3.0 * s * k * k + lambda, k};
  }
  return ModelBounds{k, 3.0 * s * k + lambda, k};
}

}  // namespace dpkt
