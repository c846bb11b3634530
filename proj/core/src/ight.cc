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

#include "dpkt/ight.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpkt/linalg.h"
#include "dpkt/thresholding.h"

namespace dpkt {

absl::Status ValidateIghtConfig(const IghtConfig& cfg, int64_t dim) {
  if (cfg.sparsity < 1) return absl::InvalidArgumentError("sparsity must be >= 1");
  if (cfg.sparsity > dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sparsity ", cfg.sparsity, " exceeds dimension ", dim));
  }
  if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) {
    return absl::InvalidArgumentError("step size must be finite and > 0");
  }
  if (cfg.max_iters < 1) return absl::InvalidArgumentError("max_iters must be >= 1");
  if (cfg.stop_tol.has_value() && !(*cfg.stop_tol > 0.0)) {
    return absl::InvalidArgumentError("stop_tol must be > 0 when set");
  }
  if (cfg.init.has_value() && cfg.init->size() != dim) {
    return absl::InvalidArgumentError("init has the wrong dimension");
  }
  if (cfg.reference.has_value() && cfg.reference->size() != dim) {
    return absl::InvalidArgumentError("reference has the wrong dimension");
  }
  return absl::OkStatus();
}

absl::StatusOr<FitTrace> IghtFit(const LossModel& model, const IghtConfig& cfg) {
  const int64_t d = model.dim();
  if (absl::Status s = ValidateIghtConfig(cfg, d); !s.ok()) return s;

  ParamVector theta = cfg.init.value_or(ParamVector::Zero(d));
  Eigen::VectorXd margins = model.Margins(theta);
  std::vector<int64_t> scratch;

  FitTrace trace;
  trace.per_iter.reserve(static_cast<size_t>(std::min(cfg.max_iters, 4096)));
  for (int t = 1; t <= cfg.max_iters; ++t) {
    const ParamVector grad = model.GradientAtMargins(theta, margins);
    if (!grad.allFinite()) {
      return absl::AbortedError(absl::StrCat(
          "IGHT diverged: non-finite gradient at iteration ", t,
          " (step size ", cfg.step_size, " is likely too large)"));
    }
    ParamVector next = theta - cfg.step_size * grad;
    if (!next.allFinite()) {
      return absl::AbortedError(absl::StrCat(
          "IGHT diverged: non-finite iterate at iteration ", t));
    }
    HardThresholdInPlace(&next, cfg.sparsity, &scratch);
    margins = model.Margins(next);
    const double loss = model.ValueAtMargins(next, margins);
    if (!std::isfinite(loss)) {
      return absl::AbortedError(absl::StrCat(
          "IGHT diverged: non-finite loss at iteration ", t,
          " (step size ", cfg.step_size, " is likely too large)"));
    }

    IterationRecord rec{t, loss, std::nullopt};
    if (cfg.reference.has_value()) rec.distance_to_reference = (next - *cfg.reference).norm();
    trace.per_iter.push_back(rec);

    const double change = (next - theta).norm() / std::max(1.0, theta.norm());
    theta = std::move(next);
    trace.iters_run = t;
    if (cfg.stop_tol.has_value() && change < *cfg.stop_tol) break;
  }
  trace.final = std::move(theta);
  return trace;
}

absl::StatusOr<StepSizes> DefaultStepSizes(const ModelBounds& bounds,
                                           double lambda, double beta_tilde,
                                           const StepConstants& constants) {
  if (!(bounds.smoothness > 0.0)) {
    return absl::InvalidArgumentError("smoothness must be > 0");
  }
  if (!(beta_tilde > 0.0)) return absl::InvalidArgumentError("beta_tilde must be > 0");
  if (lambda < 0.0) return absl::InvalidArgumentError("lambda must be >= 0");
  const double beta = bounds.smoothness;
  const double teacher =
      lambda > 0.0 ? constants.c3 * lambda / (beta * beta) : constants.fallback / beta;
  return StepSizes{teacher, constants.c4 / beta_tilde};
}

double SpectralStepSize(const LossModel& model) {
  double curvature = GramSpectralNorm(model.data().features());
  if (model.kind() == LossKind::kLogistic) curvature /= 4.0;
  return 1.0 / (curvature + model.ridge_weight());
}

}  // namespace dpkt
