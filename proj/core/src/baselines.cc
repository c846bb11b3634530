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

#include "dpkt/baselines.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpkt/random.h"
#include "dpkt/status_macros.h"
#include "dpkt/thresholding.h"

namespace dpkt {

absl::StatusOr<FitTrace> NonPrivateIght(const LossModel& model, const IghtConfig& cfg) {
  return IghtFit(model, cfg);
}

ParamVector ClipToL2(const ParamVector& g, double clip) {
  const double norm = g.norm();
  if (norm <= clip) return g;
  return g * (clip / norm);
}

absl::StatusOr<DpIghtResult> DpIght(const LossModel& model, const DpIghtConfig& cfg) {
  const DesignMatrix& x = model.data().features();
  const int64_t n = model.num_examples();
  const int64_t d = model.dim();

  IghtConfig shape;
  shape.sparsity = cfg.sparsity;
  shape.step_size = cfg.step_size;
  shape.max_iters = cfg.iterations;
  shape.stop_tol.reset();
  shape.init = cfg.init;
  shape.reference = cfg.reference;
  DPKT_RETURN_IF_ERROR(ValidateIghtConfig(shape, d));

  const double clip = cfg.clip_l2.value_or(x.MaxRowL2Norm());
  if (!(clip > 0.0) || !std::isfinite(clip)) {
    return absl::InvalidArgumentError("clip_l2 must be finite and > 0");
  }
  GradientPerturbationInputs inputs{n, cfg.sparsity, cfg.iterations, clip};
  DPKT_ASSIGN_OR_RETURN(const double sigma, GradientPerturbationStddev(cfg.privacy, inputs));

  std::vector<double> row_norms(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) row_norms[i] = x.RowL2Norm(i);

  Rng noise = Rng(cfg.seed).Split(Stream::kGradientNoise);
  DpIghtResult out;
  ParamVector theta = cfg.init.value_or(ParamVector::Zero(d));
  Eigen::VectorXd margins = model.Margins(theta);
  std::vector<int64_t> scratch;
  const double nn = static_cast<double>(n);
  for (int t = 1; t <= cfg.iterations; ++t) {
    // Per-example gradients are r_i x_i, so clipping only rescales r_i.
    Eigen::VectorXd r = model.MarginDerivatives(margins);
    for (int64_t i = 0; i < n; ++i) {
      const double norm = std::abs(r[i]) * row_norms[i];
      if (norm > clip) r[i] *= clip / norm;
    }
    ParamVector grad = x.TransposeMultiply(r) / nn;
    if (model.ridge_weight() != 0.0) grad += model.ridge_weight() * theta;
    if (sigma > 0.0) {
      for (int64_t j = 0; j < d; ++j) grad[j] += noise.Normal(sigma);
    }
    ParamVector next = theta - cfg.step_size * grad;
    if (!next.allFinite()) {
      return absl::AbortedError(absl::StrCat(
          "DP-IGHT diverged: non-finite iterate at iteration ", t,
          " (step size ", cfg.step_size, " is likely too large)"));
    }
    HardThresholdInPlace(&next, cfg.sparsity, &scratch);
    margins = model.Margins(next);
    const double loss = model.ValueAtMargins(next, margins);
    if (!std::isfinite(loss)) {
      return absl::AbortedError(absl::StrCat(
          "DP-IGHT diverged: non-finite loss at iteration ", t));
    }
    IterationRecord rec{t, loss, std::nullopt};
    if (cfg.reference.has_value()) rec.distance_to_reference = (next - *cfg.reference).norm();
    out.trace.per_iter.push_back(rec);
    theta = std::move(next);
    out.trace.iters_run = t;
  }
  out.trace.final = std::move(theta);

  PrivacyReceipt& receipt = out.receipt;
  receipt.params = cfg.privacy;
  receipt.inputs = inputs;
  receipt.sensitivity_bound = 2.0 * clip / nn;
  receipt.sigma2 = sigma * sigma;
  receipt.constants["step_size"] = cfg.step_size;
  receipt.labels["log"] = "natural";
  receipt.labels["composition"] = "simple: each of T steps is (eps/T, delta/T)-DP";
  receipt.labels["loss"] = LossKindName(model.kind());
  return out;
}

}  // namespace dpkt
