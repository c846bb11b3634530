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

#ifndef DPKT_IGHT_H_
#define DPKT_IGHT_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"
#include "dpkt/losses.h"

namespace dpkt {

struct IghtConfig {
  int64_t sparsity = 1;
  double step_size = 1.0;
  int max_iters = 1000;
  // Stop once ||theta_t - theta_{t-1}|| / max(1, ||theta_{t-1}||) < stop_tol.
  std::optional<double> stop_tol = 1e-10;
  // Starting point; the zero vector when unset.
  std::optional<ParamVector> init;
  // When set, the distance ||theta_t - reference|| is recorded per iteration.
  std::optional<ParamVector> reference;
};

absl::Status ValidateIghtConfig(const IghtConfig& cfg, int64_t dim);

struct IterationRecord {
  int iteration;
  double loss;
  std::optional<double> distance_to_reference;
};

struct FitTrace {
  ParamVector final;
  int iters_run = 0;
  std::vector<IterationRecord> per_iter;
};

// Iterative gradient hard thresholding:
//   theta_t = H_s(theta_{t-1} - eta * grad L(theta_{t-1})).
// Returns kAborted naming the iteration if the loss or gradient stops being
// finite (usually a step size that is too large).
absl::StatusOr<FitTrace> IghtFit(const LossModel& model, const IghtConfig& cfg);

struct StepSizes {
  double teacher;
  double student;
};

struct StepConstants {
  double c3 = 1.0;
  double c4 = 1.0;
  // Numerator of the lambda = 0 teacher step, eta = fallback / smoothness.
  double fallback = 1.0;
};

// Teacher: c3 * lambda / smoothness^2 (fallback / smoothness when lambda = 0).
// Student: c4 / beta_tilde.
absl::StatusOr<StepSizes> DefaultStepSizes(const ModelBounds& bounds,
                                           double lambda, double beta_tilde,
                                           const StepConstants& constants = {});

// 1 / (spectral smoothness of the loss), computed from the data: for linear
// loss lambda_max(X^T X / n) + ridge, for logistic lambda_max(X^T X / n) / 4 +
// ridge. Gives monotone descent on the full space.
double SpectralStepSize(const LossModel& model);

}  // namespace dpkt

#endif  // DPKT_IGHT_H_
