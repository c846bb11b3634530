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

#ifndef DPKT_BASELINES_H_
#define DPKT_BASELINES_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "dpkt/ight.h"
#include "dpkt/losses.h"
#include "dpkt/privacy.h"

namespace dpkt {

// Plain IGHT on the private loss; named separately for method tables.
absl::StatusOr<FitTrace> NonPrivateIght(const LossModel& model, const IghtConfig& cfg);

struct DpIghtConfig {
  int64_t sparsity = 1;
  double step_size = 1.0;
  int iterations = 10;
  PrivacyParams privacy;
  // Per-example gradient l2 clip; defaults to max_i ||x_i||_2.
  std::optional<double> clip_l2;
  uint64_t seed = 0;
  std::optional<ParamVector> init;
  std::optional<ParamVector> reference;
};

struct DpIghtResult {
  FitTrace trace;
  PrivacyReceipt receipt;
};

// Scales g to l2 norm at most `clip`; vectors already inside pass unchanged.
ParamVector ClipToL2(const ParamVector& g, double clip);

// Gradient-perturbation IGHT:
//   theta_t = H_s(theta_{t-1} - eta (clipped mean gradient + ridge + xi_t)),
// xi_t ~ N(0, sigma_t^2 I). Each of the T steps spends (eps/T, delta/T) and
// the clipped mean has l2 sensitivity 2 clip / n. Runs exactly T steps: a
// data-dependent early stop would leak.
absl::StatusOr<DpIghtResult> DpIght(const LossModel& model, const DpIghtConfig& cfg);

}  // namespace dpkt

#endif  // DPKT_BASELINES_H_
