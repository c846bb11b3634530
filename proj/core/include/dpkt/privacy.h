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

#ifndef DPKT_PRIVACY_H_
#define DPKT_PRIVACY_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"
#include "dpkt/random.h"
#include "nlohmann/json.hpp"

namespace dpkt {

// epsilon may be +infinity, which calibrates to zero noise.
struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 0.01;
};

absl::Status ValidatePrivacyParams(const PrivacyParams& pp);

// Source of strong convexity for the teacher problem: the ridge weight
// lambda, or a restricted strong convexity constant mu when lambda = 0.
enum class ConvexityMode { kRidge, kRsc };

std::string_view ConvexityModeName(ConvexityMode mode);

struct SensitivityInputs {
  int64_t m = 0;  // synthetic sample count
  int64_t n = 0;  // private sample count
  int64_t s = 0;
  double beta_tilde = 0.0;
  double gamma = 0.0;
  ConvexityMode mode = ConvexityMode::kRidge;
  double rho = 0.0;  // lambda or mu, depending on mode
};

absl::Status ValidateSensitivityInputs(const SensitivityInputs& in);

// Inputs of the per-iteration gradient perturbation used by DP-IGHT.
struct GradientPerturbationInputs {
  int64_t n = 0;
  int64_t s = 0;
  int iterations = 0;
  double clip_l2 = 0.0;
};

struct PrivacyReceipt {
  PrivacyParams params;
  std::variant<SensitivityInputs, GradientPerturbationInputs> inputs;
  double sensitivity_bound = 0.0;
  double sigma2 = 0.0;
  // Every tunable constant that entered the calibration.
  std::map<std::string, double> constants;
  // Conventions that are not numbers: log base, composition scheme, ...
  std::map<std::string, std::string> labels;
};

// l2 sensitivity of the synthetic prediction vector:
//   2 sqrt(m s beta_tilde) gamma / (n rho).
absl::StatusOr<double> SensitivityBound(const SensitivityInputs& in);

// sigma^2 = 8 m beta_tilde s gamma^2 ln(2.5/delta) / (n^2 eps^2 rho^2),
// which equals 2 ln(2.5/delta) Delta^2 / eps^2. The 2.5 (rather than 1.25)
// spends delta/2 on the mechanism and delta/2 on the covariance event.
absl::StatusOr<double> CalibrateSigma2(const PrivacyParams& pp,
                                       const SensitivityInputs& in);

// Builds the receipt for a single Gaussian release calibrated above.
absl::StatusOr<PrivacyReceipt> MakeTransferReceipt(
    const PrivacyParams& pp, const SensitivityInputs& in,
    std::map<std::string, double> constants);

// value + N(0, sigma2 I). sigma2 == 0 returns value untouched and draws
// nothing from rng.
absl::StatusOr<Eigen::VectorXd> GaussianMechanism(const Eigen::VectorXd& value,
                                                  double sigma2, Rng& rng);

// Per-iteration noise stddev when T noisy gradient steps each spend
// (eps/T, delta/T) and clipped averages have sensitivity 2 clip / n:
//   sqrt(2 ln(1.25 T / delta)) * (2 clip / n) * (T / eps).
absl::StatusOr<double> GradientPerturbationStddev(
    const PrivacyParams& pp, const GradientPerturbationInputs& in);

// lambda = sqrt(c gamma sqrt(s* ln d ln(1/delta)) / (n eps)).
absl::StatusOr<double> LambdaRule(double gamma, int64_t s_star, int64_t dim,
                                  int64_t n, const PrivacyParams& pp, double c);

// Chooses the row that replaces example i of `data` to form a neighbour.
using ReplacementFn =
    std::function<ExampleRow(Rng& rng, const Dataset& data, int64_t i)>;
using QueryFn = std::function<absl::StatusOr<Eigen::VectorXd>(const Dataset&)>;

// Max over `trials` random single-example replacements of ||q(S) - q(S')||_2.
// When `replace` is empty the replacement takes the features of one random
// example and the label of another.
absl::StatusOr<double> EmpiricalSensitivityCheck(const QueryFn& query,
                                                 const Dataset& data, int trials,
                                                 Rng& rng,
                                                 const ReplacementFn& replace = {});

nlohmann::json ReceiptToJson(const PrivacyReceipt& receipt);
absl::StatusOr<PrivacyReceipt> ReceiptFromJson(const nlohmann::json& j);

// Recomputes sigma^2 from the receipt's recorded inputs.
absl::StatusOr<double> RecomputeSigma2(const PrivacyReceipt& receipt);

}  // namespace dpkt

#endif  // DPKT_PRIVACY_H_
