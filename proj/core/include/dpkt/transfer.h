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

#ifndef DPKT_TRANSFER_H_
#define DPKT_TRANSFER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"
#include "dpkt/ight.h"
#include "dpkt/losses.h"
#include "dpkt/privacy.h"
#include "dpkt/random.h"
#include "nlohmann/json.hpp"

namespace dpkt {

enum class SynthKind { kUniformPm1, kGaussianIso, kEmpirical };

std::string_view SynthKindName(SynthKind kind);
absl::StatusOr<SynthKind> ParseSynthKind(std::string_view name);

// Public feature distribution the student is trained on.
struct SyntheticDistribution {
  SynthKind kind = SynthKind::kUniformPm1;
  // Variance of each coordinate for kGaussianIso.
  double tau2 = 1.0;
  // Public rows resampled by kEmpirical.
  std::shared_ptr<const DesignMatrix> pool;
  // Multiplies the estimated covariance norm for kEmpirical, since an
  // underestimate would under-noise the release.
  double safety_factor = 1.1;
};

absl::Status ValidateSynth(const SyntheticDistribution& synth, int64_t dim);

// Spectral bound on the feature covariance: 1/3 for U(-1,1), tau2 for the
// isotropic Gaussian, safety_factor * EstimateBetaTilde(pool) otherwise.
absl::StatusOr<double> BetaTilde(const SyntheticDistribution& synth);

// Largest eigenvalue of the sample covariance of `rows` (power iteration,
// relative tolerance 1e-6).
absl::StatusOr<double> EstimateBetaTilde(const DesignMatrix& rows);

// m rows of dimension `dim`. Empirical pools keep their storage format.
absl::StatusOr<std::shared_ptr<const DesignMatrix>> SampleSyntheticFeatures(
    const SyntheticDistribution& synth, int64_t dim, int64_t m, Rng& rng);

// y_i = <teacher, x_i> + N(0, sigma2).
absl::StatusOr<Eigen::VectorXd> GeneratePrivateResponses(const ParamVector& teacher,
                                                         const DesignMatrix& rows,
                                                         double sigma2, Rng& rng);

// Unregularized least squares over (rows, responses).
absl::StatusOr<LossModel> BuildStudentLoss(std::shared_ptr<const DesignMatrix> rows,
                                           Eigen::VectorXd responses);

enum class StepRule { kFixed, kTheory, kSpectral };

std::string_view StepRuleName(StepRule rule);
absl::StatusOr<StepRule> ParseStepRule(std::string_view name);

struct LambdaRuleMode {
  double c = 1.0;
};
struct ExplicitLambda {
  double lambda = 0.0;
};
// Teacher without ridge; mu is a restricted strong convexity constant.
struct RscMode {
  double mu = 0.0;
};
using LambdaMode = std::variant<LambdaRuleMode, ExplicitLambda, RscMode>;

struct TransferConfig {
  IghtConfig teacher;
  IghtConfig student;
  StepRule teacher_step = StepRule::kTheory;
  StepRule student_step = StepRule::kTheory;
  SyntheticDistribution synth;
  // Synthetic sample count; defaults to the private sample count.
  std::optional<int64_t> m;
  PrivacyParams privacy;
  LambdaMode lambda_mode = LambdaRuleMode{};
  uint64_t seed = 0;
  // Sparsity used by the lambda rule; defaults to the teacher sparsity.
  std::optional<int64_t> s_star;
  double c_gamma = 1.0;
  // Requires m >= sample_size_c * s * ln d.
  double sample_size_c = 4.0;
  StepConstants step_constants;
  // Testing hook: replaces the calibrated noise variance. The output is then
  // not private, and the receipt says so.
  std::optional<double> sigma2_override;
};

struct TransferResult {
  ParamVector theta_p;
  // Fit on the private data. Not private; never export it by default.
  ParamVector teacher_theta;
  PrivacyReceipt receipt;
  FitTrace teacher_trace;
  FitTrace student_trace;
  double lambda = 0.0;
  double teacher_step = 0.0;
  double student_step = 0.0;
};

// Releases teacher predictions on fresh synthetic rows and fits the student
// to them. Takes no private data: everything it returns is post-processing of
// the noisy responses.
struct DistillOutput {
  FitTrace student_trace;
  double student_step = 0.0;
};
absl::StatusOr<DistillOutput> DistillFromTeacher(const ParamVector& teacher_theta,
                                                 double sigma2,
                                                 const TransferConfig& cfg,
                                                 int64_t m, Rng& rng);

absl::StatusOr<TransferResult> RunDpslKt(const Dataset& private_data, LossKind kind,
                                         const TransferConfig& cfg);

// {theta_p, support, receipt, traces, teacher_theta}; `private_only` keeps
// just theta_p, support and receipt.
nlohmann::json TransferResultToJson(const TransferResult& result, bool private_only);

}  // namespace dpkt

#endif  // DPKT_TRANSFER_H_
