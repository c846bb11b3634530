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

#include "dpkt/transfer.h"

#include <cmath>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpkt/linalg.h"
#include "dpkt/status_macros.h"
#include "string_compat.h"

namespace dpkt {
namespace {

absl::StatusOr<double> ResolveStep(StepRule rule, double fixed, double theory,
                                   const LossModel& model) {
  switch (rule) {
    case StepRule::kFixed:
      return fixed;
    case StepRule::kTheory:
      return theory;
    case StepRule::kSpectral:
      return SpectralStepSize(model);
  }
  return absl::InternalError("unknown step rule");
}

nlohmann::json LossSeries(const FitTrace& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rec : trace.per_iter) out.push_back(rec.loss);
  return out;
}

std::vector<double> ToStdVector(const ParamVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

std::string_view SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kUniformPm1:
      return "uniform";
    case SynthKind::kGaussianIso:
      return "gaussian";
    case SynthKind::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

absl::StatusOr<SynthKind> ParseSynthKind(std::string_view name) {
  if (name == "uniform") return SynthKind::kUniformPm1;
  if (name == "gaussian") return SynthKind::kGaussianIso;
  if (name == "empirical") return SynthKind::kEmpirical;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown synthetic distribution '", ToAbsl(name),
                   "' (expected uniform, gaussian or empirical)"));
}

std::string_view StepRuleName(StepRule rule) {
  switch (rule) {
    case StepRule::kFixed:
      return "fixed";
    case StepRule::kTheory:
      return "theory";
    case StepRule::kSpectral:
      return "spectral";
  }
  return "unknown";
}

absl::StatusOr<StepRule> ParseStepRule(std::string_view name) {
  if (name == "fixed") return StepRule::kFixed;
  if (name == "theory") return StepRule::kTheory;
  if (name == "spectral") return StepRule::kSpectral;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown step rule '", ToAbsl(name), "' (expected fixed, theory or spectral)"));
}

absl::Status ValidateSynth(const SyntheticDistribution& synth, int64_t dim) {
  switch (synth.kind) {
    case SynthKind::kUniformPm1:
      return absl::OkStatus();
    case SynthKind::kGaussianIso:
      if (!(synth.tau2 > 0.0) || !std::isfinite(synth.tau2)) {
        return absl::InvalidArgumentError("tau2 must be > 0");
      }
      return absl::OkStatus();
    case SynthKind::kEmpirical:
      if (synth.pool == nullptr || synth.pool->rows() == 0) {
        return absl::InvalidArgumentError("empirical distribution needs a nonempty pool");
      }
      if (synth.pool->cols() != dim) {
        return absl::InvalidArgumentError(absl::StrCat(
            "pool dimension ", synth.pool->cols(), " does not match ", dim));
      }
      if (!(synth.safety_factor >= 1.0)) {
        return absl::InvalidArgumentError("safety factor must be >= 1");
      }
      return absl::OkStatus();
  }
  return absl::InternalError("unknown synthetic kind");
}

absl::StatusOr<double> EstimateBetaTilde(const DesignMatrix& rows) {
  if (rows.rows() < 2) {
    return absl::InvalidArgumentError("covariance estimate needs at least 2 rows");
  }
  return CovarianceSpectralNorm(rows);
}

absl::StatusOr<double> BetaTilde(const SyntheticDistribution& synth) {
  switch (synth.kind) {
    case SynthKind::kUniformPm1:
      return 1.0 / 3.0;
    case SynthKind::kGaussianIso:
      return synth.tau2;
    case SynthKind::kEmpirical: {
      if (synth.pool == nullptr) return absl::InvalidArgumentError("empty pool");
      DPKT_ASSIGN_OR_RETURN(double est, EstimateBetaTilde(*synth.pool));
      if (!(est > 0.0)) {
        return absl::InvalidArgumentError("pool covariance is zero; beta_tilde must be > 0");
      }
      return synth.safety_factor * est;
    }
  }
  return absl::InternalError("unknown synthetic kind");
}

absl::StatusOr<std::shared_ptr<const DesignMatrix>> SampleSyntheticFeatures(
    const SyntheticDistribution& synth, int64_t dim, int64_t m, Rng& rng) {
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  DPKT_RETURN_IF_ERROR(ValidateSynth(synth, dim));
  if (synth.kind == SynthKind::kEmpirical) {
    std::vector<int64_t> picks(static_cast<size_t>(m));
    for (auto& p : picks) p = rng.UniformInt(0, synth.pool->rows() - 1);
    return std::make_shared<const DesignMatrix>(synth.pool->SelectRows(picks));
  }
  DenseMatrix x(m, dim);
  if (synth.kind == SynthKind::kUniformPm1) {
    for (int64_t i = 0; i < m; ++i)
      for (int64_t j = 0; j < dim; ++j) x(i, j) = rng.UniformOpen(-1.0, 1.0);
  } else {
    const double sd = std::sqrt(synth.tau2);
    for (int64_t i = 0; i < m; ++i)
      for (int64_t j = 0; j < dim; ++j) x(i, j) = rng.Normal(sd);
  }
  return std::make_shared<const DesignMatrix>(std::move(x));
}

absl::StatusOr<Eigen::VectorXd> GeneratePrivateResponses(const ParamVector& teacher,
                                                         const DesignMatrix& rows,
                                                         double sigma2, Rng& rng) {
  if (teacher.size() != rows.cols()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "teacher has dimension ", teacher.size(), " but rows have ", rows.cols()));
  }
  return GaussianMechanism(rows.Multiply(teacher), sigma2, rng);
}

absl::StatusOr<LossModel> BuildStudentLoss(std::shared_ptr<const DesignMatrix> rows,
                                           Eigen::VectorXd responses) {
  if (rows == nullptr || rows->rows() < 1) {
    return absl::InvalidArgumentError("student task needs at least one row");
  }
  if (rows->rows() != responses.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", rows->rows(), " rows but ", responses.size(), " responses"));
  }
  DPKT_ASSIGN_OR_RETURN(Dataset data, Dataset::Create(std::move(rows), std::move(responses)));
  return LossModel::Create(LossKind::kLinear, std::move(data), 0.0);
}

absl::StatusOr<DistillOutput> DistillFromTeacher(const ParamVector& teacher_theta,
                                                 double sigma2,
                                                 const TransferConfig& cfg,
                                                 int64_t m, Rng& rng) {
  const int64_t d = teacher_theta.size();
  Rng feature_rng = rng.Split(Stream::kSyntheticFeatures);
  Rng noise_rng = rng.Split(Stream::kMechanism);
  DPKT_ASSIGN_OR_RETURN(auto rows, SampleSyntheticFeatures(cfg.synth, d, m, feature_rng));
  DPKT_ASSIGN_OR_RETURN(Eigen::VectorXd responses,
                        GeneratePrivateResponses(teacher_theta, *rows, sigma2, noise_rng));
  DPKT_ASSIGN_OR_RETURN(LossModel student, BuildStudentLoss(rows, std::move(responses)));

  DPKT_ASSIGN_OR_RETURN(double beta_tilde, BetaTilde(cfg.synth));
  const double theory = cfg.step_constants.c4 / beta_tilde;
  DistillOutput out;
  DPKT_ASSIGN_OR_RETURN(out.student_step, ResolveStep(cfg.student_step, cfg.student.step_size,
                                                      theory, student));
  IghtConfig scfg = cfg.student;
  scfg.step_size = out.student_step;
  DPKT_ASSIGN_OR_RETURN(out.student_trace, IghtFit(student, scfg));
  return out;
}

absl::StatusOr<TransferResult> RunDpslKt(const Dataset& private_data, LossKind kind,
                                         const TransferConfig& cfg) {
  DPKT_RETURN_IF_ERROR(ValidatePrivacyParams(cfg.privacy));
  const int64_t n = private_data.num_examples();
  const int64_t d = private_data.dim();
  const int64_t m = cfg.m.value_or(n);
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  DPKT_RETURN_IF_ERROR(ValidateSynth(cfg.synth, d));
  DPKT_RETURN_IF_ERROR(ValidateIghtConfig(cfg.teacher, d));
  DPKT_RETURN_IF_ERROR(ValidateIghtConfig(cfg.student, d));
  if (!(cfg.sample_size_c >= 0.0)) {
    return absl::InvalidArgumentError("sample size constant must be >= 0");
  }

  const int64_t s = cfg.student.sparsity;
  const double required =
      std::ceil(cfg.sample_size_c * static_cast<double>(s) * std::log(static_cast<double>(d)));
  if (static_cast<double>(m) < required) {
    return absl::FailedPreconditionError(absl::StrCat(
        "synthetic sample count m = ", m, " is below the required minimum ",
        static_cast<int64_t>(required), " (= ceil(", cfg.sample_size_c, " * s * ln d))"));
  }

  // Bounds depend only on K and s, which are fixed before lambda is known.
  DPKT_ASSIGN_OR_RETURN(LossModel unregularized, LossModel::Create(kind, private_data, 0.0));
  DPKT_ASSIGN_OR_RETURN(ModelBounds bounds0,
                        ComputeModelBounds(unregularized, cfg.teacher.sparsity, cfg.c_gamma));
  const double gamma = bounds0.gamma;

  TransferResult result;
  ConvexityMode mode = ConvexityMode::kRidge;
  double rho = 0.0;
  std::map<std::string, double> constants;
  if (const auto* rule = std::get_if<LambdaRuleMode>(&cfg.lambda_mode)) {
    DPKT_ASSIGN_OR_RETURN(result.lambda,
                          LambdaRule(gamma, cfg.s_star.value_or(cfg.teacher.sparsity), d, n,
                                     cfg.privacy, rule->c));
    rho = result.lambda;
    constants["lambda_c"] = rule->c;
  } else if (const auto* fixed = std::get_if<ExplicitLambda>(&cfg.lambda_mode)) {
    if (!(fixed->lambda > 0.0)) {
      return absl::InvalidArgumentError("explicit lambda must be > 0");
    }
    result.lambda = fixed->lambda;
    rho = result.lambda;
  } else {
    const double mu = std::get<RscMode>(cfg.lambda_mode).mu;
    if (!(mu > 0.0)) return absl::InvalidArgumentError("mu must be > 0");
    mode = ConvexityMode::kRsc;
    rho = mu;
    result.lambda = 0.0;
  }

  DPKT_ASSIGN_OR_RETURN(LossModel teacher_model,
                        LossModel::Create(kind, private_data, result.lambda));
  DPKT_ASSIGN_OR_RETURN(ModelBounds bounds,
                        ComputeModelBounds(teacher_model, cfg.teacher.sparsity, cfg.c_gamma));
  DPKT_ASSIGN_OR_RETURN(double beta_tilde, BetaTilde(cfg.synth));
  DPKT_ASSIGN_OR_RETURN(StepSizes theory,
                        DefaultStepSizes(bounds, result.lambda, beta_tilde, cfg.step_constants));
  DPKT_ASSIGN_OR_RETURN(result.teacher_step,
                        ResolveStep(cfg.teacher_step, cfg.teacher.step_size, theory.teacher,
                                    teacher_model));
  IghtConfig tcfg = cfg.teacher;
  tcfg.step_size = result.teacher_step;
  DPKT_ASSIGN_OR_RETURN(result.teacher_trace, IghtFit(teacher_model, tcfg));
  result.teacher_theta = result.teacher_trace.final;

  SensitivityInputs in{m, n, s, beta_tilde, gamma, mode, rho};
  constants["c_gamma"] = cfg.c_gamma;
  constants["c3"] = cfg.step_constants.c3;
  constants["c4"] = cfg.step_constants.c4;
  constants["sample_size_c"] = cfg.sample_size_c;
  constants["lambda"] = result.lambda;
  constants["teacher_iters"] = cfg.teacher.max_iters;
  constants["student_iters"] = cfg.student.max_iters;
  if (cfg.synth.kind == SynthKind::kEmpirical) {
    constants["beta_tilde_safety"] = cfg.synth.safety_factor;
  }
  if (cfg.synth.kind == SynthKind::kGaussianIso) constants["tau2"] = cfg.synth.tau2;
  DPKT_ASSIGN_OR_RETURN(result.receipt, MakeTransferReceipt(cfg.privacy, in, constants));
  result.receipt.labels["synthetic"] = SynthKindName(cfg.synth.kind);
  result.receipt.labels["loss"] = LossKindName(kind);

  double sigma2 = result.receipt.sigma2;
  if (cfg.sigma2_override.has_value()) {
    sigma2 = *cfg.sigma2_override;
    result.receipt.constants["sigma2_applied"] = sigma2;
    result.receipt.labels["warning"] = "noise variance overridden; output is not private";
  }

  Rng rng(cfg.seed);
  DPKT_ASSIGN_OR_RETURN(DistillOutput distilled,
                        DistillFromTeacher(result.teacher_theta, sigma2, cfg, m, rng));
  result.student_trace = std::move(distilled.student_trace);
  result.student_step = distilled.student_step;
  result.theta_p = result.student_trace.final;
  result.receipt.constants["teacher_step"] = result.teacher_step;
  result.receipt.constants["student_step"] = result.student_step;
  return result;
}

nlohmann::json TransferResultToJson(const TransferResult& result, bool private_only) {
  nlohmann::json j;
  j["theta_p"] = ToStdVector(result.theta_p);
  j["support"] = SupportSet::Of(result.theta_p).indices();
  j["receipt"] = ReceiptToJson(result.receipt);
  if (!private_only) {
    j["traces"] = {{"teacher", LossSeries(result.teacher_trace)},
                   {"student", LossSeries(result.student_trace)}};
    j["teacher_theta"] = ToStdVector(result.teacher_theta);
  }
  return j;
}

}  // namespace dpkt
