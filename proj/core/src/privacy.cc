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

#include "dpkt/privacy.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpkt/status_macros.h"

namespace dpkt {
namespace {

bool PositiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

nlohmann::json NumberOrInf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

absl::StatusOr<double> ReadNumber(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return absl::InvalidArgumentError(absl::StrCat("missing ", key));
  const auto& v = j.at(key);
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) {
    return absl::InvalidArgumentError(absl::StrCat(key, " must be a number"));
  }
  return v.get<double>();
}

}  // namespace

absl::Status ValidatePrivacyParams(const PrivacyParams& pp) {
  if (std::isnan(pp.epsilon) || !(pp.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be > 0");
  }
  if (!(pp.delta > 0.0 && pp.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  return absl::OkStatus();
}

std::string_view ConvexityModeName(ConvexityMode mode) {
  return mode == ConvexityMode::kRidge ? "ridge" : "rsc";
}

absl::Status ValidateSensitivityInputs(const SensitivityInputs& in) {
  if (in.m < 1 || in.n < 1 || in.s < 1) {
    return absl::InvalidArgumentError("m, n and s must be >= 1");
  }
  if (!PositiveFinite(in.beta_tilde)) return absl::InvalidArgumentError("beta_tilde must be > 0");
  if (!PositiveFinite(in.gamma)) return absl::InvalidArgumentError("gamma must be > 0");
  if (!PositiveFinite(in.rho)) {
    return absl::InvalidArgumentError(
        absl::StrCat(in.mode == ConvexityMode::kRidge ? "lambda" : "mu", " must be > 0"));
  }
  return absl::OkStatus();
}

absl::StatusOr<double> SensitivityBound(const SensitivityInputs& in) {
  DPKT_RETURN_IF_ERROR(ValidateSensitivityInputs(in));
  const double root = std::sqrt(static_cast<double>(in.m) * static_cast<double>(in.s) *
                                in.beta_tilde);
  return 2.0 * root * in.gamma / (static_cast<double>(in.n) * in.rho);
}

absl::StatusOr<double> CalibrateSigma2(const PrivacyParams& pp,
                                       const SensitivityInputs& in) {
  DPKT_RETURN_IF_ERROR(ValidatePrivacyParams(pp));
  DPKT_RETURN_IF_ERROR(ValidateSensitivityInputs(in));
  if (std::isinf(pp.epsilon)) return 0.0;
  const double n = static_cast<double>(in.n);
  const double num = 8.0 * static_cast<double>(in.m) * in.beta_tilde *
                     static_cast<double>(in.s) * in.gamma * in.gamma *
                     std::log(2.5 / pp.delta);
  const double den = n * n * pp.epsilon * pp.epsilon * in.rho * in.rho;
  return num / den;
}

absl::StatusOr<PrivacyReceipt> MakeTransferReceipt(
    const PrivacyParams& pp, const SensitivityInputs& in,
    std::map<std::string, double> constants) {
  PrivacyReceipt r;
  r.params = pp;
  r.inputs = in;
  DPKT_ASSIGN_OR_RETURN(r.sensitivity_bound, SensitivityBound(in));
  DPKT_ASSIGN_OR_RETURN(r.sigma2, CalibrateSigma2(pp, in));
  r.constants = std::move(constants);
  r.labels["log"] = "natural";
  r.labels["delta_split"] = "delta/2 mechanism + delta/2 covariance event";
  r.labels["gamma_source"] = "analytic bound";
  r.labels["composition"] = "single gaussian release";
  return r;
}

absl::StatusOr<double> GradientPerturbationStddev(
    const PrivacyParams& pp, const GradientPerturbationInputs& in) {
  DPKT_RETURN_IF_ERROR(ValidatePrivacyParams(pp));
  if (in.n < 1 || in.iterations < 1) {
    return absl::InvalidArgumentError("n and iterations must be >= 1");
  }
  if (!PositiveFinite(in.clip_l2)) return absl::InvalidArgumentError("clip_l2 must be > 0");
  if (std::isinf(pp.epsilon)) return 0.0;
  const double t = static_cast<double>(in.iterations);
  return std::sqrt(2.0 * std::log(1.25 * t / pp.delta)) *
         (2.0 * in.clip_l2 / static_cast<double>(in.n)) * (t / pp.epsilon);
}

absl::StatusOr<Eigen::VectorXd> GaussianMechanism(const Eigen::VectorXd& value,
                                                  double sigma2, Rng& rng) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    return absl::InvalidArgumentError("sigma2 must be finite and >= 0");
  }
  Eigen::VectorXd out = value;
  if (sigma2 == 0.0) return out;
  const double sd = std::sqrt(sigma2);
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += rng.Normal(sd);
  return out;
}

absl::StatusOr<double> LambdaRule(double gamma, int64_t s_star, int64_t dim,
                                  int64_t n, const PrivacyParams& pp, double c) {
  DPKT_RETURN_IF_ERROR(ValidatePrivacyParams(pp));
  if (!PositiveFinite(gamma) || !PositiveFinite(c)) {
    return absl::InvalidArgumentError("gamma and c must be > 0");
  }
  if (s_star < 1 || n < 1) return absl::InvalidArgumentError("s* and n must be >= 1");
  if (dim < 2) return absl::InvalidArgumentError("dimension must be >= 2");
  if (std::isinf(pp.epsilon)) {
    return absl::InvalidArgumentError("the lambda rule needs a finite epsilon");
  }
  const double inner = std::sqrt(static_cast<double>(s_star) *
                                 std::log(static_cast<double>(dim)) *
                                 std::log(1.0 / pp.delta));
  return std::sqrt(c * gamma * inner / (static_cast<double>(n) * pp.epsilon));
}

absl::StatusOr<double> EmpiricalSensitivityCheck(const QueryFn& query,
                                                 const Dataset& data, int trials,
                                                 Rng& rng,
                                                 const ReplacementFn& replace) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  const int64_t n = data.num_examples();
  DPKT_ASSIGN_OR_RETURN(Eigen::VectorXd base, query(data));
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int64_t i = rng.UniformInt(0, n - 1);
    ExampleRow row;
    if (replace) {
      row = replace(rng, data, i);
    } else {
      const int64_t f = rng.UniformInt(0, n - 1);
      const int64_t l = rng.UniformInt(0, n - 1);
      row = ExampleRow{data.Row(f).features, data.labels()[l]};
    }
    DPKT_ASSIGN_OR_RETURN(Dataset neighbour, data.ReplaceExample(i, row));
    DPKT_ASSIGN_OR_RETURN(Eigen::VectorXd other, query(neighbour));
    if (other.size() != base.size()) {
      return absl::InternalError("query output size changed between neighbours");
    }
    worst = std::max(worst, (other - base).norm());
  }
  return worst;
}

nlohmann::json ReceiptToJson(const PrivacyReceipt& r) {
  nlohmann::json j;
  j["epsilon"] = NumberOrInf(r.params.epsilon);
  j["delta"] = r.params.delta;
  if (const auto* in = std::get_if<SensitivityInputs>(&r.inputs)) {
    j["m"] = in->m;
    j["n"] = in->n;
    j["s"] = in->s;
    j["beta_tilde"] = in->beta_tilde;
    j["gamma"] = in->gamma;
    j["mode"] = ConvexityModeName(in->mode);
    j["rho"] = in->rho;
  } else {
    const auto& g = std::get<GradientPerturbationInputs>(r.inputs);
    j["m"] = nullptr;
    j["n"] = g.n;
    j["s"] = g.s;
    j["beta_tilde"] = nullptr;
    j["gamma"] = nullptr;
    j["mode"] = "gradient_perturbation";
    j["rho"] = nullptr;
  }
  j["sensitivity_bound"] = r.sensitivity_bound;
  j["sigma2"] = r.sigma2;
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [k, v] : r.constants) constants[k] = NumberOrInf(v);
  for (const auto& [k, v] : r.labels) constants[k] = v;
  if (const auto* g = std::get_if<GradientPerturbationInputs>(&r.inputs)) {
    constants["iterations"] = g->iterations;
    constants["clip_l2"] = g->clip_l2;
  }
  j["constants"] = std::move(constants);
  return j;
}

absl::StatusOr<PrivacyReceipt> ReceiptFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("receipt must be a JSON object");
  PrivacyReceipt r;
  DPKT_ASSIGN_OR_RETURN(r.params.epsilon, ReadNumber(j, "epsilon"));
  DPKT_ASSIGN_OR_RETURN(r.params.delta, ReadNumber(j, "delta"));
  DPKT_ASSIGN_OR_RETURN(r.sensitivity_bound, ReadNumber(j, "sensitivity_bound"));
  DPKT_ASSIGN_OR_RETURN(r.sigma2, ReadNumber(j, "sigma2"));
  if (!j.contains("mode") || !j["mode"].is_string()) {
    return absl::InvalidArgumentError("missing mode");
  }
  const std::string mode = j["mode"].get<std::string>();
  const nlohmann::json constants = j.value("constants", nlohmann::json::object());
  for (const auto& [k, v] : constants.items()) {
    if (v.is_number()) {
      r.constants[k] = v.get<double>();
    } else if (v.is_string()) {
      r.labels[k] = v.get<std::string>();
    }
  }
  if (mode == "gradient_perturbation") {
    GradientPerturbationInputs g;
    DPKT_ASSIGN_OR_RETURN(double n, ReadNumber(j, "n"));
    DPKT_ASSIGN_OR_RETURN(double s, ReadNumber(j, "s"));
    g.n = static_cast<int64_t>(n);
    g.s = static_cast<int64_t>(s);
    g.iterations = static_cast<int>(r.constants["iterations"]);
    g.clip_l2 = r.constants["clip_l2"];
    r.constants.erase("iterations");
    r.constants.erase("clip_l2");
    r.inputs = g;
    return r;
  }
  SensitivityInputs in;
  if (mode == "ridge") {
    in.mode = ConvexityMode::kRidge;
  } else if (mode == "rsc") {
    in.mode = ConvexityMode::kRsc;
  } else {
    return absl::InvalidArgumentError(absl::StrCat("unknown mode '", mode, "'"));
  }
  DPKT_ASSIGN_OR_RETURN(double m, ReadNumber(j, "m"));
  DPKT_ASSIGN_OR_RETURN(double n, ReadNumber(j, "n"));
  DPKT_ASSIGN_OR_RETURN(double s, ReadNumber(j, "s"));
  in.m = static_cast<int64_t>(m);
  in.n = static_cast<int64_t>(n);
  in.s = static_cast<int64_t>(s);
  DPKT_ASSIGN_OR_RETURN(in.beta_tilde, ReadNumber(j, "beta_tilde"));
  DPKT_ASSIGN_OR_RETURN(in.gamma, ReadNumber(j, "gamma"));
  DPKT_ASSIGN_OR_RETURN(in.rho, ReadNumber(j, "rho"));
  r.inputs = in;
  return r;
}

absl::StatusOr<double> RecomputeSigma2(const PrivacyReceipt& receipt) {
  if (const auto* in = std::get_if<SensitivityInputs>(&receipt.inputs)) {
    return CalibrateSigma2(receipt.params, *in);
  }
  DPKT_ASSIGN_OR_RETURN(
      double sd, GradientPerturbationStddev(
                     receipt.params, std::get<GradientPerturbationInputs>(receipt.inputs)));
  return sd * sd;
}

}  // namespace dpkt
