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

#include "dpkt/selfcheck.h"

#include <bit>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dpkt/datagen.h"
#include "dpkt/ight.h"
#include "dpkt/losses.h"
#include "dpkt/metrics.h"
#include "dpkt/privacy.h"
#include "dpkt/random.h"
#include "dpkt/thresholding.h"
#include "dpkt/transfer.h"

namespace dpkt {
namespace {

CheckResult Thresholding(Rng& rng) {
  CheckResult r{"hard_threshold_best_s_term", true, ""};
  for (int trial = 0; trial < 200 && r.passed; ++trial) {
    const int d = static_cast<int>(rng.UniformInt(1, 8));
    const int s = static_cast<int>(rng.UniformInt(0, d));
    ParamVector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.Uniform(-2.0, 2.0);
    const ParamVector h = *HardThreshold(v, s);
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) != s) continue;
      double err = 0.0;
      for (int i = 0; i < d; ++i) {
        if (!(mask >> i & 1u)) err += v[i] * v[i];
      }
      best = std::min(best, err);
    }
    if ((v - h).squaredNorm() > best * (1 + 1e-12) + 1e-300 || CountNonZeros(h) > s) {
      r.passed = false;
      r.detail = absl::StrCat("mismatch at d=", d, " s=", s);
    }
  }
  if (r.passed) r.detail = "200 random vectors";
  return r;
}

CheckResult Gradients(Rng& rng) {
  CheckResult r{"gradient_finite_difference", true, ""};
  double worst = 0.0;
  for (LossKind kind : {LossKind::kLinear, LossKind::kLogistic}) {
    for (int trial = 0; trial < 5; ++trial) {
      SynthSpec spec;
      spec.n = 30;
      spec.d = 8;
      spec.s_star = 3;
      if (kind == LossKind::kLogistic) spec.task = LogisticLabels{};
      Generated g = *Generate(spec, rng.Split(static_cast<uint64_t>(trial)));
      LossModel model = *LossModel::Create(kind, g.data, 0.1);
      ParamVector theta(spec.d), u(spec.d);
      for (int i = 0; i < spec.d; ++i) {
        theta[i] = rng.Uniform(-1.0, 1.0);
        u[i] = rng.Uniform(-1.0, 1.0);
      }
      const double h = 1e-6;
      const double fd = (*model.Value(theta + h * u) - *model.Value(theta - h * u)) / (2 * h);
      const double an = model.Gradient(theta)->dot(u);
      worst = std::max(worst, std::abs(fd - an) / (1.0 + std::abs(an)));
    }
  }
  r.passed = worst <= 1e-5;
  r.detail = absl::StrCat("worst scaled error ", worst);
  return r;
}

CheckResult Calibration(Rng& rng) {
  CheckResult r{"sigma2_identity", true, ""};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    SensitivityInputs in{rng.UniformInt(1, 5000), rng.UniformInt(1, 5000),
                         rng.UniformInt(1, 100), rng.Uniform(0.01, 5.0),
                         rng.Uniform(0.01, 10.0), ConvexityMode::kRidge,
                         rng.Uniform(0.01, 5.0)};
    PrivacyParams pp{rng.Uniform(0.05, 10.0), rng.Uniform(1e-6, 0.5)};
    const double sigma2 = *CalibrateSigma2(pp, in);
    const double delta2 = *SensitivityBound(in);
    const double ident = 2.0 * std::log(2.5 / pp.delta) * delta2 * delta2 /
                         (pp.epsilon * pp.epsilon);
    worst = std::max(worst, std::abs(sigma2 - ident) / ident);
  }
  r.passed = worst <= 1e-12;
  r.detail = absl::StrCat("worst relative error ", worst);
  return r;
}

CheckResult Recovery(Rng& rng) {
  CheckResult r{"ight_noiseless_recovery", true, ""};
  SynthSpec spec;
  spec.n = 200;
  spec.d = 50;
  spec.s_star = 5;
  spec.task = LinearNoise{0.0};
  Generated g = *Generate(spec, rng);
  LossModel model = *LossModel::Create(LossKind::kLinear, g.data, 0.0);
  IghtConfig cfg;
  cfg.sparsity = spec.s_star;
  cfg.step_size = SpectralStepSize(model);
  cfg.max_iters = 500;
  absl::StatusOr<FitTrace> fit = IghtFit(model, cfg);
  if (!fit.ok()) return {r.name, false, fit.status().ToString()};
  const double err = *RelativeEstimationError(fit->final, g.theta_star);
  r.passed = err <= 1e-6 && SupportSet::Of(fit->final) == SupportSet::Of(g.theta_star);
  r.detail = absl::StrCat("relative error ", err);
  return r;
}

CheckResult Sensitivity(Rng& rng) {
  CheckResult r{"empirical_sensitivity_bound", true, ""};
  SynthSpec spec;
  spec.n = 200;
  spec.d = 20;
  spec.s_star = 5;
  Generated g = *Generate(spec, rng.Split(1));
  const int64_t s = 5;
  const int64_t m = 200;
  const double lambda = 0.5;
  Rng feature_rng = rng.Split(2);
  auto rows = *SampleSyntheticFeatures(SyntheticDistribution{}, spec.d, m, feature_rng);
  auto query = [&](const Dataset& data) -> absl::StatusOr<Eigen::VectorXd> {
    absl::StatusOr<LossModel> model = LossModel::Create(LossKind::kLinear, data, lambda);
    if (!model.ok()) return model.status();
    IghtConfig cfg;
    cfg.sparsity = s;
    cfg.step_size = SpectralStepSize(*model);
    cfg.max_iters = 3000;
    cfg.stop_tol = 1e-13;
    absl::StatusOr<FitTrace> fit = IghtFit(*model, cfg);
    if (!fit.ok()) return fit.status();
    return rows->Multiply(fit->final);
  };
  Rng trial_rng = rng.Split(3);
  const double observed = *EmpiricalSensitivityCheck(query, g.data, 10, trial_rng);
  LossModel model = *LossModel::Create(LossKind::kLinear, g.data, lambda);
  const ModelBounds bounds = *ComputeModelBounds(model, s);
  const double bound =
      *SensitivityBound({m, spec.n, s, 1.0 / 3.0, bounds.gamma, ConvexityMode::kRidge, lambda});
  r.passed = observed <= bound;
  r.detail = absl::StrCat("observed ", observed, " bound ", bound);
  return r;
}

}  // namespace

std::vector<CheckResult> RunSelfChecks(uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  Rng a = rng.Split(1), b = rng.Split(2), c = rng.Split(3), d = rng.Split(4), e = rng.Split(5);
  out.push_back(Thresholding(a));
  out.push_back(Gradients(b));
  out.push_back(Calibration(c));
  out.push_back(Recovery(d));
  out.push_back(Sensitivity(e));
  return out;
}

}  // namespace dpkt
