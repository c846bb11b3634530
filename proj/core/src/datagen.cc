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

#include "dpkt/datagen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpkt/losses.h"
#include "dpkt/status_macros.h"
#include "string_compat.h"

namespace dpkt {

std::string_view ThetaScaleName(ThetaScale scale) {
  return scale == ThetaScale::kRaw ? "raw" : "unit";
}

absl::StatusOr<ThetaScale> ParseThetaScale(std::string_view name) {
  if (name == "raw") return ThetaScale::kRaw;
  if (name == "unit") return ThetaScale::kUnitNorm;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown theta scale '", ToAbsl(name), "' (expected raw or unit)"));
}

std::string_view LabelSignName(LabelSign sign) {
  return sign == LabelSign::kModel ? "model" : "flipped";
}

absl::StatusOr<LabelSign> ParseLabelSign(std::string_view name) {
  if (name == "model") return LabelSign::kModel;
  if (name == "flipped") return LabelSign::kFlipped;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown label sign '", ToAbsl(name), "' (expected model or flipped)"));
}

absl::Status ValidateSynthSpec(const SynthSpec& spec) {
  if (spec.n < 1 || spec.d < 1) return absl::InvalidArgumentError("n and d must be >= 1");
  if (spec.s_star < 0) return absl::InvalidArgumentError("s* must be >= 0");
  if (spec.s_star > spec.d) {
    return absl::InvalidArgumentError(
        absl::StrCat("s* = ", spec.s_star, " exceeds d = ", spec.d));
  }
  if (const auto* lin = std::get_if<LinearNoise>(&spec.task)) {
    if (!(lin->nu2 >= 0.0) || !std::isfinite(lin->nu2)) {
      return absl::InvalidArgumentError("nu2 must be finite and >= 0");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Generated> Generate(const SynthSpec& spec, const Rng& rng) {
  DPKT_RETURN_IF_ERROR(ValidateSynthSpec(spec));
  Rng design = rng.Split(Stream::kDesign);
  Rng support = rng.Split(Stream::kSupport);
  Rng values = rng.Split(Stream::kValues);
  Rng noise = rng.Split(Stream::kLabelNoise);

  DenseMatrix x(spec.n, spec.d);
  for (int64_t i = 0; i < spec.n; ++i)
    for (int64_t j = 0; j < spec.d; ++j) x(i, j) = design.UniformOpen(-1.0, 1.0);

  // Partial Fisher-Yates: the first s* slots are a uniform s*-subset.
  std::vector<int64_t> perm(static_cast<size_t>(spec.d));
  std::iota(perm.begin(), perm.end(), 0);
  for (int64_t k = 0; k < spec.s_star; ++k) {
    std::swap(perm[k], perm[support.UniformInt(k, spec.d - 1)]);
  }
  std::sort(perm.begin(), perm.begin() + spec.s_star);

  ParamVector theta = ParamVector::Zero(spec.d);
  for (int64_t k = 0; k < spec.s_star; ++k) {
    double v = 0.0;
    while (v == 0.0) v = values.UniformOpen(-1.0, 1.0);
    theta[perm[k]] = v;
  }
  if (spec.theta_scale == ThetaScale::kUnitNorm && spec.s_star > 0) theta /= theta.norm();

  Eigen::VectorXd z = x * theta;
  Eigen::VectorXd y(spec.n);
  if (const auto* lin = std::get_if<LinearNoise>(&spec.task)) {
    const double sd = std::sqrt(lin->nu2);
    for (int64_t i = 0; i < spec.n; ++i) y[i] = sd > 0.0 ? z[i] + noise.Normal(sd) : z[i];
  } else {
    const bool flipped = std::get<LogisticLabels>(spec.task).sign == LabelSign::kFlipped;
    for (int64_t i = 0; i < spec.n; ++i) {
      const double p = Sigmoid(flipped ? -z[i] : z[i]);
      y[i] = noise.Bernoulli(p) ? 1.0 : 0.0;
    }
  }
  DPKT_ASSIGN_OR_RETURN(Dataset data, Dataset::Create(DesignMatrix(std::move(x)), std::move(y)));
  return Generated{std::move(data), std::move(theta)};
}

std::string FormatLibsvm(const Dataset& data) {
  std::string out;
  char buf[64];
  for (int64_t i = 0; i < data.num_examples(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", data.labels()[i]);
    out += buf;
    const FeatureVector row = data.features().Row(i);
    auto emit = [&](int64_t j, double v) {
      if (v == 0.0) return;
      std::snprintf(buf, sizeof(buf), " %lld:%.17g", static_cast<long long>(j + 1), v);
      out += buf;
    };
    if (const auto* dense = std::get_if<ParamVector>(&row)) {
      for (int64_t j = 0; j < dense->size(); ++j) emit(j, (*dense)[j]);
    } else {
      for (const SparseEntry& e : std::get<SparseFeatures>(row)) emit(e.index, e.value);
    }
    out += '\n';
  }
  return out;
}

absl::Status WriteLibsvm(const Dataset& data, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return absl::UnavailableError(absl::StrCat("cannot open ", path, " for writing"));
  f << FormatLibsvm(data);
  if (!f.good()) return absl::DataLossError(absl::StrCat("write to ", path, " failed"));
  return absl::OkStatus();
}

nlohmann::json ThetaToJson(const ParamVector& theta) {
  const SupportSet support = SupportSet::Of(theta);
  std::vector<double> nonzero;
  for (int64_t i : support.indices()) nonzero.push_back(theta[i]);
  return {{"dim", theta.size()}, {"support", support.indices()}, {"values", nonzero}};
}

absl::StatusOr<ParamVector> ThetaFromJson(const nlohmann::json& j) {
  try {
    const int64_t dim = j.at("dim").get<int64_t>();
    const auto idx = j.at("support").get<std::vector<int64_t>>();
    const auto vals = j.at("values").get<std::vector<double>>();
    if (dim < 1 || idx.size() != vals.size()) {
      return absl::InvalidArgumentError("theta JSON: bad dim or support/values length");
    }
    ParamVector theta = ParamVector::Zero(dim);
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= dim) {
        return absl::InvalidArgumentError("theta JSON: support index out of range");
      }
      theta[idx[k]] = vals[k];
    }
    return theta;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("theta JSON: ", e.what()));
  }
}

}  // namespace dpkt
