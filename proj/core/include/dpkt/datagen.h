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

#ifndef DPKT_DATAGEN_H_
#define DPKT_DATAGEN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"
#include "dpkt/random.h"
#include "nlohmann/json.hpp"

namespace dpkt {

// y = <x, theta*> + N(0, nu2).
struct LinearNoise {
  double nu2 = 0.1;
};

// kModel: P(y = 1 | x) = sigmoid(<x, theta*>), the model the logistic loss
// fits. kFlipped: P(y = 1 | x) = 1 / (1 + exp(<x, theta*>)).
enum class LabelSign { kModel, kFlipped };

struct LogisticLabels {
  LabelSign sign = LabelSign::kModel;
};

// kRaw keeps the U(-1,1) draws on the support as they are; kUnitNorm (the
// default) rescales theta* to unit l2 norm.
enum class ThetaScale { kRaw, kUnitNorm };

std::string_view ThetaScaleName(ThetaScale scale);
absl::StatusOr<ThetaScale> ParseThetaScale(std::string_view name);
std::string_view LabelSignName(LabelSign sign);
absl::StatusOr<LabelSign> ParseLabelSign(std::string_view name);

struct SynthSpec {
  int64_t n = 800;
  int64_t d = 1000;
  int64_t s_star = 10;
  std::variant<LinearNoise, LogisticLabels> task = LinearNoise{};
  ThetaScale theta_scale = ThetaScale::kUnitNorm;
};

absl::Status ValidateSynthSpec(const SynthSpec& spec);

struct Generated {
  Dataset data;
  ParamVector theta_star;
};

// Design entries i.i.d. U(-1,1), support uniform over s*-subsets, nonzero
// values U(-1,1). Design, support, values and label noise use disjoint
// streams of `rng`, so changing nu2 alone leaves X untouched.
absl::StatusOr<Generated> Generate(const SynthSpec& spec, const Rng& rng);

// One "label idx:val ..." line per example, 1-based indices, zeros omitted,
// values printed with 17 significant digits.
std::string FormatLibsvm(const Dataset& data);
absl::Status WriteLibsvm(const Dataset& data, const std::string& path);

nlohmann::json ThetaToJson(const ParamVector& theta);
absl::StatusOr<ParamVector> ThetaFromJson(const nlohmann::json& j);

}  // namespace dpkt

#endif  // DPKT_DATAGEN_H_
