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

#include "dpkt/metrics.h"

#include <algorithm>
#include <iterator>

namespace dpkt {

absl::StatusOr<double> RelativeEstimationError(const ParamVector& est,
                                               const ParamVector& truth) {
  if (est.size() != truth.size()) {
    return absl::InvalidArgumentError("dimension mismatch");
  }
  const double denom = truth.norm();
  if (denom == 0.0) {
    return absl::InvalidArgumentError("relative error against a zero vector");
  }
  return (est - truth).norm() / denom;
}

double SupportF1(const SupportSet& est, const SupportSet& truth) {
  if (est.empty() && truth.empty()) return 1.0;
  std::vector<int64_t> common;
  std::set_intersection(est.indices().begin(), est.indices().end(),
                        truth.indices().begin(), truth.indices().end(),
                        std::back_inserter(common));
  return 2.0 * static_cast<double>(common.size()) /
         static_cast<double>(est.size() + truth.size());
}

}  // namespace dpkt
