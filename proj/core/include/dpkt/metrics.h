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

#ifndef DPKT_METRICS_H_
#define DPKT_METRICS_H_

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"

namespace dpkt {

// ||est - truth||_2 / ||truth||_2. Fails on a zero `truth` or size mismatch.
absl::StatusOr<double> RelativeEstimationError(const ParamVector& est,
                                               const ParamVector& truth);

// 2|A ∩ B| / (|A| + |B|); 1 when both sets are empty.
double SupportF1(const SupportSet& est, const SupportSet& truth);

}  // namespace dpkt

#endif  // DPKT_METRICS_H_
