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

#ifndef DPKT_THRESHOLDING_H_
#define DPKT_THRESHOLDING_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"

namespace dpkt {

// H_s(v): keeps the s largest-magnitude entries of v and zeroes the rest.
// Equal magnitudes are resolved toward the lower index, so the result is a
// deterministic function of v. Fails when s > dim or v has non-finite entries.
absl::StatusOr<ParamVector> HardThreshold(const ParamVector& v, int64_t s);

// supp(H_s(v)) restricted to nonzero entries.
absl::StatusOr<SupportSet> TopSupport(const ParamVector& v, int64_t s);

// In-place variant used on solver hot paths. Requires 0 <= s <= v->size() and
// finite entries; `scratch` is reused across calls to avoid reallocation.
void HardThresholdInPlace(ParamVector* v, int64_t s,
                          std::vector<int64_t>* scratch);

int64_t CountNonZeros(const ParamVector& v);

}  // namespace dpkt

#endif  // DPKT_THRESHOLDING_H_
