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

#include "dpkt/thresholding.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dpkt {
namespace {

absl::Status CheckArgs(const ParamVector& v, int64_t s) {
  if (s < 0 || s > v.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sparsity level ", s, " outside [0, ", v.size(), "]"));
  }
  if (!v.allFinite()) {
    return absl::InvalidArgumentError("cannot threshold a non-finite vector");
  }
  return absl::OkStatus();
}

// Orders indices by decreasing magnitude, lower index first on ties.
void SelectTop(const ParamVector& v, int64_t s, std::vector<int64_t>* idx) {
  idx->resize(static_cast<size_t>(v.size()));
  std::iota(idx->begin(), idx->end(), int64_t{0});
  if (s == 0 || s == v.size()) return;
  auto before = [&v](int64_t a, int64_t b) {
    const double ma = std::abs(v[a]);
    const double mb = std::abs(v[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::nth_element(idx->begin(), idx->begin() + (s - 1), idx->end(), before);
}

}  // namespace

void HardThresholdInPlace(ParamVector* v, int64_t s,
                          std::vector<int64_t>* scratch) {
  const int64_t d = v->size();
  if (s >= d) return;
  SelectTop(*v, s, scratch);
  for (int64_t k = s; k < d; ++k) (*v)[(*scratch)[k]] = 0.0;
}

absl::StatusOr<ParamVector> HardThreshold(const ParamVector& v, int64_t s) {
  if (absl::Status st = CheckArgs(v, s); !st.ok()) return st;
  ParamVector out = v;
  std::vector<int64_t> scratch;
  HardThresholdInPlace(&out, s, &scratch);
  return out;
}

absl::StatusOr<SupportSet> TopSupport(const ParamVector& v, int64_t s) {
  if (absl::Status st = CheckArgs(v, s); !st.ok()) return st;
  std::vector<int64_t> idx;
  SelectTop(v, s, &idx);
  std::vector<int64_t> kept;
  for (int64_t k = 0; k < s; ++k) {
    if (v[idx[k]] != 0.0) kept.push_back(idx[k]);
  }
  return SupportSet::Create(std::move(kept), v.size());
}

int64_t CountNonZeros(const ParamVector& v) {
  return static_cast<int64_t>((v.array() != 0.0).count());
}

}  // namespace dpkt
