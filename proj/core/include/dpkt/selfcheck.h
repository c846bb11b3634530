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

#ifndef DPKT_SELFCHECK_H_
#define DPKT_SELFCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace dpkt {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast invariant checks over the installed build: thresholding against brute
// force, gradients against finite differences, the noise calibration
// identity, exact recovery and the empirical sensitivity bound.
std::vector<CheckResult> RunSelfChecks(uint64_t seed);

}  // namespace dpkt

#endif  // DPKT_SELFCHECK_H_
