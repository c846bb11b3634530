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

#ifndef DPKT_LIBSVM_H_
#define DPKT_LIBSVM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpkt/dataset.h"

namespace dpkt {

// Parses "label idx:val idx:val ..." lines with 1-based, strictly ascending
// indices into a sparse dataset. Blank lines are skipped. The dimension is
// `dim` when given (indices beyond it are errors), else the largest index.
absl::StatusOr<Dataset> ParseLibsvmText(std::string_view text,
                                        std::optional<int64_t> dim = std::nullopt);
absl::StatusOr<Dataset> ParseLibsvmFile(const std::string& path,
                                        std::optional<int64_t> dim = std::nullopt);

}  // namespace dpkt

#endif  // DPKT_LIBSVM_H_
