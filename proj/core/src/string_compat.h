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

#ifndef DPKT_SRC_STRING_COMPAT_H_
#define DPKT_SRC_STRING_COMPAT_H_

#include <string_view>

#include "absl/strings/string_view.h"

namespace dpkt {

// Some abseil builds ship their own string_view type instead of aliasing the
// standard one. These convert at the boundary either way.
inline absl::string_view ToAbsl(std::string_view s) { return {s.data(), s.size()}; }
inline std::string_view ToStd(absl::string_view s) { return {s.data(), s.size()}; }

}  // namespace dpkt

#endif  // DPKT_SRC_STRING_COMPAT_H_
