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

#ifndef DPKT_STATUS_MACROS_H_
#define DPKT_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPKT_RETURN_IF_ERROR(expr)                \
  do {                                            \
    const ::absl::Status dpkt_status_ = (expr);   \
    if (!dpkt_status_.ok()) return dpkt_status_;  \
  } while (false)

#define DPKT_STATUS_CONCAT_INNER_(a, b) a##b
#define DPKT_STATUS_CONCAT_(a, b) DPKT_STATUS_CONCAT_INNER_(a, b)

#define DPKT_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                \
  if (!statusor.ok()) return statusor.status();           \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns the value to
// `lhs` or returns the error status from the enclosing function.
#define DPKT_ASSIGN_OR_RETURN(lhs, rexpr) \
  DPKT_ASSIGN_OR_RETURN_IMPL_(            \
      DPKT_STATUS_CONCAT_(dpkt_statusor_, __LINE__), lhs, rexpr)

#endif  // DPKT_STATUS_MACROS_H_
