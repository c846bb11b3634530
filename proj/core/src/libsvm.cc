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

#include "dpkt/libsvm.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "string_compat.h"

namespace dpkt {
namespace {

absl::Status LineError(int64_t line, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("libsvm line ", line, ": ", what));
}

}  // namespace

absl::StatusOr<Dataset> ParseLibsvmText(std::string_view text_in,
                                        std::optional<int64_t> dim) {
  const absl::string_view text = ToAbsl(text_in);
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<double> labels;
  int64_t max_index = 0;
  int64_t line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty()) continue;
    const int64_t row = static_cast<int64_t>(labels.size());
    bool first = true;
    int64_t prev = 0;
    for (absl::string_view tok : absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty())) {
      if (first) {
        double label;
        if (!absl::SimpleAtod(tok, &label) || !std::isfinite(label)) {
          return LineError(line_no, absl::StrCat("bad label '", tok, "'"));
        }
        labels.push_back(label);
        first = false;
        continue;
      }
      const size_t colon = tok.find(':');
      if (colon == absl::string_view::npos) {
        return LineError(line_no, absl::StrCat("expected idx:val, got '", tok, "'"));
      }
      int64_t index;
      double value;
      if (!absl::SimpleAtoi(tok.substr(0, colon), &index) || index < 1) {
        return LineError(line_no, absl::StrCat("bad index in '", tok, "'"));
      }
      if (!absl::SimpleAtod(tok.substr(colon + 1), &value) || !std::isfinite(value)) {
        return LineError(line_no, absl::StrCat("bad value in '", tok, "'"));
      }
      if (index <= prev) {
        return LineError(line_no, absl::StrCat("indices not strictly ascending at '", tok, "'"));
      }
      if (dim.has_value() && index > *dim) {
        return LineError(line_no, absl::StrCat("index ", index, " exceeds dimension ", *dim));
      }
      prev = index;
      max_index = std::max(max_index, index);
      if (value != 0.0) triplets.emplace_back(row, index - 1, value);
    }
  }
  if (labels.empty()) return absl::InvalidArgumentError("libsvm input has no examples");
  const int64_t d = dim.value_or(std::max<int64_t>(max_index, 1));
  SparseMatrix x(static_cast<Eigen::Index>(labels.size()), d);
  x.setFromTriplets(triplets.begin(), triplets.end());
  x.makeCompressed();
  return Dataset::Create(DesignMatrix(std::move(x)),
                         Eigen::Map<const Eigen::VectorXd>(labels.data(), labels.size()));
}

absl::StatusOr<Dataset> ParseLibsvmFile(const std::string& path, std::optional<int64_t> dim) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << f.rdbuf();
  return ParseLibsvmText(buf.str(), dim);
}

}  // namespace dpkt
