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

#include "dpkt/linalg.h"

#include <cmath>

namespace dpkt {

double TopEigenvalue(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
    int64_t dim, PowerIterationOptions options) {
  if (dim == 0) return 0.0;
  // Deterministic start with no symmetry across coordinates.
  Eigen::VectorXd v(dim);
  for (int64_t i = 0; i < dim; ++i) v[i] = 1.0 + 1.0 / static_cast<double>(i + 2);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < options.max_iters; ++it) {
    Eigen::VectorXd w = apply(v);
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= options.relative_tolerance * std::abs(next)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

double GramSpectralNorm(const DesignMatrix& x, PowerIterationOptions options) {
  const double n = static_cast<double>(x.rows());
  return TopEigenvalue(
      [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return x.TransposeMultiply(x.Multiply(v)) / n;
      },
      x.cols(), options);
}

double CovarianceSpectralNorm(const DesignMatrix& x, PowerIterationOptions options) {
  const double m = static_cast<double>(x.rows());
  const Eigen::VectorXd mean = x.TransposeMultiply(Eigen::VectorXd::Ones(x.rows())) / m;
  return TopEigenvalue(
      [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Eigen::VectorXd centered = x.Multiply(v).array() - mean.dot(v);
        return x.TransposeMultiply(centered) / m;
      },
      x.cols(), options);
}

}  // namespace dpkt
