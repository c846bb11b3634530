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

#ifndef DPKT_LINALG_H_
#define DPKT_LINALG_H_

#include <functional>

#include "Eigen/Dense"
#include "dpkt/dataset.h"

namespace dpkt {

struct PowerIterationOptions {
  double relative_tolerance = 1e-6;
  int max_iters = 5000;
};

// Largest eigenvalue of a symmetric positive semidefinite operator given as a
// matrix-vector product. Returns 0 for the zero operator.
double TopEigenvalue(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                     int64_t dim, PowerIterationOptions options = {});

// Largest eigenvalue of X^T X / n.
double GramSpectralNorm(const DesignMatrix& x, PowerIterationOptions options = {});

// Largest eigenvalue of the sample covariance (1/m) sum (x_i - mean)(x_i - mean)^T.
double CovarianceSpectralNorm(const DesignMatrix& x,
                              PowerIterationOptions options = {});

}  // namespace dpkt

#endif  // DPKT_LINALG_H_
