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

#ifndef DPKT_DATASET_H_
#define DPKT_DATASET_H_

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "Eigen/Dense"
#include "Eigen/SparseCore"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpkt {

// Dense coefficient vector. Parameters are always dense; the support is
// computed on demand (see thresholding.h).
using ParamVector = Eigen::VectorXd;

using DenseMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Sorted, duplicate-free set of coordinate indices.
class SupportSet {
 public:
  SupportSet() = default;

  // Sorts `indices`; fails on duplicates, negatives, or indices >= dim.
  static absl::StatusOr<SupportSet> Create(std::vector<int64_t> indices,
                                           int64_t dim);
  // supp(v): indices of the nonzero entries of v.
  static SupportSet Of(const ParamVector& v);

  const std::vector<int64_t>& indices() const { return indices_; }
  int64_t size() const { return static_cast<int64_t>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int64_t i) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  explicit SupportSet(std::vector<int64_t> sorted) : indices_(std::move(sorted)) {}

  std::vector<int64_t> indices_;
};

struct SparseEntry {
  int64_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseFeatures = std::vector<SparseEntry>;
using FeatureVector = std::variant<ParamVector, SparseFeatures>;

// One example (x_i, y_i). Sparse indices are strictly ascending.
struct ExampleRow {
  FeatureVector features;
  double label = 0.0;
};

// Checks dimension, index ordering, and finiteness of a single row.
absl::Status ValidateRow(const ExampleRow& row, int64_t dim);

// Row-major design matrix stored either densely or sparsely.
class DesignMatrix {
 public:
  explicit DesignMatrix(DenseMatrix x) : storage_(std::move(x)) {}
  explicit DesignMatrix(SparseMatrix x);

  int64_t rows() const;
  int64_t cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(storage_); }
  const DenseMatrix* dense() const { return std::get_if<DenseMatrix>(&storage_); }
  const SparseMatrix* sparse() const { return std::get_if<SparseMatrix>(&storage_); }

  // X * theta.
  Eigen::VectorXd Multiply(const ParamVector& theta) const;
  // X^T * r.
  Eigen::VectorXd TransposeMultiply(const Eigen::VectorXd& r) const;

  double RowDot(int64_t i, const ParamVector& theta) const;
  double RowInfNorm(int64_t i) const;
  double RowL2Norm(int64_t i) const;
  // out += scale * x_i.
  void AddScaledRow(int64_t i, double scale, ParamVector* out) const;
  FeatureVector Row(int64_t i) const;

  // Maximum absolute entry (the l_inf bound K over all rows).
  double MaxAbs() const;
  double MaxRowL2Norm() const;
  bool AllFinite() const;

  DesignMatrix SelectRows(std::span<const int64_t> rows) const;
  DesignMatrix WithRow(int64_t i, const FeatureVector& features) const;

 private:
  std::variant<DenseMatrix, SparseMatrix> storage_;
};

// n examples sharing an immutable design matrix. Copies are cheap: the
// feature storage is shared, labels are copied.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(DesignMatrix x, Eigen::VectorXd labels);
  static absl::StatusOr<Dataset> Create(std::shared_ptr<const DesignMatrix> x,
                                        Eigen::VectorXd labels);
  // Builds a dense design when every row is dense, sparse otherwise.
  static absl::StatusOr<Dataset> FromRows(std::span<const ExampleRow> rows,
                                          int64_t dim);

  int64_t num_examples() const { return x_->rows(); }
  int64_t dim() const { return x_->cols(); }
  const DesignMatrix& features() const { return *x_; }
  const std::shared_ptr<const DesignMatrix>& shared_features() const { return x_; }
  const Eigen::VectorXd& labels() const { return labels_; }
  // K = max_i ||x_i||_inf, recomputed from the data at construction.
  double inf_norm_bound() const { return inf_norm_bound_; }

  ExampleRow Row(int64_t i) const;

  // Adjacent dataset: example i replaced by `row`.
  absl::StatusOr<Dataset> ReplaceExample(int64_t i, const ExampleRow& row) const;
  absl::StatusOr<Dataset> WithLabels(Eigen::VectorXd labels) const;
  Dataset Subset(std::span<const int64_t> rows) const;

 private:
  Dataset(std::shared_ptr<const DesignMatrix> x, Eigen::VectorXd labels,
          double k)
      : x_(std::move(x)), labels_(std::move(labels)), inf_norm_bound_(k) {}

  std::shared_ptr<const DesignMatrix> x_;
  Eigen::VectorXd labels_;
  double inf_norm_bound_ = 0.0;
};

}  // namespace dpkt

#endif  // DPKT_DATASET_H_
