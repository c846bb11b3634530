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

#include "dpkt/dataset.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"

namespace dpkt {
namespace {

template <typename... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

SparseMatrix BuildSparse(int64_t rows, int64_t cols,
                         std::vector<Eigen::Triplet<double>>& triplets) {
  SparseMatrix x(rows, cols);
  x.setFromTriplets(triplets.begin(), triplets.end());
  x.makeCompressed();
  return x;
}

}  // namespace

absl::StatusOr<SupportSet> SupportSet::Create(std::vector<int64_t> indices,
                                              int64_t dim) {
  std::sort(indices.begin(), indices.end());
  for (size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("support index ", indices[k], " outside [0, ", dim, ")"));
    }
    if (k > 0 && indices[k] == indices[k - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate support index ", indices[k]));
    }
  }
  return SupportSet(std::move(indices));
}

SupportSet SupportSet::Of(const ParamVector& v) {
  std::vector<int64_t> idx;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) idx.push_back(i);
  }
  return SupportSet(std::move(idx));
}

bool SupportSet::contains(int64_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

absl::Status ValidateRow(const ExampleRow& row, int64_t dim) {
  if (!std::isfinite(row.label)) {
    return absl::InvalidArgumentError("non-finite label");
  }
  return std::visit(
      Overloaded{
          [&](const ParamVector& x) -> absl::Status {
            if (x.size() != dim) {
              return absl::InvalidArgumentError(absl::StrCat(
                  "dense row has dimension ", x.size(), ", expected ", dim));
            }
            if (!x.allFinite()) {
              return absl::InvalidArgumentError("non-finite feature value");
            }
            return absl::OkStatus();
          },
          [&](const SparseFeatures& x) -> absl::Status {
            int64_t prev = -1;
            for (const SparseEntry& e : x) {
              if (e.index <= prev) {
                return absl::InvalidArgumentError(
                    "sparse indices must be strictly ascending");
              }
              if (e.index >= dim) {
                return absl::InvalidArgumentError(absl::StrCat(
                    "sparse index ", e.index, " >= dimension ", dim));
              }
              if (!std::isfinite(e.value)) {
                return absl::InvalidArgumentError("non-finite feature value");
              }
              prev = e.index;
            }
            return absl::OkStatus();
          }},
      row.features);
}

DesignMatrix::DesignMatrix(SparseMatrix x) : storage_(std::move(x)) {
  std::get<SparseMatrix>(storage_).makeCompressed();
}

int64_t DesignMatrix::rows() const {
  return std::visit([](const auto& x) -> int64_t { return x.rows(); }, storage_);
}

int64_t DesignMatrix::cols() const {
  return std::visit([](const auto& x) -> int64_t { return x.cols(); }, storage_);
}

Eigen::VectorXd DesignMatrix::Multiply(const ParamVector& theta) const {
  return std::visit([&](const auto& x) -> Eigen::VectorXd { return x * theta; },
                    storage_);
}

Eigen::VectorXd DesignMatrix::TransposeMultiply(const Eigen::VectorXd& r) const {
  return std::visit(
      [&](const auto& x) -> Eigen::VectorXd { return x.transpose() * r; },
      storage_);
}

double DesignMatrix::RowDot(int64_t i, const ParamVector& theta) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& x) { return x.row(i).dot(theta); },
                 [&](const SparseMatrix& x) {
                   double acc = 0.0;
                   for (SparseMatrix::InnerIterator it(x, i); it; ++it) {
                     acc += it.value() * theta[it.col()];
                   }
                   return acc;
                 }},
      storage_);
}

double DesignMatrix::RowInfNorm(int64_t i) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& x) {
                   return x.cols() == 0 ? 0.0 : x.row(i).cwiseAbs().maxCoeff();
                 },
                 [&](const SparseMatrix& x) {
                   double m = 0.0;
                   for (SparseMatrix::InnerIterator it(x, i); it; ++it) {
                     m = std::max(m, std::abs(it.value()));
                   }
                   return m;
                 }},
      storage_);
}

double DesignMatrix::RowL2Norm(int64_t i) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& x) { return x.row(i).norm(); },
                 [&](const SparseMatrix& x) { return x.row(i).norm(); }},
      storage_);
}

void DesignMatrix::AddScaledRow(int64_t i, double scale, ParamVector* out) const {
  std::visit(Overloaded{[&](const DenseMatrix& x) {
                          *out += scale * x.row(i).transpose();
                        },
                        [&](const SparseMatrix& x) {
                          for (SparseMatrix::InnerIterator it(x, i); it; ++it) {
                            (*out)[it.col()] += scale * it.value();
                          }
                        }},
             storage_);
}

FeatureVector DesignMatrix::Row(int64_t i) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& x) -> FeatureVector {
                   return ParamVector(x.row(i).transpose());
                 },
                 [&](const SparseMatrix& x) -> FeatureVector {
                   SparseFeatures row;
                   for (SparseMatrix::InnerIterator it(x, i); it; ++it) {
                     row.push_back({it.col(), it.value()});
                   }
                   return row;
                 }},
      storage_);
}

double DesignMatrix::MaxAbs() const {
  return std::visit(
      Overloaded{[](const DenseMatrix& x) {
                   return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
                 },
                 [](const SparseMatrix& x) {
                   double m = 0.0;
                   for (Eigen::Index k = 0; k < x.nonZeros(); ++k) {
                     m = std::max(m, std::abs(x.valuePtr()[k]));
                   }
                   return m;
                 }},
      storage_);
}

double DesignMatrix::MaxRowL2Norm() const {
  double m = 0.0;
  for (int64_t i = 0; i < rows(); ++i) m = std::max(m, RowL2Norm(i));
  return m;
}

bool DesignMatrix::AllFinite() const {
  return std::visit(
      Overloaded{[](const DenseMatrix& x) { return x.allFinite(); },
                 [](const SparseMatrix& x) {
                   for (Eigen::Index k = 0; k < x.nonZeros(); ++k) {
                     if (!std::isfinite(x.valuePtr()[k])) return false;
                   }
                   return true;
                 }},
      storage_);
}

DesignMatrix DesignMatrix::SelectRows(std::span<const int64_t> rows) const {
  return std::visit(
      Overloaded{[&](const DenseMatrix& x) {
                   DenseMatrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
                   for (size_t k = 0; k < rows.size(); ++k) out.row(k) = x.row(rows[k]);
                   return DesignMatrix(std::move(out));
                 },
                 [&](const SparseMatrix& x) {
                   std::vector<Eigen::Triplet<double>> triplets;
                   for (size_t k = 0; k < rows.size(); ++k) {
                     for (SparseMatrix::InnerIterator it(x, rows[k]); it; ++it) {
                       triplets.emplace_back(static_cast<int>(k), it.col(), it.value());
                     }
                   }
                   return DesignMatrix(BuildSparse(
                       static_cast<int64_t>(rows.size()), x.cols(), triplets));
                 }},
      storage_);
}

DesignMatrix DesignMatrix::WithRow(int64_t i, const FeatureVector& features) const {
  const int64_t d = cols();
  if (const DenseMatrix* x = dense()) {
    DenseMatrix out = *x;
    std::visit(Overloaded{[&](const ParamVector& f) { out.row(i) = f.transpose(); },
                          [&](const SparseFeatures& f) {
                            out.row(i).setZero();
                            for (const SparseEntry& e : f) out(i, e.index) = e.value;
                          }},
               features);
    return DesignMatrix(std::move(out));
  }
  const SparseMatrix& x = *sparse();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(x.nonZeros()) + static_cast<size_t>(d));
  for (int64_t r = 0; r < x.rows(); ++r) {
    if (r == i) continue;
    for (SparseMatrix::InnerIterator it(x, r); it; ++it) {
      triplets.emplace_back(static_cast<int>(r), it.col(), it.value());
    }
  }
  std::visit(Overloaded{[&](const ParamVector& f) {
                          for (int64_t j = 0; j < d; ++j) {
                            if (f[j] != 0.0) triplets.emplace_back(i, j, f[j]);
                          }
                        },
                        [&](const SparseFeatures& f) {
                          for (const SparseEntry& e : f) {
                            triplets.emplace_back(i, e.index, e.value);
                          }
                        }},
             features);
  return DesignMatrix(BuildSparse(x.rows(), d, triplets));
}

absl::StatusOr<Dataset> Dataset::Create(DesignMatrix x, Eigen::VectorXd labels) {
  return Create(std::make_shared<const DesignMatrix>(std::move(x)),
                std::move(labels));
}

absl::StatusOr<Dataset> Dataset::Create(std::shared_ptr<const DesignMatrix> x,
                                        Eigen::VectorXd labels) {
  if (x == nullptr) return absl::InvalidArgumentError("null design matrix");
  if (labels.size() != x->rows()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "label count ", labels.size(), " != row count ", x->rows()));
  }
  if (!labels.allFinite() || !x->AllFinite()) {
    return absl::InvalidArgumentError("dataset contains non-finite values");
  }
  const double k = x->MaxAbs();
  return Dataset(std::move(x), std::move(labels), k);
}

absl::StatusOr<Dataset> Dataset::FromRows(std::span<const ExampleRow> rows,
                                          int64_t dim) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  bool all_dense = !rows.empty();
  for (const ExampleRow& row : rows) {
    if (absl::Status s = ValidateRow(row, dim); !s.ok()) return s;
    all_dense = all_dense && std::holds_alternative<ParamVector>(row.features);
  }
  const int64_t n = static_cast<int64_t>(rows.size());
  Eigen::VectorXd labels(n);
  for (int64_t i = 0; i < n; ++i) labels[i] = rows[i].label;
  if (all_dense) {
    DenseMatrix x(n, dim);
    for (int64_t i = 0; i < n; ++i) {
      x.row(i) = std::get<ParamVector>(rows[i].features).transpose();
    }
    return Create(DesignMatrix(std::move(x)), std::move(labels));
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int64_t i = 0; i < n; ++i) {
    std::visit(Overloaded{[&](const ParamVector& f) {
                            for (int64_t j = 0; j < dim; ++j) {
                              if (f[j] != 0.0) triplets.emplace_back(i, j, f[j]);
                            }
                          },
                          [&](const SparseFeatures& f) {
                            for (const SparseEntry& e : f) {
                              triplets.emplace_back(i, e.index, e.value);
                            }
                          }},
               rows[i].features);
  }
  return Create(DesignMatrix(BuildSparse(n, dim, triplets)), std::move(labels));
}

ExampleRow Dataset::Row(int64_t i) const {
  return ExampleRow{x_->Row(i), labels_[i]};
}

absl::StatusOr<Dataset> Dataset::ReplaceExample(int64_t i,
                                                const ExampleRow& row) const {
  if (i < 0 || i >= num_examples()) {
    return absl::OutOfRangeError(absl::StrCat("example index ", i, " out of range"));
  }
  if (absl::Status s = ValidateRow(row, dim()); !s.ok()) return s;
  Eigen::VectorXd labels = labels_;
  labels[i] = row.label;
  return Create(x_->WithRow(i, row.features), std::move(labels));
}

absl::StatusOr<Dataset> Dataset::WithLabels(Eigen::VectorXd labels) const {
  return Create(x_, std::move(labels));
}

Dataset Dataset::Subset(std::span<const int64_t> rows) const {
  Eigen::VectorXd labels(static_cast<Eigen::Index>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) labels[k] = labels_[rows[k]];
  auto x = std::make_shared<const DesignMatrix>(x_->SelectRows(rows));
  const double k = x->MaxAbs();
  return Dataset(std::move(x), std::move(labels), k);
}

}  // namespace dpkt
