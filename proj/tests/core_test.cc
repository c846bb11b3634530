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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dpkt/dataset.h"
#include "dpkt/linalg.h"
#include "dpkt/metrics.h"
#include "dpkt/random.h"
#include "dpkt/thresholding.h"
#include "test_util.h"

namespace dpkt {
namespace {

using ::dpkt::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

ParamVector Vec(std::initializer_list<double> v) {
  ParamVector out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

std::vector<double> Std(const ParamVector& v) { return {v.data(), v.data() + v.size()}; }

TEST(HardThresholdTest, KeepsLargestMagnitudes) {
  ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(Vec({3, -1, 0, 5}), 2));
  EXPECT_THAT(Std(h), ElementsAre(3, 0, 0, 5));
}

TEST(HardThresholdTest, TieGoesToLowerIndex) {
  ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(Vec({-2, 2, 1}), 1));
  EXPECT_THAT(Std(h), ElementsAre(-2, 0, 0));
}

TEST(HardThresholdTest, FullSparsityIsIdentity) {
  const ParamVector v = Vec({0.5, -7, 0, 2, 2});
  ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(v, v.size()));
  EXPECT_EQ(Std(h), Std(v));
}

TEST(HardThresholdTest, ZeroSparsityZeroes) {
  ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(Vec({1, 2}), 0));
  EXPECT_THAT(Std(h), ElementsAre(0, 0));
}

TEST(HardThresholdTest, RejectsSparsityAboveDimension) {
  EXPECT_THAT(HardThreshold(Vec({1, 2}), 3), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(HardThreshold(Vec({1, 2}), -1), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HardThresholdTest, RejectsNonFiniteInput) {
  EXPECT_THAT(HardThreshold(Vec({1, std::numeric_limits<double>::quiet_NaN()}), 1),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HardThresholdTest, IdempotentAndSparse) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t d = rng.UniformInt(1, 40);
    const int64_t s = rng.UniformInt(0, d);
    ParamVector v(d);
    for (int64_t i = 0; i < d; ++i) v[i] = rng.UniformInt(-3, 3);  // many ties
    ASSERT_OK_AND_ASSIGN(ParamVector once, HardThreshold(v, s));
    ASSERT_OK_AND_ASSIGN(ParamVector twice, HardThreshold(once, s));
    EXPECT_EQ(Std(once), Std(twice));
    EXPECT_LE(CountNonZeros(once), s);
  }
}

// Brute force over every support of size s: H_s must reach the best s-term
// approximation error.
TEST(HardThresholdTest, MatchesBruteForceBestSTermApproximation) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = static_cast<int>(rng.UniformInt(1, 10));
    const int s = static_cast<int>(rng.UniformInt(0, d));
    ParamVector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.Uniform(-1, 1);
    ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(v, s));
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (__builtin_popcount(mask) != s) continue;
      double err = 0;
      for (int i = 0; i < d; ++i) err += (mask >> i & 1u) ? 0.0 : v[i] * v[i];
      best = std::min(best, err);
    }
    EXPECT_LE((v - h).squaredNorm(), best + 1e-15) << "d=" << d << " s=" << s;
  }
}

TEST(HardThresholdTest, InPlaceMatchesCopy) {
  Rng rng(5);
  std::vector<int64_t> scratch;
  for (int trial = 0; trial < 50; ++trial) {
    ParamVector v(25);
    for (int i = 0; i < 25; ++i) v[i] = rng.Normal(1.0);
    ASSERT_OK_AND_ASSIGN(ParamVector h, HardThreshold(v, 7));
    HardThresholdInPlace(&v, 7, &scratch);
    EXPECT_EQ(Std(v), Std(h));
  }
}

TEST(TopSupportTest, Examples) {
  ASSERT_OK_AND_ASSIGN(SupportSet a, TopSupport(Vec({0, 7, -9}), 1));
  EXPECT_THAT(a.indices(), ElementsAre(2));
  ASSERT_OK_AND_ASSIGN(SupportSet b, TopSupport(Vec({0, 0}), 1));
  EXPECT_THAT(b.indices(), IsEmpty());
  ASSERT_OK_AND_ASSIGN(SupportSet c, TopSupport(Vec({1, -1, 1}), 2));
  EXPECT_THAT(c.indices(), ElementsAre(0, 1));
  EXPECT_THAT(TopSupport(Vec({1}), 2), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SupportSetTest, SortsAndValidates) {
  ASSERT_OK_AND_ASSIGN(SupportSet s, SupportSet::Create({4, 1, 2}, 5));
  EXPECT_THAT(s.indices(), ElementsAre(1, 2, 4));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(3));
  EXPECT_THAT(SupportSet::Create({1, 1}, 5), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SupportSet::Create({5}, 5), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SupportSet::Create({-1}, 5), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(SupportSet::Of(Vec({0, 3, 0, -1})).indices(), ElementsAre(1, 3));
}

TEST(MetricsTest, RelativeEstimationError) {
  ASSERT_OK_AND_ASSIGN(double a, RelativeEstimationError(Vec({1, 0}), Vec({1, 0})));
  EXPECT_EQ(a, 0.0);
  ASSERT_OK_AND_ASSIGN(double b, RelativeEstimationError(Vec({0, 1}), Vec({1, 0})));
  EXPECT_NEAR(b, 1.41421356237309505, 1e-9);
  ASSERT_OK_AND_ASSIGN(double c, RelativeEstimationError(Vec({2, 0}), Vec({1, 0})));
  EXPECT_EQ(c, 1.0);
  EXPECT_THAT(RelativeEstimationError(Vec({1, 0}), Vec({0, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(RelativeEstimationError(Vec({1}), Vec({1, 0})),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MetricsTest, SupportF1) {
  auto set = [](std::vector<int64_t> v) { return *SupportSet::Create(std::move(v), 10); };
  EXPECT_EQ(SupportF1(set({1, 2}), set({1, 2})), 1.0);
  EXPECT_EQ(SupportF1(set({1}), set({2})), 0.0);
  EXPECT_EQ(SupportF1(set({1, 2, 3}), set({1})), 0.5);
  EXPECT_EQ(SupportF1(set({}), set({})), 1.0);
  EXPECT_EQ(SupportF1(set({}), set({3})), 0.0);
}

TEST(RngTest, SameSeedSameSequence) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.Normal(1.0), b.Normal(1.0));
    EXPECT_EQ(a.Uniform(-1, 1), b.Uniform(-1, 1));
    EXPECT_EQ(a.UniformInt(0, 9), b.UniformInt(0, 9));
  }
}

TEST(RngTest, SplitStreamsAreIndependentOfParentUse) {
  Rng a(9);
  Rng child_before = a.Split(Stream::kDesign);
  for (int i = 0; i < 10; ++i) a.Normal(1.0);
  Rng child_after = a.Split(Stream::kDesign);
  EXPECT_EQ(child_before.Normal(1.0), child_after.Normal(1.0));
  EXPECT_NE(a.Split(Stream::kDesign).seed(), a.Split(Stream::kSupport).seed());
}

TEST(RngTest, UniformOpenExcludesEndpoints) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.UniformOpen(-1, 1);
    ASSERT_GT(u, -1.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(DatasetTest, DenseAndSparseAgree) {
  DenseMatrix x(3, 4);
  x << 1, 0, -2, 0,  //
      0, 0, 0, 3,    //
      0.5, 1, 0, 0;
  SparseMatrix sx = x.sparseView();
  const DesignMatrix dense(x), sparse(sx);
  const ParamVector theta = Vec({1, 2, 3, 4});
  const Eigen::VectorXd r = Eigen::Vector3d(1, -1, 2);
  EXPECT_EQ(Std(dense.Multiply(theta)), Std(sparse.Multiply(theta)));
  EXPECT_EQ(Std(dense.TransposeMultiply(r)), Std(sparse.TransposeMultiply(r)));
  EXPECT_EQ(dense.MaxAbs(), 3.0);
  EXPECT_EQ(sparse.MaxAbs(), 3.0);
  EXPECT_EQ(dense.MaxRowL2Norm(), 3.0);
  EXPECT_DOUBLE_EQ(sparse.RowL2Norm(0), std::sqrt(5.0));
  EXPECT_EQ(sparse.RowInfNorm(2), 1.0);
}

TEST(DatasetTest, InfNormBoundIsRecomputed) {
  std::vector<ExampleRow> rows = {
      {SparseFeatures{{0, 0.5}, {3, -4.0}}, 1.0},
      {SparseFeatures{{1, 2.0}}, 0.0},
  };
  ASSERT_OK_AND_ASSIGN(Dataset data, Dataset::FromRows(rows, 5));
  EXPECT_TRUE(data.features().is_sparse());
  EXPECT_EQ(data.inf_norm_bound(), 4.0);
  EXPECT_EQ(data.dim(), 5);
  ASSERT_OK_AND_ASSIGN(Dataset replaced,
                       data.ReplaceExample(0, {SparseFeatures{{2, 1.0}}, 1.0}));
  EXPECT_EQ(replaced.inf_norm_bound(), 2.0);
  EXPECT_EQ(data.inf_norm_bound(), 4.0);  // original untouched
}

TEST(DatasetTest, RowValidation) {
  EXPECT_THAT(ValidateRow({SparseFeatures{{2, 1.0}, {1, 1.0}}, 0.0}, 4),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ValidateRow({SparseFeatures{{4, 1.0}}, 0.0}, 4),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ValidateRow({Vec({1, std::nan("")}), 0.0}, 2),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ValidateRow({Vec({1, 2, 3}), 0.0}, 2),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_OK(ValidateRow({Vec({1, 2}), 0.0}, 2));
}

TEST(DatasetTest, LabelCountMustMatch) {
  DenseMatrix x = DenseMatrix::Ones(3, 2);
  EXPECT_THAT(Dataset::Create(DesignMatrix(x), Eigen::VectorXd::Zero(2)),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(LinalgTest, TopEigenvalueOfDiagonal) {
  const Eigen::Vector3d diag(0.5, 3.0, 1.0);
  auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return diag.cwiseProduct(v);
  };
  EXPECT_NEAR(TopEigenvalue(apply, 3), 3.0, 1e-6 * 3.0);
  auto zero = [](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return Eigen::VectorXd::Zero(v.size());
  };
  EXPECT_EQ(TopEigenvalue(zero, 3), 0.0);
}

TEST(LinalgTest, GramSpectralNormMatchesEigenSolver) {
  Rng rng(8);
  DenseMatrix x(40, 6);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 6; ++j) x(i, j) = rng.Uniform(-1, 1);
  const Eigen::MatrixXd gram = x.transpose() * x / 40.0;
  const double exact = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().maxCoeff();
  EXPECT_NEAR(GramSpectralNorm(DesignMatrix(x)), exact, 1e-5 * exact);
}

}  // namespace
}  // namespace dpkt
