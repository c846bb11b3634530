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

#include <cmath>
#include <limits>

#include "dpkt/datagen.h"
#include "dpkt/losses.h"
#include "dpkt/random.h"
#include "test_util.h"

namespace dpkt {
namespace {

using ::dpkt::testing::StatusIs;

Dataset Tiny(Eigen::VectorXd labels) {
  DenseMatrix x(2, 2);
  x << 1, 0,  //
      0, 1;
  return *Dataset::Create(DesignMatrix(x), std::move(labels));
}

Generated Synthetic(bool logistic, uint64_t seed, int64_t n = 60, int64_t d = 12) {
  SynthSpec spec;
  spec.n = n;
  spec.d = d;
  spec.s_star = 3;
  if (logistic) spec.task = LogisticLabels{};
  return *Generate(spec, Rng(seed));
}

ParamVector Random(int64_t d, Rng& rng) {
  ParamVector v(d);
  for (int64_t i = 0; i < d; ++i) v[i] = rng.Uniform(-1, 1);
  return v;
}

TEST(LossNamesTest, RoundTrip) {
  EXPECT_EQ(*ParseLossKind("linear"), LossKind::kLinear);
  EXPECT_EQ(*ParseLossKind("logistic"), LossKind::kLogistic);
  EXPECT_EQ(LossKindName(LossKind::kLogistic), "logistic");
  EXPECT_THAT(ParseLossKind("hinge"), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(LinearLossTest, Examples) {
  ASSERT_OK_AND_ASSIGN(LossModel m,
                       LossModel::Create(LossKind::kLinear, Tiny(Eigen::Vector2d(1, 2)), 0.0));
  EXPECT_DOUBLE_EQ(*m.Value(ParamVector::Zero(2)), 1.25);  // (1 + 4) / (2 * 2)
  ASSERT_OK_AND_ASSIGN(ParamVector g, m.Gradient(ParamVector::Zero(2)));
  EXPECT_DOUBLE_EQ(g[0], -0.5);
  EXPECT_DOUBLE_EQ(g[1], -1.0);
  EXPECT_DOUBLE_EQ(*m.Value(Eigen::Vector2d(1, 2)), 0.0);
}

TEST(LinearLossTest, RidgeAddsHalfSquaredNorm) {
  ASSERT_OK_AND_ASSIGN(LossModel plain,
                       LossModel::Create(LossKind::kLinear, Tiny(Eigen::Vector2d(1, 2)), 0.0));
  ASSERT_OK_AND_ASSIGN(LossModel ridge,
                       LossModel::Create(LossKind::kLinear, Tiny(Eigen::Vector2d(1, 2)), 0.5));
  const ParamVector theta = Eigen::Vector2d(0.3, -1.0);
  EXPECT_DOUBLE_EQ(*ridge.Value(theta), *plain.Value(theta) + 0.25 * theta.squaredNorm());
  const ParamVector diff = *ridge.Gradient(theta) - *plain.Gradient(theta);
  EXPECT_NEAR((diff - 0.5 * theta).norm(), 0.0, 1e-15);
}

TEST(LogisticLossTest, Examples) {
  ASSERT_OK_AND_ASSIGN(LossModel m,
                       LossModel::Create(LossKind::kLogistic, Tiny(Eigen::Vector2d(1, 0)), 0.0));
  EXPECT_DOUBLE_EQ(*m.Value(ParamVector::Zero(2)), std::log(2.0));
  ASSERT_OK_AND_ASSIGN(ParamVector g, m.Gradient(ParamVector::Zero(2)));
  EXPECT_DOUBLE_EQ(g[0], -0.25);
  EXPECT_DOUBLE_EQ(g[1], 0.25);
}

TEST(LogisticLossTest, LargeMarginsStayFinite) {
  ASSERT_OK_AND_ASSIGN(LossModel m,
                       LossModel::Create(LossKind::kLogistic, Tiny(Eigen::Vector2d(1, 0)), 0.0));
  const ParamVector theta = Eigen::Vector2d(-1e4, 1e4);
  ASSERT_OK_AND_ASSIGN(double v, m.Value(theta));
  EXPECT_NEAR(v, 1e4, 1e-9);  // both examples pay a margin of 1e4, averaged over n = 2
  ASSERT_OK_AND_ASSIGN(ParamVector g, m.Gradient(theta));
  EXPECT_TRUE(g.allFinite());
  EXPECT_DOUBLE_EQ(Softplus(-1e4), 0.0);
  EXPECT_DOUBLE_EQ(Softplus(1e4), 1e4);
  EXPECT_DOUBLE_EQ(Sigmoid(-1e4), 0.0);
  EXPECT_DOUBLE_EQ(Sigmoid(1e4), 1.0);
}

TEST(LogisticLossTest, RejectsNonBinaryLabels) {
  EXPECT_THAT(LossModel::Create(LossKind::kLogistic, Tiny(Eigen::Vector2d(1, -1)), 0.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(LossModelTest, ValidatesInputs) {
  EXPECT_THAT(LossModel::Create(LossKind::kLinear, Tiny(Eigen::Vector2d(0, 0)), -1.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  ASSERT_OK_AND_ASSIGN(LossModel m,
                       LossModel::Create(LossKind::kLinear, Tiny(Eigen::Vector2d(0, 0)), 0.0));
  EXPECT_THAT(m.Value(ParamVector::Zero(3)), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(m.PerExampleGradient(ParamVector::Zero(2), 2),
              StatusIs(absl::StatusCode::kOutOfRange));
}

// Central differences against the analytic gradient on random instances.
class GradientCheck : public ::testing::TestWithParam<bool> {};

TEST_P(GradientCheck, MatchesFiniteDifferences) {
  const bool logistic = GetParam();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Generated g = Synthetic(logistic, seed);
    ASSERT_OK_AND_ASSIGN(LossModel m, LossModel::Create(logistic ? LossKind::kLogistic
                                                                 : LossKind::kLinear,
                                                        g.data, 0.1));
    Rng rng(100 + seed);
    const ParamVector theta = Random(m.dim(), rng);
    ASSERT_OK_AND_ASSIGN(ParamVector grad, m.Gradient(theta));
    const double h = 1e-6;
    for (int64_t j = 0; j < m.dim(); ++j) {
      ParamVector plus = theta, minus = theta;
      plus[j] += h;
      minus[j] -= h;
      const double fd = (*m.Value(plus) - *m.Value(minus)) / (2 * h);
      EXPECT_NEAR(grad[j], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "seed " << seed;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Losses, GradientCheck, ::testing::Bool(),
                         [](const auto& info) { return info.param ? "Logistic" : "Linear"; });

TEST(LossModelTest, PerExampleGradientsAverageToGradient) {
  for (bool logistic : {false, true}) {
    Generated g = Synthetic(logistic, 4);
    ASSERT_OK_AND_ASSIGN(LossModel m, LossModel::Create(logistic ? LossKind::kLogistic
                                                                 : LossKind::kLinear,
                                                        g.data, 0.0));
    Rng rng(1);
    const ParamVector theta = Random(m.dim(), rng);
    ParamVector sum = ParamVector::Zero(m.dim());
    for (int64_t i = 0; i < m.num_examples(); ++i) sum += *m.PerExampleGradient(theta, i);
    EXPECT_LT((sum / m.num_examples() - *m.Gradient(theta)).norm(), 1e-12);
  }
}

TEST(LossModelTest, LogisticPerExampleGradientBoundedByK) {
  Generated g = Synthetic(true, 2);
  ASSERT_OK_AND_ASSIGN(LossModel m, LossModel::Create(LossKind::kLogistic, g.data, 0.0));
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ParamVector theta = 10.0 * Random(m.dim(), rng);
    for (int64_t i = 0; i < m.num_examples(); ++i) {
      EXPECT_LE(m.PerExampleGradient(theta, i)->cwiseAbs().maxCoeff(),
                g.data.inf_norm_bound());
    }
  }
}

TEST(ModelBoundsTest, Examples) {
  DenseMatrix x(1, 2);
  x << 1, -1;
  ASSERT_OK_AND_ASSIGN(Dataset lin, Dataset::Create(DesignMatrix(x), Eigen::VectorXd::Ones(1)));
  ASSERT_OK_AND_ASSIGN(LossModel m, LossModel::Create(LossKind::kLinear, lin, 0.0));
  ASSERT_OK_AND_ASSIGN(ModelBounds b, ComputeModelBounds(m, 10));
  EXPECT_NEAR(b.gamma, 3.16227766016837933, 1e-15);
  EXPECT_DOUBLE_EQ(b.smoothness, 30.0);
  EXPECT_EQ(b.inf_norm_bound, 1.0);

  DenseMatrix x2(1, 2);
  x2 << 0.5, 4;
  ASSERT_OK_AND_ASSIGN(Dataset logi, Dataset::Create(DesignMatrix(x2), Eigen::VectorXd::Ones(1)));
  ASSERT_OK_AND_ASSIGN(LossModel ml, LossModel::Create(LossKind::kLogistic, logi, 0.5));
  ASSERT_OK_AND_ASSIGN(ModelBounds bl, ComputeModelBounds(ml, 1));
  EXPECT_EQ(bl.gamma, 4.0);
  EXPECT_DOUBLE_EQ(bl.smoothness, 12.5);

  EXPECT_THAT(ComputeModelBounds(m, 0), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ModelBoundsTest, ZeroFeaturesRejected) {
  ASSERT_OK_AND_ASSIGN(Dataset zero, Dataset::Create(DesignMatrix(DenseMatrix::Zero(2, 2)),
                                                     Eigen::VectorXd::Zero(2)));
  ASSERT_OK_AND_ASSIGN(LossModel m, LossModel::Create(LossKind::kLinear, zero, 0.0));
  EXPECT_THAT(ComputeModelBounds(m, 1), StatusIs(absl::StatusCode::kInvalidArgument));
}

}  // namespace
}  // namespace dpkt
