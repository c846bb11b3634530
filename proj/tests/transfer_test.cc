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
#include <memory>

#include "dpkt/datagen.h"
#include "dpkt/thresholding.h"
#include "dpkt/transfer.h"
#include "test_util.h"

namespace dpkt {
namespace {

using ::dpkt::testing::StatusIs;
using ::testing::UnorderedElementsAre;

Generated Data(int64_t n, int64_t d, int64_t s_star, double nu2, uint64_t seed) {
  SynthSpec spec;
  spec.n = n;
  spec.d = d;
  spec.s_star = s_star;
  spec.task = LinearNoise{nu2};
  return *Generate(spec, Rng(seed));
}

TransferConfig SmallConfig(int64_t s) {
  TransferConfig cfg;
  cfg.teacher.sparsity = s;
  cfg.student.sparsity = s;
  cfg.teacher.max_iters = 2000;
  cfg.student.max_iters = 2000;
  cfg.teacher_step = StepRule::kSpectral;
  cfg.student_step = StepRule::kSpectral;
  cfg.privacy = {2.0, 0.01};
  cfg.seed = 5;
  return cfg;
}

TEST(SynthNamesTest, RoundTrip) {
  for (SynthKind k : {SynthKind::kUniformPm1, SynthKind::kGaussianIso, SynthKind::kEmpirical}) {
    EXPECT_EQ(*ParseSynthKind(SynthKindName(k)), k);
  }
  for (StepRule r : {StepRule::kFixed, StepRule::kTheory, StepRule::kSpectral}) {
    EXPECT_EQ(*ParseStepRule(StepRuleName(r)), r);
  }
  EXPECT_FALSE(ParseSynthKind("laplace").ok());
  EXPECT_FALSE(ParseStepRule("adaptive").ok());
}

TEST(SyntheticFeaturesTest, UniformAndGaussianMoments) {
  Rng rng(1);
  SyntheticDistribution uni;
  ASSERT_OK_AND_ASSIGN(auto u, SampleSyntheticFeatures(uni, 4, 50000, rng));
  const DenseMatrix& xu = *u->dense();
  EXPECT_LE(xu.cwiseAbs().maxCoeff(), 1.0);
  EXPECT_NEAR(xu.mean(), 0.0, 5e-3);
  EXPECT_NEAR(xu.array().square().mean(), 1.0 / 3.0, 5e-3);

  SyntheticDistribution gauss;
  gauss.kind = SynthKind::kGaussianIso;
  gauss.tau2 = 2.5;
  ASSERT_OK_AND_ASSIGN(auto g, SampleSyntheticFeatures(gauss, 4, 50000, rng));
  EXPECT_NEAR(g->dense()->array().square().mean(), 2.5, 0.04);
}

TEST(SyntheticFeaturesTest, EmpiricalResamplesPoolRows) {
  DenseMatrix pool(2, 3);
  pool << 1, 2, 3,  //
      -1, -2, -3;
  SyntheticDistribution emp{.kind = SynthKind::kEmpirical,
                            .pool = std::make_shared<DesignMatrix>(pool)};
  Rng rng(3);
  ASSERT_OK_AND_ASSIGN(auto rows, SampleSyntheticFeatures(emp, 3, 50, rng));
  ASSERT_EQ(rows->rows(), 50);
  for (int64_t i = 0; i < 50; ++i) {
    const double first = rows->dense()->coeff(i, 0);
    EXPECT_TRUE(first == 1.0 || first == -1.0);
    EXPECT_EQ(rows->dense()->coeff(i, 2), 3 * first);
  }
  EXPECT_THAT(SampleSyntheticFeatures(emp, 4, 5, rng),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(BetaTildeTest, Examples) {
  EXPECT_DOUBLE_EQ(*BetaTilde({}), 1.0 / 3.0);
  SyntheticDistribution gauss;
  gauss.kind = SynthKind::kGaussianIso;
  EXPECT_DOUBLE_EQ(*BetaTilde(gauss), 1.0);
  SyntheticDistribution zero;
  zero.kind = SynthKind::kEmpirical;
  zero.pool = std::make_shared<DesignMatrix>(DenseMatrix::Zero(5, 3));
  EXPECT_THAT(BetaTilde(zero), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EstimateBetaTilde(DesignMatrix(DenseMatrix::Ones(1, 3))),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(BetaTildeTest, EstimateOnUniformPool) {
  Rng rng(4);
  ASSERT_OK_AND_ASSIGN(auto rows, SampleSyntheticFeatures({}, 5, 20000, rng));
  ASSERT_OK_AND_ASSIGN(double est, EstimateBetaTilde(*rows));
  EXPECT_GE(est, 0.31);
  EXPECT_LE(est, 0.36);
  SyntheticDistribution emp{.kind = SynthKind::kEmpirical, .pool = rows, .safety_factor = 1.1};
  EXPECT_NEAR(*BetaTilde(emp), 1.1 * est, 1e-12);
}

TEST(PrivateResponsesTest, NoiselessIsExactPrediction) {
  Rng rng(2);
  ASSERT_OK_AND_ASSIGN(auto rows, SampleSyntheticFeatures({}, 6, 30, rng));
  const ParamVector teacher = (ParamVector(6) << 0, 1, 0, -2, 0, 0.5).finished();
  Rng before = rng;
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd y, GeneratePrivateResponses(teacher, *rows, 0.0, rng));
  EXPECT_TRUE((y.array() == rows->Multiply(teacher).array()).all());
  EXPECT_EQ(before.Normal(1.0), rng.Normal(1.0));  // no draws consumed
}

TEST(PrivateResponsesTest, NoiseHasCalibratedVariance) {
  Rng rng(6);
  ASSERT_OK_AND_ASSIGN(auto rows, SampleSyntheticFeatures({}, 3, 100000, rng));
  const ParamVector teacher = ParamVector::Ones(3);
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd y, GeneratePrivateResponses(teacher, *rows, 0.09, rng));
  const Eigen::VectorXd resid = y - rows->Multiply(teacher);
  EXPECT_NEAR(resid.squaredNorm() / resid.size(), 0.09, 2e-3);
}

TEST(StudentLossTest, IsUnregularizedLeastSquares) {
  auto rows = std::make_shared<DesignMatrix>(DenseMatrix::Identity(2, 2));
  ASSERT_OK_AND_ASSIGN(LossModel m, BuildStudentLoss(rows, Eigen::Vector2d(1, 2)));
  EXPECT_EQ(m.kind(), LossKind::kLinear);
  EXPECT_EQ(m.ridge_weight(), 0.0);
  EXPECT_DOUBLE_EQ(*m.Value(ParamVector::Zero(2)), 1.25);
  EXPECT_EQ(m.data().shared_features(), rows);
}

TEST(DistillTest, NoiseFreeStudentRecoversTeacher) {
  TransferConfig cfg = SmallConfig(3);
  const ParamVector teacher = (ParamVector(20) << 0, 0, 1.5, 0, 0, 0, 0, -0.7, 0, 0, 0, 0, 0,
                               0, 0, 0, 0.2, 0, 0, 0).finished();
  Rng rng(8);
  ASSERT_OK_AND_ASSIGN(DistillOutput out, DistillFromTeacher(teacher, 0.0, cfg, 200, rng));
  EXPECT_LE((out.student_trace.final - teacher).norm(), 1e-6);
}

TEST(RunDpslKtTest, ZeroNoiseRecoversNoiselessTarget) {
  Generated g = Data(300, 40, 4, 0.0, 1);
  TransferConfig cfg = SmallConfig(4);
  cfg.lambda_mode = RscMode{1.0};
  cfg.sigma2_override = 0.0;
  ASSERT_OK_AND_ASSIGN(TransferResult r, RunDpslKt(g.data, LossKind::kLinear, cfg));
  EXPECT_LE((r.theta_p - g.theta_star).norm() / g.theta_star.norm(), 1e-3);
  EXPECT_EQ(r.receipt.labels.at("warning"), "noise variance overridden; output is not private");
  EXPECT_EQ(r.receipt.constants.at("sigma2_applied"), 0.0);
  EXPECT_GT(r.receipt.sigma2, 0.0);  // the calibrated value is still reported
}

TEST(RunDpslKtTest, ReceiptMatchesCalibration) {
  Generated g = Data(200, 30, 3, 0.1, 2);
  TransferConfig cfg = SmallConfig(3);
  cfg.m = 150;
  ASSERT_OK_AND_ASSIGN(TransferResult r, RunDpslKt(g.data, LossKind::kLinear, cfg));
  const auto& in = std::get<SensitivityInputs>(r.receipt.inputs);
  EXPECT_EQ(in.m, 150);
  EXPECT_EQ(in.n, 200);
  EXPECT_EQ(in.s, 3);
  EXPECT_DOUBLE_EQ(in.beta_tilde, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(in.rho, r.lambda);
  EXPECT_DOUBLE_EQ(*RecomputeSigma2(r.receipt), r.receipt.sigma2);
  EXPECT_LE(CountNonZeros(r.theta_p), 3);
  EXPECT_EQ(r.receipt.labels.count("warning"), 0u);
}

TEST(RunDpslKtTest, SampleSizePrecondition) {
  Generated g = Data(100, 50, 3, 0.1, 3);
  TransferConfig cfg = SmallConfig(3);
  cfg.m = 46;  // ceil(4 * 3 * ln 50) = 47
  EXPECT_THAT(RunDpslKt(g.data, LossKind::kLinear, cfg),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  cfg.m = 47;
  EXPECT_OK(RunDpslKt(g.data, LossKind::kLinear, cfg));
}

TEST(RunDpslKtTest, InvalidModesRejected) {
  Generated g = Data(100, 20, 2, 0.1, 3);
  TransferConfig cfg = SmallConfig(2);
  cfg.lambda_mode = ExplicitLambda{0.0};
  EXPECT_THAT(RunDpslKt(g.data, LossKind::kLinear, cfg),
              StatusIs(absl::StatusCode::kInvalidArgument));
  cfg.lambda_mode = RscMode{-1.0};
  EXPECT_THAT(RunDpslKt(g.data, LossKind::kLinear, cfg),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RunDpslKtTest, DeterministicGivenSeed) {
  Generated g = Data(150, 30, 3, 0.1, 4);
  TransferConfig cfg = SmallConfig(3);
  ASSERT_OK_AND_ASSIGN(TransferResult a, RunDpslKt(g.data, LossKind::kLinear, cfg));
  ASSERT_OK_AND_ASSIGN(TransferResult b, RunDpslKt(g.data, LossKind::kLinear, cfg));
  EXPECT_TRUE((a.theta_p.array() == b.theta_p.array()).all());
  cfg.seed = 6;
  ASSERT_OK_AND_ASSIGN(TransferResult c, RunDpslKt(g.data, LossKind::kLinear, cfg));
  EXPECT_FALSE((a.theta_p.array() == c.theta_p.array()).all());
}

// The student never touches private storage: after the run nothing holds a
// reference to the private design, and the student design is fresh.
TEST(RunDpslKtTest, StudentSeesOnlySyntheticData) {
  Generated g = Data(150, 30, 3, 0.1, 5);
  const long before = g.data.shared_features().use_count();
  TransferConfig cfg = SmallConfig(3);
  ASSERT_OK_AND_ASSIGN(TransferResult r, RunDpslKt(g.data, LossKind::kLinear, cfg));
  EXPECT_EQ(g.data.shared_features().use_count(), before);

  // The release is a function of the teacher, sigma^2 and the seed alone.
  Rng r1(cfg.seed), r2(cfg.seed);
  const double s2 = r.receipt.sigma2;
  ASSERT_OK_AND_ASSIGN(DistillOutput d1, DistillFromTeacher(r.teacher_theta, s2, cfg, 150, r1));
  ASSERT_OK_AND_ASSIGN(DistillOutput d2, DistillFromTeacher(r.teacher_theta, s2, cfg, 150, r2));
  EXPECT_TRUE((d1.student_trace.final.array() == d2.student_trace.final.array()).all());
  EXPECT_TRUE((d1.student_trace.final.array() == r.theta_p.array()).all());
}

TEST(TransferJsonTest, PrivateOnlyOmitsTeacher) {
  Generated g = Data(150, 30, 3, 0.1, 6);
  ASSERT_OK_AND_ASSIGN(TransferResult r, RunDpslKt(g.data, LossKind::kLinear, SmallConfig(3)));
  const nlohmann::json priv = TransferResultToJson(r, true);
  std::vector<std::string> keys;
  for (const auto& [k, v] : priv.items()) keys.push_back(k);
  EXPECT_THAT(keys, UnorderedElementsAre("theta_p", "support", "receipt"));
  const nlohmann::json full = TransferResultToJson(r, false);
  EXPECT_TRUE(full.contains("teacher_theta"));
  EXPECT_TRUE(full.contains("traces"));
  EXPECT_EQ(priv["theta_p"].size(), 30u);
}

}  // namespace
}  // namespace dpkt
