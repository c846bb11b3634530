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
#include <filesystem>

#include "dpkt/datagen.h"
#include "dpkt/libsvm.h"
#include "dpkt/thresholding.h"
#include "test_util.h"

namespace dpkt {
namespace {

using ::dpkt::testing::StatusIs;

TEST(DatagenTest, SettingOneShape) {
  SynthSpec spec;  // n = 800, d = 1000, s* = 10, nu2 = 0.1
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(1)));
  EXPECT_EQ(g.data.num_examples(), 800);
  EXPECT_EQ(g.data.dim(), 1000);
  EXPECT_EQ(CountNonZeros(g.theta_star), 10);
  EXPECT_LE(g.data.inf_norm_bound(), 1.0);
  EXPECT_LE(g.theta_star.cwiseAbs().maxCoeff(), 1.0);
  EXPECT_FALSE(g.data.features().is_sparse());
}

TEST(DatagenTest, NoiselessLabelsAreExact) {
  SynthSpec spec{.n = 50, .d = 20, .s_star = 3, .task = LinearNoise{0.0}};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(2)));
  EXPECT_TRUE((g.data.labels().array() ==
               g.data.features().Multiply(g.theta_star).array()).all());
}

TEST(DatagenTest, LinearNoiseVariance) {
  SynthSpec spec{.n = 40000, .d = 5, .s_star = 2, .task = LinearNoise{0.1}};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(3)));
  const Eigen::VectorXd resid = g.data.labels() - g.data.features().Multiply(g.theta_star);
  EXPECT_NEAR(resid.squaredNorm() / resid.size(), 0.1, 3e-3);
}

TEST(DatagenTest, DesignColumnVarianceIsOneThird) {
  SynthSpec spec{.n = 30000, .d = 4, .s_star = 1};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(4)));
  const DenseMatrix& x = *g.data.features().dense();
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(x.col(j).squaredNorm() / x.rows(), 1.0 / 3.0, 8e-3);
  }
}

TEST(DatagenTest, LogisticZeroParameterIsFairCoin) {
  SynthSpec spec{.n = 40000, .d = 3, .s_star = 0, .task = LogisticLabels{}};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(5)));
  const double frac = g.data.labels().mean();
  EXPECT_GE(frac, 0.49);
  EXPECT_LE(frac, 0.51);
}

TEST(DatagenTest, LogisticLabelSignConvention) {
  SynthSpec spec{.n = 20000, .d = 2, .s_star = 2, .task = LogisticLabels{LabelSign::kModel}};
  ASSERT_OK_AND_ASSIGN(Generated a, Generate(spec, Rng(6)));
  spec.task = LogisticLabels{LabelSign::kFlipped};
  ASSERT_OK_AND_ASSIGN(Generated b, Generate(spec, Rng(6)));
  // Positive margins should mostly carry label 1 under kModel and 0 when flipped.
  const Eigen::VectorXd z = a.data.features().Multiply(a.theta_star);
  double agree_a = 0, agree_b = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    agree_a += (z[i] > 0) == (a.data.labels()[i] == 1.0);
    agree_b += (z[i] > 0) == (b.data.labels()[i] == 1.0);
  }
  EXPECT_GT(agree_a / z.size(), 0.5);
  EXPECT_LT(agree_b / z.size(), 0.5);
}

TEST(DatagenTest, StreamsAreDisjoint) {
  SynthSpec spec{.n = 30, .d = 10, .s_star = 3, .task = LinearNoise{0.1}};
  ASSERT_OK_AND_ASSIGN(Generated a, Generate(spec, Rng(7)));
  spec.task = LinearNoise{0.5};
  ASSERT_OK_AND_ASSIGN(Generated b, Generate(spec, Rng(7)));
  EXPECT_TRUE((a.data.features().dense()->array() == b.data.features().dense()->array()).all());
  EXPECT_TRUE((a.theta_star.array() == b.theta_star.array()).all());
  EXPECT_FALSE((a.data.labels().array() == b.data.labels().array()).all());
  spec.n = 60;  // more rows leave the support and values untouched
  ASSERT_OK_AND_ASSIGN(Generated c, Generate(spec, Rng(7)));
  EXPECT_TRUE((a.theta_star.array() == c.theta_star.array()).all());
}

TEST(DatagenTest, UnitNormOption) {
  SynthSpec spec{.n = 10, .d = 30, .s_star = 5, .theta_scale = ThetaScale::kUnitNorm};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(8)));
  EXPECT_NEAR(g.theta_star.norm(), 1.0, 1e-15);
  spec.theta_scale = ThetaScale::kRaw;
  ASSERT_OK_AND_ASSIGN(Generated raw, Generate(spec, Rng(8)));
  EXPECT_NEAR((raw.theta_star / raw.theta_star.norm() - g.theta_star).norm(), 0.0, 1e-15);
}

TEST(DatagenTest, Validation) {
  EXPECT_THAT(Generate({.n = 0}, Rng(1)), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Generate({.n = 5, .d = 3, .s_star = 4}, Rng(1)),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Generate({.n = 5, .d = 3, .s_star = 1, .task = LinearNoise{-1}}, Rng(1)),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_FALSE(ParseThetaScale("huge").ok());
  EXPECT_FALSE(ParseLabelSign("both").ok());
}

TEST(LibsvmTest, FormatParseRoundTripIsExact) {
  SynthSpec spec{.n = 25, .d = 12, .s_star = 3};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(9)));
  const std::string text = FormatLibsvm(g.data);
  ASSERT_OK_AND_ASSIGN(Dataset back, ParseLibsvmText(text, 12));
  EXPECT_TRUE(back.features().is_sparse());
  const DenseMatrix dense = DenseMatrix(*back.features().sparse());
  EXPECT_TRUE((dense.array() == g.data.features().dense()->array()).all());
  EXPECT_TRUE((back.labels().array() == g.data.labels().array()).all());
  EXPECT_EQ(FormatLibsvm(back), text);
}

TEST(LibsvmTest, WriteAndReadFile) {
  SynthSpec spec{.n = 5, .d = 4, .s_star = 1};
  ASSERT_OK_AND_ASSIGN(Generated g, Generate(spec, Rng(10)));
  const std::string path =
      (std::filesystem::temp_directory_path() / "dpkt_datagen_test.libsvm").string();
  ASSERT_OK(WriteLibsvm(g.data, path));
  ASSERT_OK_AND_ASSIGN(Dataset back, ParseLibsvmFile(path, 4));
  EXPECT_EQ(back.num_examples(), 5);
  std::filesystem::remove(path);
}

TEST(ThetaJsonTest, RoundTrip) {
  const ParamVector theta = (ParamVector(5) << 0, -0.25, 0, 1e-300, 0).finished();
  const nlohmann::json j = ThetaToJson(theta);
  EXPECT_EQ(j["dim"], 5);
  EXPECT_EQ(j["support"], nlohmann::json({1, 3}));
  ASSERT_OK_AND_ASSIGN(ParamVector back, ThetaFromJson(nlohmann::json::parse(j.dump())));
  EXPECT_TRUE((back.array() == theta.array()).all());
  EXPECT_FALSE(ThetaFromJson(nlohmann::json::parse(R"({"dim": 2, "support": [5], "values": [1]})")).ok());
}

}  // namespace
}  // namespace dpkt
