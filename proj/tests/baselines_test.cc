//
// Copyright 2026 The DP Partition Selection Authors
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

#include "dp_partition/baselines.h"

#include <cmath>
#include <cstdint>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "dp_partition/numeric.h"
#include "dp_partition/primitive.h"
#include "test_grids.h"

namespace dp_partition {
namespace {

using ::dp_partition::testing::BinomialTolerance;
using ::dp_partition::testing::IntegralCrossoverDelta;
using ::testing::DoubleNear;

// Delta at which the Laplace threshold 1 - ln(2 delta)/eps is `threshold`.
double DeltaForLaplaceThreshold(double epsilon, double threshold) {
  return std::exp(-(threshold - 1) * epsilon) / 2;
}

int64_t OptimalMidpoint(const PrivacyParams& params) {
  const OptimalPrimitive primitive = *OptimalPrimitive::Create(params);
  return *MidpointCount([&](int64_t n) { return primitive.Probability(n); });
}

int64_t LaplaceMidpoint(const PrivacyParams& params) {
  const LaplacePrimitive primitive = *LaplacePrimitive::Create(params);
  return *MidpointCount([&](int64_t n) { return primitive.Probability(n); });
}

TEST(LaplacePrimitiveTest, ThresholdAndTail) {
  const LaplacePrimitive primitive = *LaplacePrimitive::Create({1, 1e-5});
  EXPECT_THAT(primitive.threshold(), DoubleNear(11.819778284410283, 1e-12));
  EXPECT_THAT(primitive.Probability(11), DoubleNear(0.22026465794806717, 1e-12));
  EXPECT_EQ(primitive.Probability(0), 0);
}

TEST(LaplacePrimitiveTest, HalfAtThreshold) {
  const LaplacePrimitive primitive =
      *LaplacePrimitive::Create({1, DeltaForLaplaceThreshold(1, 10)});
  EXPECT_THAT(primitive.Probability(10), DoubleNear(0.5, 1e-12));
}

TEST(LaplacePrimitiveTest, ThresholdAboveOneForSmallDelta) {
  for (double epsilon : {0.01, 0.1, 1.0, 5.0}) {
    for (double delta : {1e-12, 1e-5, 0.49}) {
      EXPECT_GT(LaplacePrimitive::Create({epsilon, delta})->threshold(), 1);
    }
  }
}

TEST(LaplacePrimitiveTest, RejectsDegenerateBudgets) {
  EXPECT_FALSE(LaplacePrimitive::Create({0, 1e-5}).ok());
  EXPECT_FALSE(LaplacePrimitive::Create({1, 0}).ok());
  EXPECT_FALSE(LaplacePrimitive::Create({1, 1}).ok());
}

TEST(LaplaceKeepTest, NeverKeepsAbsentPartitions) {
  const LaplacePrimitive primitive = *LaplacePrimitive::Create({1, 0.4});
  RandomEngine rng(1);
  for (int i = 0; i < 10000; ++i) ASSERT_FALSE(primitive.ShouldKeep(0, rng));
}

TEST(LaplaceKeepTest, RateOneBelowThreshold) {
  const LaplacePrimitive primitive =
      *LaplacePrimitive::Create({1, DeltaForLaplaceThreshold(1, 10)});
  constexpr int kTrials = 1'000'000;
  RandomEngine rng(77);
  int kept = 0;
  for (int i = 0; i < kTrials; ++i) kept += primitive.ShouldKeep(9, rng);
  const double expected = 0.5 * std::exp(-1.0);
  EXPECT_NEAR(expected, 0.18393972058572116, 1e-15);
  EXPECT_NEAR(static_cast<double>(kept) / kTrials, expected,
              BinomialTolerance(expected, kTrials));
}

TEST(LaplaceKeepTest, FarAboveThresholdAlwaysKept) {
  const LaplacePrimitive primitive = *LaplacePrimitive::Create({1, 1e-5});
  const auto n = static_cast<int64_t>(std::ceil(primitive.threshold())) + 50;
  RandomEngine rng(2);
  int kept = 0;
  for (int i = 0; i < 100000; ++i) kept += primitive.ShouldKeep(n, rng);
  EXPECT_EQ(kept, 100000);
}

TEST(GaussianCalibrationTest, KnownSigma) {
  // Independent root find (SciPy brentq on the same privacy profile).
  EXPECT_THAT(*CalibrateGaussianSigma(1, 1e-5, 1),
              DoubleNear(3.730631634815946, 1e-9));
  EXPECT_THAT(*CalibrateGaussianSigma(0.5, 1e-6, std::sqrt(2.0)),
              DoubleNear(11.395193335869413, 1e-8));
}

TEST(GaussianCalibrationTest, SigmaHitsTargetDelta) {
  for (double delta : {1e-10, 1e-6, 1e-3}) {
    const double sigma = *CalibrateGaussianSigma(1, delta, 2);
    EXPECT_NEAR(GaussianMechanismDelta(sigma, 1, 2) / delta, 1, 1e-6);
  }
}

TEST(GaussianCalibrationTest, SigmaDecreasesWithDelta) {
  double previous = INFINITY;
  for (double delta : {1e-12, 1e-9, 1e-6, 1e-4, 1e-2}) {
    const double sigma = *CalibrateGaussianSigma(1, delta, 1);
    EXPECT_LT(sigma, previous);
    previous = sigma;
  }
}

TEST(GaussianCalibrationTest, RejectsInvalidInputs) {
  EXPECT_EQ(CalibrateGaussianSigma(0, 1e-5, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(CalibrateGaussianSigma(1, 0, 1).ok());
  EXPECT_FALSE(CalibrateGaussianSigma(1, 1e-5, 0).ok());
}

TEST(GaussianPrimitiveTest, ThresholdFiniteAndAboveOne) {
  for (double epsilon : {0.1, 1.0, 3.0}) {
    for (double delta : {1e-10, 1e-5, 1e-2}) {
      for (int64_t kappa : {1, 2, 5, 10}) {
        const GaussianPrimitive primitive =
            *GaussianPrimitive::Create({epsilon, delta}, kappa);
        EXPECT_TRUE(std::isfinite(primitive.threshold()));
        EXPECT_GT(primitive.threshold(), 1);
        EXPECT_NEAR(primitive.delta_noise() + primitive.delta_threshold(),
                    delta, 1e-15);
      }
    }
  }
}

TEST(GaussianPrimitiveTest, EmptyPartitionsStayBelowThreshold) {
  for (int64_t kappa : {1, 3, 8}) {
    const GaussianPrimitive primitive =
        *GaussianPrimitive::Create({1, 1e-5}, kappa);
    // A user alone in kappa partitions: each count is 1.
    const double per_partition =
        NormalSurvival((primitive.threshold() - 1) / primitive.sigma());
    const double any = -std::expm1(kappa * std::log1p(-per_partition));
    EXPECT_LE(any, primitive.delta_threshold() * (1 + 1e-9));
  }
}

TEST(GaussianPrimitiveTest, SplitSearchFindsTheMinimum) {
  const PrivacyParams params{1, 1e-5};
  const GaussianPrimitive best = *GaussianPrimitive::Create(params, 3);
  for (double share : {0.05, 0.2, 0.4, 0.5, 0.6, 0.8, 0.95}) {
    const GaussianPrimitive other =
        *GaussianPrimitive::CreateWithSplit(params, 3, share * 1e-5);
    EXPECT_LE(best.threshold(), other.threshold() + 1e-9) << share;
  }
}

TEST(GaussianPrimitiveTest, SurvivalCurve) {
  const GaussianPrimitive primitive = *GaussianPrimitive::Create({1, 1e-5}, 1);
  EXPECT_EQ(primitive.Probability(0), 0);
  for (int64_t n = 1; n < 40; ++n) {
    EXPECT_NEAR(primitive.Probability(n),
                NormalCdf((n - primitive.threshold()) / primitive.sigma()),
                1e-15);
  }
  EXPECT_DOUBLE_EQ(NormalSurvival(0), 0.5);
  EXPECT_NEAR(NormalSurvival(-1), 0.8413447460685429, 1e-15);
}

TEST(GaussianPrimitiveTest, KappaCrossing) {
  const PrivacyParams params{1, 1e-5};
  auto gauss_midpoint = [&](int64_t kappa) {
    const GaussianPrimitive g = *GaussianPrimitive::Create(params, kappa);
    return *MidpointCount([&](int64_t n) { return g.Probability(n); });
  };
  EXPECT_GT(gauss_midpoint(1), OptimalMidpoint(*DivideBudget(params, 1)));
  EXPECT_LT(gauss_midpoint(4), OptimalMidpoint(*DivideBudget(params, 4)));
}

TEST(PercentileTest, Midpoints) {
  EXPECT_EQ(OptimalMidpoint({1, IntegralCrossoverDelta(1, 5)}), 6);
  EXPECT_EQ(LaplaceMidpoint({1, 1e-5}), 12);
  auto saturated = [](int64_t n) { return n >= 3 ? 1.0 : 0.0; };
  EXPECT_EQ(*MidpointCount(saturated), 3);
}

TEST(PercentileTest, Levels) {
  const OptimalPrimitive primitive = *OptimalPrimitive::Create({0.1, 1e-10});
  auto curve = [&](int64_t n) { return primitive.Probability(n); };
  EXPECT_EQ(*PercentileCount(curve, 0), 1);
  EXPECT_EQ(*PercentileCount(curve, 0.5), *MidpointCount(curve));
  const int64_t low = *PercentileCount(curve, 0.05);
  const int64_t mid = *PercentileCount(curve, 0.5);
  const int64_t high = *PercentileCount(curve, 0.95);
  EXPECT_LT(low, mid);
  EXPECT_LT(mid, high);
  EXPECT_LE(high, primitive.n2() + 1);
  // Smallest such n, checked by scanning.
  for (double q : {0.05, 0.5, 0.95}) {
    int64_t scan = 1;
    while (curve(scan) < q) ++scan;
    EXPECT_EQ(*PercentileCount(curve, q), scan);
  }
  EXPECT_FALSE(PercentileCount(curve, 1.5).ok());
}

TEST(DominanceTest, OptimalBeatsLaplacePointwise) {
  for (const PrivacyParams& params :
       {PrivacyParams{1, 1e-5}, PrivacyParams{0.1, 1e-10}}) {
    const OptimalPrimitive opt = *OptimalPrimitive::Create(params);
    const LaplacePrimitive lap = *LaplacePrimitive::Create(params);
    // At n == 1 both equal delta exactly; allow rounding there.
    for (int64_t n = 1; n <= 2000; ++n) {
      ASSERT_GE(opt.Probability(n), lap.Probability(n) * (1 - 1e-12)) << n;
    }
  }
}

TEST(DominanceTest, MidpointGapGrowsAsEpsilonShrinks) {
  for (double epsilon : {0.01, 0.1, 0.5, 1.0, 3.0}) {
    for (double delta : {1e-12, 1e-8, 1e-5, 1e-3}) {
      EXPECT_LE(OptimalMidpoint({epsilon, delta}),
                LaplaceMidpoint({epsilon, delta}));
    }
  }
  const int64_t gap_small = LaplaceMidpoint({0.1, 1e-5}) -
                            OptimalMidpoint({0.1, 1e-5});
  const int64_t gap_large = LaplaceMidpoint({1, 1e-5}) -
                            OptimalMidpoint({1, 1e-5});
  EXPECT_GT(gap_small, gap_large);
}

TEST(DominanceTest, MidpointGapConstantAcrossDelta) {
  for (double epsilon : {0.1, 1.0}) {
    int64_t lo = INT64_MAX;
    int64_t hi = INT64_MIN;
    for (int exponent = 3; exponent <= 12; ++exponent) {
      const PrivacyParams params{epsilon, std::pow(10.0, -exponent)};
      const int64_t gap = LaplaceMidpoint(params) - OptimalMidpoint(params);
      lo = std::min(lo, gap);
      hi = std::max(hi, gap);
    }
    EXPECT_LE(hi - lo, 1) << epsilon;
  }
}

}  // namespace
}  // namespace dp_partition
