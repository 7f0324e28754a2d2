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

#include "dp_partition/evaluation.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "dp_partition/baselines.h"
#include "dp_partition/parallel.h"
#include "test_grids.h"

namespace dp_partition {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream input(text);
  for (std::string line; std::getline(input, line);) lines.push_back(line);
  return lines;
}

TEST(ParseTest, NamesRoundTrip) {
  EXPECT_EQ(*ParseStrategy("opt"), Strategy::kOptimal);
  EXPECT_EQ(*ParseStrategy("laplace"), Strategy::kLaplace);
  EXPECT_EQ(*ParseStrategy("gauss"), Strategy::kGaussian);
  EXPECT_FALSE(ParseStrategy("median").ok());
  EXPECT_EQ(*ParseFigureId("prob-curve"), FigureId::kProbCurve);
  EXPECT_EQ(*ParseFigureId("midpoint-vs-eps"), FigureId::kMidpointVsEpsilon);
  EXPECT_EQ(*ParseFigureId("midpoint-vs-delta"), FigureId::kMidpointVsDelta);
  EXPECT_EQ(*ParseFigureId("kappa-compare"), FigureId::kKappaCompare);
  EXPECT_FALSE(ParseFigureId("fig9").ok());
}

TEST(KeepProbabilitiesTest, MatchesPrimitives) {
  const PrivacyParams params{.epsilon = 1, .delta = 1e-5};
  auto opt = KeepProbabilities(Strategy::kOptimal, params, 30);
  auto lap = KeepProbabilities(Strategy::kLaplace, params, 30);
  auto gauss = KeepProbabilities(Strategy::kGaussian, params, 30, 3);
  ASSERT_TRUE(opt.ok() && lap.ok() && gauss.ok());
  ASSERT_EQ(opt->size(), 31u);
  auto primitive = OptimalPrimitive::Create(params);
  auto laplace = LaplacePrimitive::Create(params);
  auto gaussian = GaussianPrimitive::Create(params, 3);
  for (int64_t n = 0; n <= 30; ++n) {
    EXPECT_EQ((*opt)[n], primitive->Probability(n));
    EXPECT_EQ((*lap)[n], laplace->Probability(n));
    EXPECT_EQ((*gauss)[n], gaussian->Probability(n));
  }
  EXPECT_FALSE(KeepProbabilities(Strategy::kOptimal, params, -1).ok());
}

TEST(PercentilesTest, SpotValues) {
  auto row = ComparePercentiles({.epsilon = 1, .delta = 1e-5}, 1);
  ASSERT_TRUE(row.ok());
  EXPECT_EQ(row->lap50, 12);
  EXPECT_EQ(row->opt50, 12);
  EXPECT_LE(row->opt05, row->opt50);
  EXPECT_LE(row->opt50, row->opt95);
  EXPECT_LE(row->opt95, 22);
}

TEST(PercentilesTest, OptimalNeverLater) {
  const std::vector<double> epsilons = LogSpacedGrid(0.01, 3, 24);
  for (double delta : {1e-12, 1e-8, 1e-5, 1e-3}) {
    auto rows = PercentilesOverEpsilon(delta, epsilons);
    ASSERT_TRUE(rows.ok());
    for (const PercentileRow& row : *rows) {
      EXPECT_LE(row.opt05, row.lap05) << row.key << " " << delta;
      EXPECT_LE(row.opt50, row.lap50) << row.key << " " << delta;
      EXPECT_LE(row.opt95, row.lap95) << row.key << " " << delta;
    }
  }
}

TEST(PercentilesTest, RowsFollowGridOrder) {
  const std::vector<double> deltas = LogSpacedGrid(1e-12, 1e-3, 10);
  auto rows = PercentilesOverDelta(0.5, deltas);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), deltas.size());
  for (size_t i = 0; i < deltas.size(); ++i) {
    EXPECT_EQ((*rows)[i].key, deltas[i]);
    if (i > 0) EXPECT_LE((*rows)[i].opt50, (*rows)[i - 1].opt50);
  }
  const std::vector<double> bad = {0.0};
  EXPECT_FALSE(PercentilesOverEpsilon(1e-5, bad).ok());
}

TEST(CompareKappaTest, SpotValues) {
  auto rows = CompareKappa({.epsilon = 1, .delta = 1e-5}, 7);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 7u);
  // Frozen from an independent high-precision evaluation.
  const int64_t opt[] = {12, 23, 33, 44, 55, 66, 77};
  const int64_t lap[] = {12, 25, 37, 50, 64, 77, 91};
  const int64_t gauss[] = {19, 27, 33, 38, 43, 47, 51};
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ((*rows)[i].kappa, i + 1);
    EXPECT_EQ((*rows)[i].opt_mid, opt[i]) << "kappa " << i + 1;
    EXPECT_EQ((*rows)[i].lap_mid, lap[i]) << "kappa " << i + 1;
    EXPECT_EQ((*rows)[i].gauss_mid, gauss[i]) << "kappa " << i + 1;
  }
}

TEST(CompareKappaTest, SingleKappaMatchesMidpoints) {
  const PrivacyParams params{.epsilon = 0.3, .delta = 1e-7};
  auto rows = CompareKappa(params, 1);
  ASSERT_TRUE(rows.ok());
  auto row = ComparePercentiles(params, 0.3);
  EXPECT_EQ(rows->front().opt_mid, row->opt50);
  EXPECT_EQ(rows->front().lap_mid, row->lap50);
  EXPECT_FALSE(CompareKappa(params, 0).ok());
}

TEST(LogSpacedGridTest, CoversEndpoints) {
  const std::vector<double> grid = LogSpacedGrid(1e-12, 1e-3, 64);
  ASSERT_EQ(grid.size(), 64u);
  EXPECT_DOUBLE_EQ(grid.front(), 1e-12);
  EXPECT_DOUBLE_EQ(grid.back(), 1e-3);
  for (size_t i = 1; i < grid.size(); ++i) {
    EXPECT_NEAR(std::log(grid[i] / grid[i - 1]), std::log(1e9) / 63, 1e-12);
  }
}

TEST(FormatDoubleTest, RoundTrips) {
  for (double value : {0.0, 1.0, 0.1, 1e-300, 0.34844773845331321,
                       3.7182818284590452e-5}) {
    const std::string text = FormatDouble(value);
    double parsed = -1;
    std::from_chars(text.data(), text.data() + text.size(), parsed);
    EXPECT_EQ(parsed, value) << text;
  }
  EXPECT_EQ(FormatDouble(0.5), "0.5");
}

TEST(FigureCsvTest, Headers) {
  const std::pair<FigureId, const char*> cases[] = {
      {FigureId::kProbCurve, "n,opt,lap"},
      {FigureId::kMidpointVsEpsilon, "eps,opt05,opt50,opt95,lap05,lap50,lap95"},
      {FigureId::kMidpointVsDelta, "del,opt05,opt50,opt95,lap05,lap50,lap95"},
      {FigureId::kKappaCompare, "kappa,opt_mid,lap_mid,gauss_mid"},
  };
  for (const auto& [id, header] : cases) {
    auto csv = GenerateFigureCsv(DefaultFigureSpec(id, 1, 1e-5));
    ASSERT_TRUE(csv.ok()) << header;
    const std::vector<std::string> lines = Lines(*csv);
    EXPECT_EQ(lines.front(), header);
    const size_t columns = std::count(lines.front().begin(),
                                      lines.front().end(), ',');
    for (const std::string& line : lines) {
      EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns) << line;
    }
  }
}

TEST(FigureCsvTest, RowCounts) {
  EXPECT_EQ(Lines(*GenerateFigureCsv(
                      DefaultFigureSpec(FigureId::kMidpointVsDelta, 1, 0)))
                .size(),
            65u);
  FigureSpec spec = DefaultFigureSpec(FigureId::kKappaCompare, 1, 1e-5);
  spec.kappa_max = 3;
  EXPECT_EQ(Lines(*GenerateFigureCsv(spec)).size(), 4u);
  spec = DefaultFigureSpec(FigureId::kProbCurve, 1, 1e-5);
  spec.n_max = 25;
  const std::vector<std::string> lines = Lines(*GenerateFigureCsv(spec));
  ASSERT_EQ(lines.size(), 27u);
  EXPECT_EQ(lines[1], "0,0,0");
  EXPECT_THAT(lines[12], StartsWith("11,0.3484477384533132"));
  EXPECT_EQ(lines[24], "23,1,0.9999930263297678");
}

TEST(FigureCsvTest, RejectsEmptyOrInvalidGrids) {
  FigureSpec spec;
  EXPECT_FALSE(GenerateFigureCsv(spec).ok());
  spec.epsilons = {0};
  spec.deltas = {1e-5};
  EXPECT_THAT(std::string(GenerateFigureCsv(spec).status().message()),
              HasSubstr("positive"));
}

TEST(FigureCsvTest, IndependentOfThreadCount) {
  const FigureSpec spec =
      DefaultFigureSpec(FigureId::kMidpointVsEpsilon, 1, 1e-6);
  SetThreadCount(1);
  const std::string single = *GenerateFigureCsv(spec);
  SetThreadCount(4);
  const std::string multi = *GenerateFigureCsv(spec);
  SetThreadCount(1);
  EXPECT_EQ(single, multi);
}

TEST(FormatTest, ProbabilitiesAndKappa) {
  const std::vector<double> probs = {0, 0.25, 1};
  EXPECT_EQ(FormatProbabilitiesCsv(probs), "n,prob\n0,0\n1,0.25\n2,1\n");
  const std::vector<KappaRow> rows = {{1, 12, 12, 19}};
  EXPECT_EQ(FormatKappaCsv(rows),
            "kappa,opt_mid,lap_mid,gauss_mid\n1,12,12,19\n");
}

TEST(RunDecisionBenchmarkTest, CountsKeeps) {
  auto primitive = OptimalPrimitive::Create({.epsilon = 1, .delta = 1e-5});
  ASSERT_TRUE(primitive.ok());
  const BenchReport saturated =
      RunDecisionBenchmark(*primitive, 1000, 23, 5, 1);
  EXPECT_EQ(saturated.iterations, 1000);
  EXPECT_EQ(saturated.kept, 1000);
  EXPECT_GE(saturated.seconds, 0);
  EXPECT_EQ(RunDecisionBenchmark(*primitive, 1000, 0, 1, 1).kept, 0);
}

}  // namespace
}  // namespace dp_partition
