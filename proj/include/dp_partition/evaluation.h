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

// Figure data for comparing the optimal primitive with the Laplace and
// Gaussian thresholding baselines. Everything here is closed-form and
// deterministic; grid points are evaluated in parallel.

#ifndef DP_PARTITION_EVALUATION_H_
#define DP_PARTITION_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "dp_partition/primitive.h"
#include "dp_partition/privacy_params.h"

namespace dp_partition {

enum class Strategy { kOptimal, kLaplace, kGaussian };

absl::StatusOr<Strategy> ParseStrategy(absl::string_view name);

// pi(n) for n in [0, n_max]. `kappa` only affects kGaussian.
absl::StatusOr<std::vector<double>> KeepProbabilities(
    Strategy strategy, const PrivacyParams& params, int64_t n_max,
    int64_t kappa = 1);

// 5th, 50th and 95th percentile counts of both strategies at one budget.
// `key` is the grid coordinate (epsilon or delta) the row belongs to.
struct PercentileRow {
  double key = 0;
  int64_t opt05 = 0;
  int64_t opt50 = 0;
  int64_t opt95 = 0;
  int64_t lap05 = 0;
  int64_t lap50 = 0;
  int64_t lap95 = 0;
};

absl::StatusOr<PercentileRow> ComparePercentiles(const PrivacyParams& params,
                                                 double key);

// Rows across an epsilon grid at fixed delta, or a delta grid at fixed
// epsilon.
absl::StatusOr<std::vector<PercentileRow>> PercentilesOverEpsilon(
    double delta, std::span<const double> epsilons);
absl::StatusOr<std::vector<PercentileRow>> PercentilesOverDelta(
    double epsilon, std::span<const double> deltas);

// Midpoints as a function of the number of partitions per user. The optimal
// and Laplace strategies split (eps, delta) evenly over kappa; the Gaussian
// one uses L2 sensitivity sqrt(kappa) at the full budget.
struct KappaRow {
  int64_t kappa = 0;
  int64_t opt_mid = 0;
  int64_t lap_mid = 0;
  int64_t gauss_mid = 0;
};

absl::StatusOr<std::vector<KappaRow>> CompareKappa(const PrivacyParams& params,
                                                   int64_t kappa_max);

// `points` log-spaced values covering [lo, hi], endpoints included.
std::vector<double> LogSpacedGrid(double lo, double hi, int points);

enum class FigureId {
  kProbCurve,
  kMidpointVsEpsilon,
  kMidpointVsDelta,
  kKappaCompare,
};

absl::StatusOr<FigureId> ParseFigureId(absl::string_view name);

struct FigureSpec {
  FigureId id = FigureId::kProbCurve;
  std::vector<double> epsilons;
  std::vector<double> deltas;
  int64_t kappa_max = 8;
  int64_t n_max = 20;
};

// Default grids: epsilon in [0.01, 3] and delta in [1e-12, 1e-3], 64
// log-spaced points each. For midpoint-vs-delta `epsilon` is the fixed
// budget; for midpoint-vs-epsilon `delta` is.
FigureSpec DefaultFigureSpec(FigureId id, double epsilon, double delta);

// CSV text for a figure:
//   prob-curve         n,opt,lap           (first epsilon and delta)
//   midpoint-vs-eps    eps,opt05,opt50,opt95,lap05,lap50,lap95
//   midpoint-vs-delta  del,opt05,opt50,opt95,lap05,lap50,lap95
//   kappa-compare      kappa,opt_mid,lap_mid,gauss_mid
absl::StatusOr<std::string> GenerateFigureCsv(const FigureSpec& spec);

std::string FormatProbabilitiesCsv(std::span<const double> probabilities);
std::string FormatPercentileCsv(std::span<const PercentileRow> rows,
                                absl::string_view key_column);
std::string FormatKappaCsv(std::span<const KappaRow> rows);

// Shortest decimal that parses back to the same double.
std::string FormatDouble(double value);

struct BenchReport {
  int64_t iterations = 0;
  double seconds = 0;
  double ns_per_op = 0;
  int64_t kept = 0;
};

// Times `iterations` closed-form evaluations plus Bernoulli draws. Counts
// cycle through [first_count, first_count + span) so no value is hoisted.
BenchReport RunDecisionBenchmark(const OptimalPrimitive& primitive,
                                 int64_t iterations, int64_t first_count,
                                 int64_t span, uint64_t seed);

}  // namespace dp_partition

#endif  // DP_PARTITION_EVALUATION_H_
