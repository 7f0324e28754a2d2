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
#include <chrono>
#include <cmath>
#include <optional>

#include <omp.h>

#include "absl/strings/str_cat.h"
#include "dp_partition/baselines.h"
#include "dp_partition/random.h"

namespace dp_partition {
namespace {

template <typename Row, typename Fn>
absl::StatusOr<std::vector<Row>> EvaluateGrid(size_t n, const Fn& fn) {
  std::vector<std::optional<absl::StatusOr<Row>>> results(n);
  const auto count = static_cast<int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t i = 0; i < count; ++i) results[i] = fn(static_cast<size_t>(i));
  std::vector<Row> rows;
  rows.reserve(n);
  for (auto& result : results) {
    if (!result->ok()) return result->status();
    rows.push_back(**result);
  }
  return rows;
}

template <typename Curve>
absl::Status Percentiles(const Curve& curve, int64_t& p05, int64_t& p50,
                         int64_t& p95) {
  for (auto [q, out] : {std::pair{0.05, &p05}, {0.5, &p50}, {0.95, &p95}}) {
    absl::StatusOr<int64_t> n = PercentileCount(curve, q);
    if (!n.ok()) return n.status();
    *out = *n;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Strategy> ParseStrategy(absl::string_view name) {
  if (name == "opt") return Strategy::kOptimal;
  if (name == "laplace") return Strategy::kLaplace;
  if (name == "gauss") return Strategy::kGaussian;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown strategy '", name, "', expected opt, laplace or gauss"));
}

absl::StatusOr<std::vector<double>> KeepProbabilities(
    Strategy strategy, const PrivacyParams& params, int64_t n_max,
    int64_t kappa) {
  if (n_max < 0) return absl::InvalidArgumentError("n_max must be >= 0");
  std::vector<double> out(static_cast<size_t>(n_max) + 1);
  auto fill = [&](const auto& primitive) {
    for (int64_t n = 0; n <= n_max; ++n) out[n] = primitive.Probability(n);
  };
  switch (strategy) {
    case Strategy::kOptimal: {
      absl::StatusOr<OptimalPrimitive> primitive =
          OptimalPrimitive::Create(params);
      if (!primitive.ok()) return primitive.status();
      fill(*primitive);
      break;
    }
    case Strategy::kLaplace: {
      absl::StatusOr<LaplacePrimitive> primitive =
          LaplacePrimitive::Create(params);
      if (!primitive.ok()) return primitive.status();
      fill(*primitive);
      break;
    }
    case Strategy::kGaussian: {
      absl::StatusOr<GaussianPrimitive> primitive =
          GaussianPrimitive::Create(params, kappa);
      if (!primitive.ok()) return primitive.status();
      fill(*primitive);
      break;
    }
  }
  return out;
}

absl::StatusOr<PercentileRow> ComparePercentiles(const PrivacyParams& params,
                                                 double key) {
  absl::StatusOr<OptimalPrimitive> opt = OptimalPrimitive::Create(params);
  if (!opt.ok()) return opt.status();
  absl::StatusOr<LaplacePrimitive> lap = LaplacePrimitive::Create(params);
  if (!lap.ok()) return lap.status();
  PercentileRow row;
  row.key = key;
  absl::Status status =
      Percentiles([&](int64_t n) { return opt->Probability(n); }, row.opt05,
                  row.opt50, row.opt95);
  if (!status.ok()) return status;
  status = Percentiles([&](int64_t n) { return lap->Probability(n); },
                       row.lap05, row.lap50, row.lap95);
  if (!status.ok()) return status;
  return row;
}

absl::StatusOr<std::vector<PercentileRow>> PercentilesOverEpsilon(
    double delta, std::span<const double> epsilons) {
  return EvaluateGrid<PercentileRow>(epsilons.size(), [&](size_t i) {
    return ComparePercentiles(PrivacyParams{epsilons[i], delta}, epsilons[i]);
  });
}

absl::StatusOr<std::vector<PercentileRow>> PercentilesOverDelta(
    double epsilon, std::span<const double> deltas) {
  return EvaluateGrid<PercentileRow>(deltas.size(), [&](size_t i) {
    return ComparePercentiles(PrivacyParams{epsilon, deltas[i]}, deltas[i]);
  });
}

absl::StatusOr<std::vector<KappaRow>> CompareKappa(const PrivacyParams& params,
                                                   int64_t kappa_max) {
  if (kappa_max < 1) return absl::InvalidArgumentError("kappa_max must be >= 1");
  return EvaluateGrid<KappaRow>(
      static_cast<size_t>(kappa_max),
      [&](size_t i) -> absl::StatusOr<KappaRow> {
        const auto kappa = static_cast<int64_t>(i) + 1;
        absl::StatusOr<PrivacyParams> divided = DivideBudget(params, kappa);
        if (!divided.ok()) return divided.status();
        absl::StatusOr<OptimalPrimitive> opt =
            OptimalPrimitive::Create(*divided);
        if (!opt.ok()) return opt.status();
        absl::StatusOr<LaplacePrimitive> lap =
            LaplacePrimitive::Create(*divided);
        if (!lap.ok()) return lap.status();
        absl::StatusOr<GaussianPrimitive> gauss =
            GaussianPrimitive::Create(params, kappa);
        if (!gauss.ok()) return gauss.status();

        KappaRow row{.kappa = kappa};
        for (auto [curve_mid, out] :
             {std::pair{MidpointCount([&](int64_t n) {
                          return opt->Probability(n);
                        }),
                        &row.opt_mid},
              {MidpointCount([&](int64_t n) { return lap->Probability(n); }),
               &row.lap_mid},
              {MidpointCount(
                   [&](int64_t n) { return gauss->Probability(n); }),
               &row.gauss_mid}}) {
          if (!curve_mid.ok()) return curve_mid.status();
          *out = *curve_mid;
        }
        return row;
      });
}

std::vector<double> LogSpacedGrid(double lo, double hi, int points) {
  std::vector<double> grid;
  if (points <= 0) return grid;
  if (points == 1) return {lo};
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    grid.push_back(i == points - 1 ? hi : std::exp(log_lo + step * i));
  }
  grid.front() = lo;
  return grid;
}

absl::StatusOr<FigureId> ParseFigureId(absl::string_view name) {
  if (name == "prob-curve") return FigureId::kProbCurve;
  if (name == "midpoint-vs-eps") return FigureId::kMidpointVsEpsilon;
  if (name == "midpoint-vs-delta") return FigureId::kMidpointVsDelta;
  if (name == "kappa-compare") return FigureId::kKappaCompare;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown figure '", name,
      "', expected prob-curve, midpoint-vs-eps, midpoint-vs-delta or "
      "kappa-compare"));
}

FigureSpec DefaultFigureSpec(FigureId id, double epsilon, double delta) {
  constexpr int kGridPoints = 64;
  FigureSpec spec;
  spec.id = id;
  switch (id) {
    case FigureId::kMidpointVsEpsilon:
      spec.epsilons = LogSpacedGrid(0.01, 3, kGridPoints);
      spec.deltas = {delta};
      break;
    case FigureId::kMidpointVsDelta:
      spec.epsilons = {epsilon};
      spec.deltas = LogSpacedGrid(1e-12, 1e-3, kGridPoints);
      break;
    case FigureId::kProbCurve:
    case FigureId::kKappaCompare:
      spec.epsilons = {epsilon};
      spec.deltas = {delta};
      break;
  }
  return spec;
}

absl::StatusOr<std::string> GenerateFigureCsv(const FigureSpec& spec) {
  if (spec.epsilons.empty() || spec.deltas.empty()) {
    return absl::InvalidArgumentError("figure grids must be non-empty");
  }
  for (double epsilon : spec.epsilons) {
    if (!(epsilon > 0)) {
      return absl::InvalidArgumentError("figure epsilons must be positive");
    }
  }
  switch (spec.id) {
    case FigureId::kProbCurve: {
      const PrivacyParams params{spec.epsilons.front(), spec.deltas.front()};
      absl::StatusOr<std::vector<double>> opt =
          KeepProbabilities(Strategy::kOptimal, params, spec.n_max);
      if (!opt.ok()) return opt.status();
      absl::StatusOr<std::vector<double>> lap =
          KeepProbabilities(Strategy::kLaplace, params, spec.n_max);
      if (!lap.ok()) return lap.status();
      std::string out = "n,opt,lap\n";
      for (size_t n = 0; n < opt->size(); ++n) {
        absl::StrAppend(&out, n, ",", FormatDouble((*opt)[n]), ",",
                        FormatDouble((*lap)[n]), "\n");
      }
      return out;
    }
    case FigureId::kMidpointVsEpsilon: {
      absl::StatusOr<std::vector<PercentileRow>> rows =
          PercentilesOverEpsilon(spec.deltas.front(), spec.epsilons);
      if (!rows.ok()) return rows.status();
      return FormatPercentileCsv(*rows, "eps");
    }
    case FigureId::kMidpointVsDelta: {
      absl::StatusOr<std::vector<PercentileRow>> rows =
          PercentilesOverDelta(spec.epsilons.front(), spec.deltas);
      if (!rows.ok()) return rows.status();
      return FormatPercentileCsv(*rows, "del");
    }
    case FigureId::kKappaCompare: {
      absl::StatusOr<std::vector<KappaRow>> rows = CompareKappa(
          PrivacyParams{spec.epsilons.front(), spec.deltas.front()},
          spec.kappa_max);
      if (!rows.ok()) return rows.status();
      return FormatKappaCsv(*rows);
    }
  }
  return absl::InternalError("unhandled figure id");
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string FormatProbabilitiesCsv(std::span<const double> probabilities) {
  std::string out = "n,prob\n";
  for (size_t n = 0; n < probabilities.size(); ++n) {
    absl::StrAppend(&out, n, ",", FormatDouble(probabilities[n]), "\n");
  }
  return out;
}

std::string FormatPercentileCsv(std::span<const PercentileRow> rows,
                                absl::string_view key_column) {
  std::string out =
      absl::StrCat(key_column, ",opt05,opt50,opt95,lap05,lap50,lap95\n");
  for (const PercentileRow& row : rows) {
    absl::StrAppend(&out, FormatDouble(row.key), ",", row.opt05, ",",
                    row.opt50, ",", row.opt95, ",", row.lap05, ",", row.lap50,
                    ",", row.lap95, "\n");
  }
  return out;
}

std::string FormatKappaCsv(std::span<const KappaRow> rows) {
  std::string out = "kappa,opt_mid,lap_mid,gauss_mid\n";
  for (const KappaRow& row : rows) {
    absl::StrAppend(&out, row.kappa, ",", row.opt_mid, ",", row.lap_mid, ",",
                    row.gauss_mid, "\n");
  }
  return out;
}

BenchReport RunDecisionBenchmark(const OptimalPrimitive& primitive,
                                 int64_t iterations, int64_t first_count,
                                 int64_t span, uint64_t seed) {
  RandomEngine rng(MixSeed(seed));
  span = std::max<int64_t>(1, span);
  int64_t kept = 0;
  int64_t n = first_count;
  const auto start = std::chrono::steady_clock::now();
  for (int64_t i = 0; i < iterations; ++i) {
    kept += primitive.ShouldKeep(n, rng);
    if (++n == first_count + span) n = first_count;
  }
  const auto stop = std::chrono::steady_clock::now();
  BenchReport report;
  report.iterations = iterations;
  report.seconds = std::chrono::duration<double>(stop - start).count();
  report.ns_per_op =
      iterations > 0 ? report.seconds * 1e9 / static_cast<double>(iterations)
                     : 0;
  report.kept = kept;
  return report;
}

}  // namespace dp_partition
