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

#include "dp_partition/primitive.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dp_partition/numeric.h"

namespace dp_partition {
namespace {

absl::Status CheckGeneralBudget(double epsilon, double delta) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        "crossover points need a positive effective epsilon");
  }
  if (!(delta > 0 && delta <= 1)) {
    return absl::InvalidArgumentError(
        "crossover points need an effective delta in (0, 1]");
  }
  return absl::OkStatus();
}

absl::StatusOr<int64_t> CheckedCount(double value, absl::string_view what) {
  // 2^62 leaves headroom for n2 = n1 + m and for n + 1 in callers.
  if (!(value < 0x1.0p62)) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " exceeds the supported count range"));
  }
  return static_cast<int64_t>(value);
}

}  // namespace

absl::StatusOr<int64_t> ComputeFirstCrossover(const PrivacyParams& params) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double epsilon = params.effective_epsilon();
  const double delta = params.effective_delta();
  if (absl::Status status = CheckGeneralBudget(epsilon, delta); !status.ok()) {
    return status;
  }
  // (e^eps + 2 delta - 1) / ((e^eps + 1) delta)
  //   = 1 + (1 - delta) tanh(eps / 2) / delta
  const double log_ratio =
      std::log1p((1 - delta) * std::tanh(epsilon / 2) / delta);
  return CheckedCount(1 + TieAwareFloor(log_ratio / epsilon),
                      "first crossover");
}

absl::StatusOr<int64_t> ComputeSecondCrossover(const PrivacyParams& params,
                                               int64_t n1, double pi_n1) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double epsilon = params.effective_epsilon();
  const double delta = params.effective_delta();
  if (absl::Status status = CheckGeneralBudget(epsilon, delta); !status.ok()) {
    return status;
  }
  if (n1 < 1 || !(pi_n1 >= 0 && pi_n1 <= 1)) {
    return absl::InvalidArgumentError(
        "second crossover needs n1 >= 1 and pi(n1) in [0, 1]");
  }
  double log_term =
      std::log1p(std::expm1(epsilon) / delta * (1 - pi_n1));
  if (!std::isfinite(log_term)) {
    // e^eps overflowed; ln(1 + x) ~ ln(x) is exact at this magnitude.
    log_term = epsilon + std::log((1 - pi_n1) / delta);
  }
  absl::StatusOr<int64_t> steps =
      CheckedCount(TieAwareFloor(log_term / epsilon), "second crossover");
  if (!steps.ok()) return steps.status();
  return n1 + std::max<int64_t>(0, *steps);
}

OptimalPrimitive::OptimalPrimitive(const PrivacyParams& params, Regime regime,
                                   int64_t n1, int64_t n2, double pi_n1)
    : params_(params),
      regime_(regime),
      epsilon_(params.effective_epsilon()),
      delta_(params.effective_delta()),
      expm1_epsilon_(std::expm1(params.effective_epsilon())),
      n1_(n1),
      n2_(n2),
      pi_n1_(pi_n1) {}

absl::StatusOr<OptimalPrimitive> OptimalPrimitive::Create(
    const PrivacyParams& params) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double delta = params.effective_delta();
  if (delta == 0) {
    return OptimalPrimitive(params, Regime::kZeroDelta, 0, 0, 0);
  }
  if (params.effective_epsilon() == 0) {
    // First n with n * delta >= 1, evaluated exactly as Probability() does.
    double guess = std::ceil(1 / delta);
    if (!(guess < 0x1.0p62)) {
      return absl::InvalidArgumentError("delta too small for epsilon == 0");
    }
    auto saturation = static_cast<int64_t>(guess);
    while (saturation > 1 &&
           static_cast<double>(saturation - 1) * delta >= 1) {
      --saturation;
    }
    while (static_cast<double>(saturation) * delta < 1) ++saturation;
    return OptimalPrimitive(params, Regime::kZeroEpsilon, saturation - 1,
                            saturation - 1,
                            std::min(1.0, (saturation - 1) * delta));
  }

  absl::StatusOr<int64_t> n1 = ComputeFirstCrossover(params);
  if (!n1.ok()) return n1.status();
  OptimalPrimitive primitive(params, Regime::kGeneral, *n1, *n1, 0);
  primitive.pi_n1_ = std::min(1.0, primitive.GrowthBranch(*n1));
  absl::StatusOr<int64_t> n2 =
      ComputeSecondCrossover(params, *n1, primitive.pi_n1_);
  if (!n2.ok()) return n2.status();
  primitive.n2_ = *n2;
  return primitive;
}

double OptimalPrimitive::GrowthBranch(int64_t n) const {
  if (n == 1) return delta_;
  return std::expm1(static_cast<double>(n) * epsilon_) / expm1_epsilon_ *
         delta_;
}

double OptimalPrimitive::Probability(int64_t n) const {
  if (n <= 0) return 0;
  switch (regime_) {
    case Regime::kZeroDelta:
      return 0;
    case Regime::kZeroEpsilon:
      return std::min(1.0, static_cast<double>(n) * delta_);
    case Regime::kGeneral:
      break;
  }
  if (n <= n1_) return std::min(1.0, GrowthBranch(n));
  if (n > n2_) return 1;
  const double m = static_cast<double>(n - n1_);
  const double decay = std::exp(-m * epsilon_);
  const double value = -std::expm1(-m * epsilon_) *
                           (1 + delta_ / expm1_epsilon_) +
                       decay * pi_n1_;
  return std::min(1.0, value);
}

std::optional<int64_t> OptimalPrimitive::SaturationCount() const {
  if (regime_ == Regime::kZeroDelta) return std::nullopt;
  return n2_ + 1;
}

double ExpectedOutputSize(std::span<const int64_t> counts,
                          const OptimalPrimitive& primitive) {
  double total = 0;
  for (int64_t count : counts) total += primitive.Probability(count);
  return total;
}

}  // namespace dp_partition
