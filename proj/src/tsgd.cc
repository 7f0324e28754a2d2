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

#include "dp_partition/tsgd.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "dp_partition/numeric.h"

namespace dp_partition {

absl::StatusOr<TruncatedGeometric> TruncatedGeometric::Create(double p,
                                                              int64_t k) {
  if (!(p > 0 && p < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("success probability must lie in (0, 1), got ", p));
  }
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("truncation bound must be >= 1, got ", k));
  }
  const double epsilon = -std::log1p(-p);
  // 1 + (1 - p) - 2 (1 - p)^(k+1) = (1 - r) + 2 r (1 - r^k), r = 1 - p.
  const double r = std::exp(-epsilon);
  const double normalizer =
      p + 2 * r * -std::expm1(-static_cast<double>(k) * epsilon);
  return TruncatedGeometric(p, k, epsilon, p / normalizer);
}

absl::StatusOr<TruncatedGeometric> TruncatedGeometric::ForPrivacy(
    const PrivacyParams& params) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double epsilon = params.effective_epsilon();
  const double delta = params.effective_delta();
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        "truncated geometric noise needs a positive effective epsilon");
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        "truncated geometric noise needs an effective delta in (0, 1)");
  }
  const double log_ratio =
      std::log1p((1 - delta) * std::tanh(epsilon / 2) / delta);
  const double k = std::max(1.0, TieAwareCeil(log_ratio / epsilon));
  if (!(k < 0x1.0p62)) {
    return absl::InvalidArgumentError(
        "truncation bound exceeds the supported count range");
  }
  return Create(-std::expm1(-epsilon), static_cast<int64_t>(k));
}

double TruncatedGeometric::Pmf(int64_t x) const {
  if (x < -k_ || x > k_) return 0;
  return c_ * std::exp(-static_cast<double>(x < 0 ? -x : x) * epsilon_);
}

double TruncatedGeometric::UpperMass(int64_t j) const {
  if (j <= 0) return 0;
  const double jd = static_cast<double>(j);
  return c_ * std::exp((jd - static_cast<double>(k_)) * epsilon_) *
         -std::expm1(-jd * epsilon_) / std::expm1(epsilon_);
}

double TruncatedGeometric::Tail(int64_t mu, int64_t y) const {
  if (mu < y - k_) return 0;
  if (mu <= y) return UpperMass(mu + k_ + 1 - y);
  if (mu < y + k_) return 1 - UpperMass(k_ + y - mu);
  return 1;
}

int64_t TruncatedGeometric::Sample(RandomEngine& rng) const {
  if (k_ > kInverseTransformMaxK) return SampleByRejection(rng);
  // Largest x with P(X >= x) > u. Tail(0, -k) == 1 > u and
  // Tail(0, k + 1) == 0 <= u bracket the search.
  const double u = UniformDouble(rng);
  int64_t lo = -k_;
  int64_t hi = k_ + 1;
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (Tail(0, mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

int64_t TruncatedGeometric::SampleByRejection(RandomEngine& rng) const {
  // The difference of two i.i.d. geometric(p) variables on {0, 1, ...} has
  // pmf proportional to (1 - p)^|x|.
  auto geometric = [&] {
    const double u = 1 - UniformDouble(rng);  // (0, 1]
    return std::floor(-std::log(u) / epsilon_);
  };
  const double bound = static_cast<double>(k_);
  while (true) {
    const double x = geometric() - geometric();
    if (std::abs(x) <= bound) return static_cast<int64_t>(x);
  }
}

double ThresholdKeepProbability(const TruncatedGeometric& noise, int64_t n) {
  return noise.Tail(n, noise.k() + 1);
}

absl::StatusOr<double> SelectionProbabilityViaThreshold(
    const PrivacyParams& params, int64_t n) {
  absl::StatusOr<TruncatedGeometric> noise =
      TruncatedGeometric::ForPrivacy(params);
  if (!noise.ok()) return noise.status();
  return ThresholdKeepProbability(*noise, n);
}

}  // namespace dp_partition
