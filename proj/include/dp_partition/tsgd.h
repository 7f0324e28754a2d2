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

// k-truncated symmetric geometric distribution (k-TSGD) and the truncated
// geometric mechanism built on it.
//
// P(X = x) = c (1 - p)^|x| for x in [-k, k], with
// c = p / (1 + (1 - p) - 2 (1 - p)^(k + 1)).
//
// With p = 1 - e^-eps and the smallest k such that P(X = k) <= delta, adding X
// to a sensitivity-1 count is (eps, delta)-DP, and keeping a partition when
// n + X > k reproduces the optimal primitive whenever the crossover is an
// integer.

#ifndef DP_PARTITION_TSGD_H_
#define DP_PARTITION_TSGD_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dp_partition/privacy_params.h"
#include "dp_partition/random.h"

namespace dp_partition {

class TruncatedGeometric {
 public:
  // Largest k for which Sample() uses inverse-transform search; larger
  // supports sample a two-sided geometric and reject outside [-k, k].
  static constexpr int64_t kInverseTransformMaxK = 1'000'000;

  // Requires p in (0, 1) and k >= 1.
  static absl::StatusOr<TruncatedGeometric> Create(double p, int64_t k);

  // Mechanism parameters for the effective budget: p = 1 - e^-eps and
  // k = ceil(ln((e^eps + 2 delta - 1) / ((e^eps + 1) delta)) / eps).
  // Requires eps > 0 and delta in (0, 1).
  static absl::StatusOr<TruncatedGeometric> ForPrivacy(
      const PrivacyParams& params);

  double p() const { return p_; }
  int64_t k() const { return k_; }
  double c() const { return c_; }
  // -ln(1 - p); the per-step log-ratio of the pmf.
  double epsilon() const { return epsilon_; }

  double Pmf(int64_t x) const;

  // P(mu + X >= y), closed form.
  double Tail(int64_t mu, int64_t y) const;

  // P(X = k). The delta the mechanism actually spends after rounding k up;
  // never above the requested delta for ForPrivacy() parameters.
  double EffectiveDelta() const { return Pmf(k_); }

  int64_t Sample(RandomEngine& rng) const;

 private:
  TruncatedGeometric(double p, int64_t k, double epsilon, double c)
      : p_(p), k_(k), epsilon_(epsilon), c_(c) {}

  // c * e^(-(k - j) eps) * (1 - e^(-j eps)) / (e^eps - 1), i.e.
  // P(X >= k + 1 - j) for j in [0, k + 1].
  double UpperMass(int64_t j) const;

  int64_t SampleByRejection(RandomEngine& rng) const;

  double p_;
  int64_t k_;
  double epsilon_;
  double c_;
};

// Probability that a partition with `n` users survives thresholding at k:
// P(n + X >= k + 1).
double ThresholdKeepProbability(const TruncatedGeometric& noise, int64_t n);

// Same, building the mechanism from `params` first.
absl::StatusOr<double> SelectionProbabilityViaThreshold(
    const PrivacyParams& params, int64_t n);

}  // namespace dp_partition

#endif  // DP_PARTITION_TSGD_H_
