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

// Noisy-threshold baselines the optimal primitive is compared against, and the
// midpoint / percentile search over any keep-probability curve.

#ifndef DP_PARTITION_BASELINES_H_
#define DP_PARTITION_BASELINES_H_

#include <concepts>
#include <cstdint>

#include "absl/status/statusor.h"
#include "dp_partition/privacy_params.h"
#include "dp_partition/random.h"

namespace dp_partition {

// Keep iff n + Lap(1/eps) >= 1 - ln(2 delta) / eps.
class LaplacePrimitive {
 public:
  // Uses the effective budget; needs eps > 0 and delta in (0, 1).
  static absl::StatusOr<LaplacePrimitive> Create(const PrivacyParams& params);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double threshold() const { return threshold_; }

  // Closed-form Laplace tail. Absent partitions (n == 0) are never kept.
  double Probability(int64_t n) const;

  bool ShouldKeep(int64_t n, RandomEngine& rng) const;

 private:
  LaplacePrimitive(double epsilon, double delta);

  double epsilon_;
  double delta_;
  double threshold_;
};

// delta(sigma) of the Gaussian mechanism with L2 sensitivity `sensitivity`
// at privacy level `epsilon`, from the exact privacy profile:
//   Phi(s/(2 sigma) - eps sigma/s) - e^eps Phi(-s/(2 sigma) - eps sigma/s).
double GaussianMechanismDelta(double sigma, double epsilon,
                              double sensitivity);

// Smallest sigma with GaussianMechanismDelta(sigma) <= delta, by bisection.
absl::StatusOr<double> CalibrateGaussianSigma(double epsilon, double delta,
                                              double sensitivity);

// Gaussian thresholding for users contributing to up to kappa partitions:
// noise is calibrated for L2 sensitivity sqrt(kappa) with delta_noise and the
// threshold 1 + sigma * Phi^-1((1 - delta_threshold)^(1/kappa)) keeps every
// one of a user's kappa singleton partitions below it except with probability
// delta_threshold. The split of delta is chosen to minimize the threshold.
class GaussianPrimitive {
 public:
  static constexpr int kSplitSearchIterations = 64;

  static absl::StatusOr<GaussianPrimitive> Create(const PrivacyParams& params,
                                                  int64_t kappa);

  // Threshold for a fixed split; exposed for the split search and tests.
  static absl::StatusOr<GaussianPrimitive> CreateWithSplit(
      const PrivacyParams& params, int64_t kappa, double delta_noise);

  double epsilon() const { return epsilon_; }
  double delta_noise() const { return delta_noise_; }
  double delta_threshold() const { return delta_threshold_; }
  double sigma() const { return sigma_; }
  double threshold() const { return threshold_; }
  int64_t kappa() const { return kappa_; }

  // Gaussian survival at (threshold - n) / sigma; 0 at n == 0.
  double Probability(int64_t n) const;

 private:
  GaussianPrimitive(double epsilon, double delta_noise, double delta_threshold,
                    double sigma, double threshold, int64_t kappa)
      : epsilon_(epsilon),
        delta_noise_(delta_noise),
        delta_threshold_(delta_threshold),
        sigma_(sigma),
        threshold_(threshold),
        kappa_(kappa) {}

  double epsilon_;
  double delta_noise_;
  double delta_threshold_;
  double sigma_;
  double threshold_;
  int64_t kappa_;
};

template <typename F>
concept KeepProbabilityCurve = std::invocable<const F&, int64_t> &&
    std::convertible_to<std::invoke_result_t<const F&, int64_t>, double>;

// Smallest n >= 1 with curve(n) >= q, for a nondecreasing curve. Exponential
// search for an upper bracket, then binary search.
template <KeepProbabilityCurve F>
absl::StatusOr<int64_t> PercentileCount(const F& curve, double q) {
  if (!(q >= 0 && q <= 1)) {
    return absl::InvalidArgumentError("percentile level must lie in [0, 1]");
  }
  int64_t hi = 1;
  while (curve(hi) < q) {
    if (hi > (int64_t{1} << 61)) {
      return absl::InvalidArgumentError("curve never reaches the level");
    }
    hi *= 2;
  }
  int64_t lo = hi / 2;  // curve(lo) < q unless lo == 0
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (curve(mid) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Count at which the keep probability first reaches one half.
template <KeepProbabilityCurve F>
absl::StatusOr<int64_t> MidpointCount(const F& curve) {
  return PercentileCount(curve, 0.5);
}

}  // namespace dp_partition

#endif  // DP_PARTITION_BASELINES_H_
