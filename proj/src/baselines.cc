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

#include <boost/math/distributions/normal.hpp>

#include "absl/strings/str_cat.h"
#include "dp_partition/numeric.h"

namespace dp_partition {
namespace {

absl::Status CheckThresholdBudget(double epsilon, double delta) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        "thresholding needs a positive effective epsilon");
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        "thresholding needs an effective delta in (0, 1)");
  }
  return absl::OkStatus();
}

// Upper-tail quantile: z with P(N(0, 1) > z) = q.
double NormalUpperQuantile(double q) {
  return boost::math::quantile(
      boost::math::complement(boost::math::normal_distribution<double>(), q));
}

}  // namespace

LaplacePrimitive::LaplacePrimitive(double epsilon, double delta)
    : epsilon_(epsilon),
      delta_(delta),
      threshold_(1 - std::log(2 * delta) / epsilon) {}

absl::StatusOr<LaplacePrimitive> LaplacePrimitive::Create(
    const PrivacyParams& params) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double epsilon = params.effective_epsilon();
  const double delta = params.effective_delta();
  if (absl::Status status = CheckThresholdBudget(epsilon, delta);
      !status.ok()) {
    return status;
  }
  return LaplacePrimitive(epsilon, delta);
}

double LaplacePrimitive::Probability(int64_t n) const {
  if (n <= 0) return 0;
  const double gap = static_cast<double>(n) - threshold_;
  if (gap <= 0) return 0.5 * std::exp(epsilon_ * gap);
  return 1 - 0.5 * std::exp(-epsilon_ * gap);
}

bool LaplacePrimitive::ShouldKeep(int64_t n, RandomEngine& rng) const {
  if (n <= 0) return false;
  // Lap(b) as the difference of two Exp(1/b) draws.
  const double e1 = -std::log(1 - UniformDouble(rng));
  const double e2 = -std::log(1 - UniformDouble(rng));
  return static_cast<double>(n) + (e1 - e2) / epsilon_ >= threshold_;
}

double GaussianMechanismDelta(double sigma, double epsilon,
                              double sensitivity) {
  const double a = sensitivity / (2 * sigma);
  const double b = epsilon * sigma / sensitivity;
  return NormalCdf(a - b) - std::exp(epsilon) * NormalCdf(-a - b);
}

absl::StatusOr<double> CalibrateGaussianSigma(double epsilon, double delta,
                                              double sensitivity) {
  if (!(epsilon > 0) || !(delta > 0 && delta < 1) || !(sensitivity > 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Gaussian calibration needs eps > 0, delta in (0, 1) and positive "
        "sensitivity; got eps=",
        epsilon, " delta=", delta, " sensitivity=", sensitivity));
  }
  auto excess = [&](double sigma) {
    return GaussianMechanismDelta(sigma, epsilon, sensitivity) - delta;
  };
  double lo = sensitivity;
  double hi = sensitivity;
  for (int i = 0; excess(lo) <= 0; ++i) {
    if (i > 200) return absl::InvalidArgumentError("cannot bracket sigma");
    lo /= 2;
  }
  for (int i = 0; excess(hi) > 0; ++i) {
    if (i > 200) return absl::InvalidArgumentError("cannot bracket sigma");
    hi *= 2;
  }
  // Invariant: excess(lo) > 0 >= excess(hi).
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (excess(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

absl::StatusOr<GaussianPrimitive> GaussianPrimitive::CreateWithSplit(
    const PrivacyParams& params, int64_t kappa, double delta_noise) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  const double epsilon = params.effective_epsilon();
  const double delta = params.effective_delta();
  if (absl::Status status = CheckThresholdBudget(epsilon, delta);
      !status.ok()) {
    return status;
  }
  if (kappa < 1) {
    return absl::InvalidArgumentError("kappa must be a positive integer");
  }
  if (!(delta_noise > 0 && delta_noise < delta)) {
    return absl::InvalidArgumentError(
        "noise share of delta must lie strictly inside (0, delta)");
  }
  const double delta_threshold = delta - delta_noise;
  absl::StatusOr<double> sigma = CalibrateGaussianSigma(
      epsilon, delta_noise, std::sqrt(static_cast<double>(kappa)));
  if (!sigma.ok()) return sigma.status();
  // Per-partition exceedance q with 1 - (1 - q)^kappa = delta_threshold.
  const double q = -std::expm1(std::log1p(-delta_threshold) /
                               static_cast<double>(kappa));
  const double threshold = 1 + *sigma * NormalUpperQuantile(q);
  return GaussianPrimitive(epsilon, delta_noise, delta_threshold, *sigma,
                           threshold, kappa);
}

absl::StatusOr<GaussianPrimitive> GaussianPrimitive::Create(
    const PrivacyParams& params, int64_t kappa) {
  const double delta = params.effective_delta();
  auto at = [&](double logit) {
    const double share = 1 / (1 + std::exp(-logit));
    return CreateWithSplit(params, kappa, delta * share);
  };
  // Golden-section search over the logit of delta_noise / delta.
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = -20;
  double b = 20;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  absl::StatusOr<GaussianPrimitive> f1 = at(x1);
  absl::StatusOr<GaussianPrimitive> f2 = at(x2);
  if (!f1.ok()) return f1.status();
  if (!f2.ok()) return f2.status();
  for (int i = 0; i < kSplitSearchIterations; ++i) {
    if (f1->threshold() < f2->threshold()) {
      b = x2;
      x2 = x1;
      f2 = std::move(f1);
      x1 = b - inv_phi * (b - a);
      f1 = at(x1);
      if (!f1.ok()) return f1.status();
    } else {
      a = x1;
      x1 = x2;
      f1 = std::move(f2);
      x2 = a + inv_phi * (b - a);
      f2 = at(x2);
      if (!f2.ok()) return f2.status();
    }
  }
  return f1->threshold() < f2->threshold() ? f1 : f2;
}

double GaussianPrimitive::Probability(int64_t n) const {
  if (n <= 0) return 0;
  return NormalSurvival((threshold_ - static_cast<double>(n)) / sigma_);
}

}  // namespace dp_partition
