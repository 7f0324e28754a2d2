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

// The optimal (epsilon, delta)-DP partition selection primitive: the largest
// keep-probability curve over unique-user counts that satisfies DP when each
// user contributes to one partition. Evaluation is O(1) in the count.

#ifndef DP_PARTITION_PRIMITIVE_H_
#define DP_PARTITION_PRIMITIVE_H_

#include <cstdint>
#include <optional>
#include <span>

#include "absl/status/statusor.h"
#include "dp_partition/privacy_params.h"
#include "dp_partition/random.h"

namespace dp_partition {

// Last count on the exponential-growth branch:
//   1 + floor(ln((e^eps + 2 delta - 1) / ((e^eps + 1) delta)) / eps)
// with the effective budget. Requires eps > 0 and delta in (0, 1].
absl::StatusOr<int64_t> ComputeFirstCrossover(const PrivacyParams& params);

// Last count before the curve saturates at 1:
//   n1 + floor(ln(1 + (e^eps - 1) / delta * (1 - pi_n1)) / eps).
absl::StatusOr<int64_t> ComputeSecondCrossover(const PrivacyParams& params,
                                               int64_t n1, double pi_n1);

class OptimalPrimitive {
 public:
  // Handles the degenerate budgets too: delta == 0 gives the zero curve and
  // epsilon == 0 gives min(1, n * delta).
  static absl::StatusOr<OptimalPrimitive> Create(const PrivacyParams& params);

  // Keep probability for a partition with `n` unique users. pi(0) == 0.
  double Probability(int64_t n) const;

  // One Bernoulli(Probability(n)) draw.
  bool ShouldKeep(int64_t n, RandomEngine& rng) const {
    return Bernoulli(Probability(n), rng);
  }

  // Smallest count whose keep probability is exactly 1; nullopt when no
  // count ever saturates (delta == 0). Counting can stop here.
  std::optional<int64_t> SaturationCount() const;

  const PrivacyParams& params() const { return params_; }
  int64_t n1() const { return n1_; }
  int64_t n2() const { return n2_; }
  double pi_n1() const { return pi_n1_; }

 private:
  enum class Regime { kGeneral, kZeroDelta, kZeroEpsilon };

  OptimalPrimitive(const PrivacyParams& params, Regime regime, int64_t n1,
                   int64_t n2, double pi_n1);

  double GrowthBranch(int64_t n) const;

  PrivacyParams params_;
  Regime regime_;
  double epsilon_;  // effective
  double delta_;    // effective
  double expm1_epsilon_;
  int64_t n1_;
  int64_t n2_;
  double pi_n1_;
};

// Expected number of released partitions: sum of Probability over counts.
double ExpectedOutputSize(std::span<const int64_t> counts,
                          const OptimalPrimitive& primitive);

}  // namespace dp_partition

#endif  // DP_PARTITION_PRIMITIVE_H_
