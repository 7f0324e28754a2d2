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

// Partition release over a histogram: selection only, thresholded noisy
// counts, and dual-threshold release with public partitions.
//
// Every partition draws from its own stream derived from the master seed and
// its key, so results do not depend on thread count or scheduling. The
// functions in `serial` are single-threaded reference loops over the same
// per-partition decisions; the top-level functions are the OpenMP kernels.

#ifndef DP_PARTITION_RELEASE_H_
#define DP_PARTITION_RELEASE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dp_partition/histogram.h"
#include "dp_partition/primitive.h"
#include "dp_partition/privacy_params.h"

namespace dp_partition {

struct ReleaseRecord {
  std::string partition;
  std::optional<int64_t> noisy_count;

  friend bool operator==(const ReleaseRecord&, const ReleaseRecord&) = default;
};

// Keeps each present partition with probability primitive.Probability(n).
// Fails if the histogram is capped below the primitive's saturation count.
// Output is sorted by key.
absl::StatusOr<std::vector<std::string>> SelectPartitions(
    const PartitionHistogram& histogram, const OptimalPrimitive& primitive,
    uint64_t seed);

// Adds truncated geometric noise to every present count and releases the
// partitions whose noisy count exceeds k. Requires an uncapped histogram.
absl::StatusOr<std::vector<ReleaseRecord>> ThresholdedRelease(
    const PartitionHistogram& histogram, const PrivacyParams& params,
    uint64_t seed);

// Noises every present and every public partition (count 0 when absent).
// Private-only partitions are released above k, public ones above
// `public_threshold`, which must lie in [0, k].
absl::StatusOr<std::vector<ReleaseRecord>> DualThresholdRelease(
    const PartitionHistogram& histogram,
    std::span<const std::string> public_partitions,
    const PrivacyParams& params, int64_t public_threshold, uint64_t seed);

double ExpectedOutputSize(const PartitionHistogram& histogram,
                          const OptimalPrimitive& primitive);

namespace serial {

absl::StatusOr<std::vector<std::string>> SelectPartitions(
    const PartitionHistogram& histogram, const OptimalPrimitive& primitive,
    uint64_t seed);

absl::StatusOr<std::vector<ReleaseRecord>> ThresholdedRelease(
    const PartitionHistogram& histogram, const PrivacyParams& params,
    uint64_t seed);

absl::StatusOr<std::vector<ReleaseRecord>> DualThresholdRelease(
    const PartitionHistogram& histogram,
    std::span<const std::string> public_partitions,
    const PrivacyParams& params, int64_t public_threshold, uint64_t seed);

}  // namespace serial
}  // namespace dp_partition

#endif  // DP_PARTITION_RELEASE_H_
