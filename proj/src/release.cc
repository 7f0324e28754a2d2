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

#include "dp_partition/release.h"

#include <algorithm>
#include <utility>

#include <omp.h>

#include "absl/strings/str_cat.h"
#include "dp_partition/random.h"
#include "dp_partition/tsgd.h"

namespace dp_partition {
namespace {

enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, n).
template <typename Body>
void ForEachIndex(size_t n, Execution execution, const Body& body) {
  if (execution == Execution::kParallel) {
    const auto count = static_cast<int64_t>(n);
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < count; ++i) body(static_cast<size_t>(i));
  } else {
    for (size_t i = 0; i < n; ++i) body(i);
  }
}

struct Candidate {
  std::string key;
  int64_t count = 0;
  bool is_public = false;
};

absl::StatusOr<std::vector<std::string>> SelectImpl(
    const PartitionHistogram& histogram, const OptimalPrimitive& primitive,
    uint64_t seed, Execution execution) {
  if (histogram.cap().has_value()) {
    std::optional<int64_t> saturation = primitive.SaturationCount();
    if (saturation.has_value() && *histogram.cap() < *saturation) {
      return absl::InvalidArgumentError(absl::StrCat(
          "histogram cap ", *histogram.cap(),
          " is below the saturation count ", *saturation,
          "; capped counts would change keep probabilities"));
    }
  }
  const std::vector<std::pair<std::string, int64_t>> items =
      histogram.SortedCounts();
  std::vector<char> keep(items.size(), 0);
  ForEachIndex(items.size(), execution, [&](size_t i) {
    RandomEngine rng = PartitionStream(seed, items[i].first);
    keep[i] = primitive.ShouldKeep(items[i].second, rng);
  });
  std::vector<std::string> selected;
  for (size_t i = 0; i < items.size(); ++i) {
    if (keep[i]) selected.push_back(items[i].first);
  }
  return selected;
}

// Noises each candidate and keeps it if the noisy count clears its threshold.
std::vector<ReleaseRecord> NoisyThreshold(
    const std::vector<Candidate>& candidates, const TruncatedGeometric& noise,
    int64_t public_threshold, uint64_t seed, Execution execution) {
  std::vector<std::optional<int64_t>> noisy(candidates.size());
  ForEachIndex(candidates.size(), execution, [&](size_t i) {
    const Candidate& candidate = candidates[i];
    RandomEngine rng = PartitionStream(seed, candidate.key);
    const int64_t value = candidate.count + noise.Sample(rng);
    const int64_t threshold =
        candidate.is_public ? public_threshold : noise.k();
    if (value > threshold) noisy[i] = value;
  });
  std::vector<ReleaseRecord> released;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (noisy[i]) released.push_back({candidates[i].key, noisy[i]});
  }
  return released;
}

absl::StatusOr<TruncatedGeometric> NoiseForCounts(
    const PartitionHistogram& histogram, const PrivacyParams& params) {
  if (histogram.cap().has_value()) {
    return absl::InvalidArgumentError(
        "noisy-count release publishes true counts and needs an uncapped "
        "histogram");
  }
  return TruncatedGeometric::ForPrivacy(params);
}

absl::StatusOr<std::vector<ReleaseRecord>> ThresholdedImpl(
    const PartitionHistogram& histogram, const PrivacyParams& params,
    uint64_t seed, Execution execution) {
  absl::StatusOr<TruncatedGeometric> noise = NoiseForCounts(histogram, params);
  if (!noise.ok()) return noise.status();
  std::vector<Candidate> candidates;
  candidates.reserve(histogram.size());
  for (auto& [key, count] : histogram.SortedCounts()) {
    candidates.push_back({std::move(key), count, false});
  }
  return NoisyThreshold(candidates, *noise, noise->k(), seed, execution);
}

absl::StatusOr<std::vector<ReleaseRecord>> DualImpl(
    const PartitionHistogram& histogram,
    std::span<const std::string> public_partitions,
    const PrivacyParams& params, int64_t public_threshold, uint64_t seed,
    Execution execution) {
  absl::StatusOr<TruncatedGeometric> noise = NoiseForCounts(histogram, params);
  if (!noise.ok()) return noise.status();
  if (public_threshold < 0 || public_threshold > noise->k()) {
    return absl::InvalidArgumentError(
        absl::StrCat("public threshold must lie in [0, ", noise->k(),
                     "], got ", public_threshold));
  }
  std::vector<std::string> public_keys(public_partitions.begin(),
                                       public_partitions.end());
  std::sort(public_keys.begin(), public_keys.end());
  public_keys.erase(std::unique(public_keys.begin(), public_keys.end()),
                    public_keys.end());

  // Sorted union of present and public keys.
  std::vector<Candidate> candidates;
  std::vector<std::pair<std::string, int64_t>> present =
      histogram.SortedCounts();
  auto p = present.begin();
  auto q = public_keys.begin();
  while (p != present.end() || q != public_keys.end()) {
    if (q == public_keys.end() || (p != present.end() && p->first < *q)) {
      candidates.push_back({std::move(p->first), p->second, false});
      ++p;
    } else if (p == present.end() || *q < p->first) {
      candidates.push_back({*q, 0, true});
      ++q;
    } else {
      candidates.push_back({std::move(p->first), p->second, true});
      ++p;
      ++q;
    }
  }
  return NoisyThreshold(candidates, *noise, public_threshold, seed, execution);
}

}  // namespace

absl::StatusOr<std::vector<std::string>> SelectPartitions(
    const PartitionHistogram& histogram, const OptimalPrimitive& primitive,
    uint64_t seed) {
  return SelectImpl(histogram, primitive, seed, Execution::kParallel);
}

absl::StatusOr<std::vector<ReleaseRecord>> ThresholdedRelease(
    const PartitionHistogram& histogram, const PrivacyParams& params,
    uint64_t seed) {
  return ThresholdedImpl(histogram, params, seed, Execution::kParallel);
}

absl::StatusOr<std::vector<ReleaseRecord>> DualThresholdRelease(
    const PartitionHistogram& histogram,
    std::span<const std::string> public_partitions,
    const PrivacyParams& params, int64_t public_threshold, uint64_t seed) {
  return DualImpl(histogram, public_partitions, params, public_threshold, seed,
                  Execution::kParallel);
}

double ExpectedOutputSize(const PartitionHistogram& histogram,
                          const OptimalPrimitive& primitive) {
  double total = 0;
  for (const auto& [key, count] : histogram.SortedCounts()) {
    total += primitive.Probability(count);
  }
  return total;
}

namespace serial {

absl::StatusOr<std::vector<std::string>> SelectPartitions(
    const PartitionHistogram& histogram, const OptimalPrimitive& primitive,
    uint64_t seed) {
  return SelectImpl(histogram, primitive, seed, Execution::kSerial);
}

absl::StatusOr<std::vector<ReleaseRecord>> ThresholdedRelease(
    const PartitionHistogram& histogram, const PrivacyParams& params,
    uint64_t seed) {
  return ThresholdedImpl(histogram, params, seed, Execution::kSerial);
}

absl::StatusOr<std::vector<ReleaseRecord>> DualThresholdRelease(
    const PartitionHistogram& histogram,
    std::span<const std::string> public_partitions,
    const PrivacyParams& params, int64_t public_threshold, uint64_t seed) {
  return DualImpl(histogram, public_partitions, params, public_threshold, seed,
                  Execution::kSerial);
}

}  // namespace serial
}  // namespace dp_partition
