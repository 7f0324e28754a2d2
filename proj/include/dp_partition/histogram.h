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

// Unique-user counting per partition, with optional early termination.

#ifndef DP_PARTITION_HISTOGRAM_H_
#define DP_PARTITION_HISTOGRAM_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"

namespace dp_partition {

// Map from partition key to the number of distinct users seen in it. With a
// cap, a partition stops counting (and drops its user ids) once it reaches
// the cap, so at most cap - 1 ids are held per partition.
class PartitionHistogram {
 public:
  explicit PartitionHistogram(std::optional<int64_t> cap = std::nullopt)
      : cap_(cap) {}

  // Histogram with known counts and no dedup state; for synthetic inputs.
  // Counts are clamped to the cap; non-positive counts are skipped.
  static PartitionHistogram FromCounts(
      std::span<const std::pair<std::string, int64_t>> counts,
      std::optional<int64_t> cap = std::nullopt);

  // Counts `user` in `partition` unless already counted or capped. Returns
  // whether the count changed.
  bool Add(absl::string_view partition, absl::string_view user);

  // Associative merge. User sets are unioned, so overlapping inputs are not
  // double counted. Both sides must share the same cap.
  absl::Status Merge(PartitionHistogram other);

  int64_t Count(absl::string_view partition) const;
  bool Contains(absl::string_view partition) const {
    return entries_.contains(partition);
  }
  size_t size() const { return entries_.size(); }
  std::optional<int64_t> cap() const { return cap_; }

  // (partition, count) pairs sorted by key.
  std::vector<std::pair<std::string, int64_t>> SortedCounts() const;

  // Dedup-state footprint, for memory accounting.
  size_t StoredUserIds() const;
  size_t MaxStoredUserIdsPerPartition() const;

  friend bool operator==(const PartitionHistogram& a,
                         const PartitionHistogram& b) {
    return a.cap_ == b.cap_ && a.SortedCounts() == b.SortedCounts();
  }

 private:
  struct Entry {
    int64_t count = 0;
    // Cleared once count reaches the cap.
    absl::flat_hash_set<std::string> users;
  };

  bool Saturated(const Entry& entry) const {
    return cap_.has_value() && entry.count >= *cap_;
  }

  std::optional<int64_t> cap_;
  absl::flat_hash_map<std::string, Entry> entries_;
};

// How to treat a user appearing in more partitions than allowed.
enum class ContributionPolicy {
  kStrict,     // reject the input
  kFirstWins,  // keep the user's first partitions in input order
};

absl::StatusOr<ContributionPolicy> ParseContributionPolicy(
    absl::string_view name);

struct IngestOptions {
  ContributionPolicy policy = ContributionPolicy::kStrict;
  std::optional<int64_t> cap;
  int64_t max_partitions_per_user = 1;
};

// One input row.
struct Contribution {
  std::string user_id;
  std::string partition;
  int64_t line = 0;
};

// Single-pass ingestion. Feed rows in input order.
class Ingestor {
 public:
  explicit Ingestor(const IngestOptions& options);

  // Fails with FailedPrecondition naming the user on a kStrict violation.
  absl::Status Add(absl::string_view user_id, absl::string_view partition,
                   int64_t line);

  PartitionHistogram Finish() &&;

 private:
  IngestOptions options_;
  PartitionHistogram histogram_;
  absl::flat_hash_map<std::string, std::vector<std::string>> user_partitions_;
};

// Reads a `user_id,partition` CSV. Malformed input fails with DataLoss and
// the offending line number.
absl::StatusOr<std::vector<Contribution>> ReadContributions(
    std::istream& input);

// Streaming ingestion straight from CSV; never materializes the rows.
absl::StatusOr<PartitionHistogram> IngestCsv(std::istream& input,
                                             const IngestOptions& options);

// Serial reference ingestion.
absl::StatusOr<PartitionHistogram> Ingest(
    std::span<const Contribution> rows, const IngestOptions& options);

// Routes rows to `num_shards` shards by user id, ingests the shards in
// parallel and merges them. Produces the same histogram (and the same first
// violation) as Ingest().
absl::StatusOr<PartitionHistogram> IngestSharded(
    std::span<const Contribution> rows, const IngestOptions& options,
    int num_shards);

}  // namespace dp_partition

#endif  // DP_PARTITION_HISTOGRAM_H_
