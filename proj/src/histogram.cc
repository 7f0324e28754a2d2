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

#include "dp_partition/histogram.h"

#include <algorithm>

#include <omp.h>

#include "absl/strings/str_cat.h"
#include "dp_partition/csv.h"
#include "dp_partition/random.h"

namespace dp_partition {

PartitionHistogram PartitionHistogram::FromCounts(
    std::span<const std::pair<std::string, int64_t>> counts,
    std::optional<int64_t> cap) {
  PartitionHistogram histogram(cap);
  for (const auto& [key, count] : counts) {
    if (count <= 0) continue;
    histogram.entries_[key].count = cap ? std::min(count, *cap) : count;
  }
  return histogram;
}

bool PartitionHistogram::Add(absl::string_view partition,
                             absl::string_view user) {
  Entry& entry = entries_[partition];
  if (Saturated(entry)) return false;
  if (!entry.users.emplace(user).second) return false;
  ++entry.count;
  if (Saturated(entry)) {
    entry.users.clear();
    entry.users.rehash(0);
  }
  return true;
}

absl::Status PartitionHistogram::Merge(PartitionHistogram other) {
  if (cap_ != other.cap_) {
    return absl::InvalidArgumentError(
        "cannot merge histograms with different caps");
  }
  for (auto& [key, theirs] : other.entries_) {
    auto [it, inserted] = entries_.try_emplace(key);
    Entry& ours = it->second;
    if (inserted) {
      ours = std::move(theirs);
      continue;
    }
    if (Saturated(ours)) continue;
    if (Saturated(theirs)) {
      ours.count = theirs.count;
      ours.users.clear();
      ours.users.rehash(0);
      continue;
    }
    // Entries built by FromCounts carry no ids; fall back to adding counts.
    if (ours.users.empty() || theirs.users.empty()) {
      ours.count += theirs.count;
      ours.users.merge(theirs.users);
    } else {
      ours.users.merge(theirs.users);
      ours.count = static_cast<int64_t>(ours.users.size());
    }
    if (cap_ && ours.count >= *cap_) {
      ours.count = *cap_;
      ours.users.clear();
      ours.users.rehash(0);
    }
  }
  return absl::OkStatus();
}

int64_t PartitionHistogram::Count(absl::string_view partition) const {
  auto it = entries_.find(partition);
  return it == entries_.end() ? 0 : it->second.count;
}

std::vector<std::pair<std::string, int64_t>> PartitionHistogram::SortedCounts()
    const {
  std::vector<std::pair<std::string, int64_t>> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.emplace_back(key, entry.count);
  std::sort(out.begin(), out.end());
  return out;
}

size_t PartitionHistogram::StoredUserIds() const {
  size_t total = 0;
  for (const auto& [key, entry] : entries_) total += entry.users.size();
  return total;
}

size_t PartitionHistogram::MaxStoredUserIdsPerPartition() const {
  size_t most = 0;
  for (const auto& [key, entry] : entries_) {
    most = std::max(most, entry.users.size());
  }
  return most;
}

absl::StatusOr<ContributionPolicy> ParseContributionPolicy(
    absl::string_view name) {
  if (name == "strict") return ContributionPolicy::kStrict;
  if (name == "first-wins") return ContributionPolicy::kFirstWins;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown contribution policy '", name, "', expected strict or first-wins"));
}

Ingestor::Ingestor(const IngestOptions& options)
    : options_(options), histogram_(options.cap) {}

absl::Status Ingestor::Add(absl::string_view user_id,
                           absl::string_view partition, int64_t line) {
  if (user_id.empty() || partition.empty()) {
    return absl::DataLossError(
        absl::StrCat("line ", line, ": user_id and partition must be non-empty"));
  }
  std::vector<std::string>& seen = user_partitions_[user_id];
  if (std::find(seen.begin(), seen.end(), partition) == seen.end()) {
    if (static_cast<int64_t>(seen.size()) >=
        options_.max_partitions_per_user) {
      if (options_.policy == ContributionPolicy::kFirstWins) {
        return absl::OkStatus();
      }
      return absl::FailedPreconditionError(absl::StrCat(
          "line ", line, ": user '", user_id, "' contributes to more than ",
          options_.max_partitions_per_user, " partition(s)"));
    }
    seen.emplace_back(partition);
  }
  histogram_.Add(partition, user_id);
  return absl::OkStatus();
}

PartitionHistogram Ingestor::Finish() && { return std::move(histogram_); }

namespace {

absl::Status CheckHeader(CsvReader& reader, std::vector<std::string>& fields) {
  absl::StatusOr<bool> has_header = reader.Next(fields);
  if (!has_header.ok()) return has_header.status();
  if (!*has_header || fields.size() != 2 || fields[0] != "user_id" ||
      fields[1] != "partition") {
    return absl::DataLossError(
        "line 1: expected header 'user_id,partition'");
  }
  return absl::OkStatus();
}

absl::Status CheckRowShape(const CsvReader& reader,
                           const std::vector<std::string>& fields) {
  if (fields.size() != 2) {
    return absl::DataLossError(absl::StrCat("line ", reader.record_line(),
                                            ": expected 2 fields, got ",
                                            fields.size()));
  }
  if (fields[0].empty() || fields[1].empty()) {
    return absl::DataLossError(
        absl::StrCat("line ", reader.record_line(),
                     ": user_id and partition must be non-empty"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<Contribution>> ReadContributions(
    std::istream& input) {
  CsvReader reader(input);
  std::vector<std::string> fields;
  if (absl::Status status = CheckHeader(reader, fields); !status.ok()) {
    return status;
  }
  std::vector<Contribution> rows;
  while (true) {
    absl::StatusOr<bool> more = reader.Next(fields);
    if (!more.ok()) return more.status();
    if (!*more) break;
    if (absl::Status status = CheckRowShape(reader, fields); !status.ok()) {
      return status;
    }
    rows.push_back(Contribution{std::move(fields[0]), std::move(fields[1]),
                                reader.record_line()});
  }
  return rows;
}

absl::StatusOr<PartitionHistogram> IngestCsv(std::istream& input,
                                             const IngestOptions& options) {
  CsvReader reader(input);
  std::vector<std::string> fields;
  if (absl::Status status = CheckHeader(reader, fields); !status.ok()) {
    return status;
  }
  Ingestor ingestor(options);
  while (true) {
    absl::StatusOr<bool> more = reader.Next(fields);
    if (!more.ok()) return more.status();
    if (!*more) break;
    if (absl::Status status = CheckRowShape(reader, fields); !status.ok()) {
      return status;
    }
    if (absl::Status status =
            ingestor.Add(fields[0], fields[1], reader.record_line());
        !status.ok()) {
      return status;
    }
  }
  return std::move(ingestor).Finish();
}

absl::StatusOr<PartitionHistogram> Ingest(std::span<const Contribution> rows,
                                          const IngestOptions& options) {
  Ingestor ingestor(options);
  for (const Contribution& row : rows) {
    if (absl::Status status = ingestor.Add(row.user_id, row.partition, row.line);
        !status.ok()) {
      return status;
    }
  }
  return std::move(ingestor).Finish();
}

absl::StatusOr<PartitionHistogram> IngestSharded(
    std::span<const Contribution> rows, const IngestOptions& options,
    int num_shards) {
  if (num_shards < 1) {
    return absl::InvalidArgumentError("number of shards must be positive");
  }
  // A user's rows all land in one shard, in input order.
  std::vector<std::vector<size_t>> shard_rows(num_shards);
  for (size_t i = 0; i < rows.size(); ++i) {
    shard_rows[StableHash(rows[i].user_id) % num_shards].push_back(i);
  }

  std::vector<PartitionHistogram> partial(num_shards,
                                          PartitionHistogram(options.cap));
  std::vector<absl::Status> errors(num_shards);
  std::vector<size_t> error_row(num_shards, rows.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (int shard = 0; shard < num_shards; ++shard) {
    Ingestor ingestor(options);
    for (size_t i : shard_rows[shard]) {
      absl::Status status =
          ingestor.Add(rows[i].user_id, rows[i].partition, rows[i].line);
      if (!status.ok()) {
        errors[shard] = std::move(status);
        error_row[shard] = i;
        break;
      }
    }
    partial[shard] = std::move(ingestor).Finish();
  }

  // Report the violation a serial pass would have hit first.
  auto first_error = std::min_element(error_row.begin(), error_row.end());
  if (*first_error < rows.size()) {
    return errors[first_error - error_row.begin()];
  }

  PartitionHistogram merged(options.cap);
  for (PartitionHistogram& shard : partial) {
    if (absl::Status status = merged.Merge(std::move(shard)); !status.ok()) {
      return status;
    }
  }
  return merged;
}

}  // namespace dp_partition
