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

// Minimal RFC 4180 CSV reading and field escaping.

#ifndef DP_PARTITION_CSV_H_
#define DP_PARTITION_CSV_H_

#include <cstdint>
#include <istream>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"

namespace dp_partition {

class CsvReader {
 public:
  explicit CsvReader(std::istream& input) : input_(input) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Quoted fields may span lines; both LF and CRLF terminate records.
  absl::StatusOr<bool> Next(std::vector<std::string>& fields);

  // Physical line on which the most recently returned record started.
  int64_t record_line() const { return record_line_; }

 private:
  std::istream& input_;
  int64_t line_ = 1;
  int64_t record_line_ = 0;
  bool at_start_ = true;
};

// Quotes `field` when it contains a comma, quote or line break.
std::string CsvEscape(absl::string_view field);

}  // namespace dp_partition

#endif  // DP_PARTITION_CSV_H_
