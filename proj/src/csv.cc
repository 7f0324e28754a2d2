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

#include "dp_partition/csv.h"

#include "absl/strings/str_cat.h"

namespace dp_partition {

absl::StatusOr<bool> CsvReader::Next(std::vector<std::string>& fields) {
  fields.clear();
  if (at_start_) {
    at_start_ = false;
    // UTF-8 byte order mark.
    if (input_.peek() == 0xEF) {
      char bom[3];
      input_.read(bom, 3);
      if (input_.gcount() != 3 || bom[1] != '\xBB' || bom[2] != '\xBF') {
        return absl::DataLossError("line 1: malformed byte order mark");
      }
    }
  }
  if (input_.peek() == std::char_traits<char>::eof()) return false;

  record_line_ = line_;
  std::string field;
  bool quoted = false;       // inside a quoted section
  bool was_quoted = false;   // current field started with a quote
  bool after_quote = false;  // just closed a quoted section
  while (true) {
    const int next = input_.get();
    if (next == std::char_traits<char>::eof()) {
      if (quoted) {
        return absl::DataLossError(absl::StrCat(
            "line ", record_line_, ": unterminated quoted field"));
      }
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(next);
    if (quoted) {
      if (ch == '"') {
        if (input_.peek() == '"') {
          input_.get();
          field.push_back('"');
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
      after_quote = false;
      continue;
    }
    if (ch == '\r' && input_.peek() == '\n') continue;
    if (ch == '\n') {
      ++line_;
      fields.push_back(std::move(field));
      return true;
    }
    if (after_quote) {
      return absl::DataLossError(absl::StrCat(
          "line ", line_, ": unexpected character after closing quote"));
    }
    if (ch == '"') {
      if (!field.empty() || was_quoted) {
        return absl::DataLossError(absl::StrCat(
            "line ", line_, ": quote inside an unquoted field"));
      }
      quoted = true;
      was_quoted = true;
      continue;
    }
    field.push_back(ch);
  }
}

std::string CsvEscape(absl::string_view field) {
  if (field.find_first_of(",\"\r\n") == absl::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

}  // namespace dp_partition
