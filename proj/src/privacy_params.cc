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

#include "dp_partition/privacy_params.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dp_partition {

absl::StatusOr<Neighboring> ParseNeighboring(absl::string_view name) {
  if (name == "add-remove") return Neighboring::kAddRemove;
  if (name == "replace") return Neighboring::kReplace;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown neighboring model '", name,
                   "', expected add-remove or replace"));
}

absl::string_view NeighboringName(Neighboring neighboring) {
  return neighboring == Neighboring::kReplace ? "replace" : "add-remove";
}

absl::Status ValidatePrivacyParams(const PrivacyParams& params) {
  if (!std::isfinite(params.epsilon) || params.epsilon < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be finite and non-negative, got ", params.epsilon));
  }
  if (!(params.delta >= 0 && params.delta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1], got ", params.delta));
  }
  return absl::OkStatus();
}

absl::StatusOr<PrivacyParams> DivideBudget(const PrivacyParams& params,
                                           int64_t kappa) {
  if (absl::Status status = ValidatePrivacyParams(params); !status.ok()) {
    return status;
  }
  if (kappa < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("kappa must be a positive integer, got ", kappa));
  }
  PrivacyParams divided = params;
  divided.epsilon /= static_cast<double>(kappa);
  divided.delta /= static_cast<double>(kappa);
  return divided;
}

}  // namespace dp_partition
