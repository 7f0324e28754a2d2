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

#ifndef DP_PARTITION_PRIVACY_PARAMS_H_
#define DP_PARTITION_PRIVACY_PARAMS_H_

#include <cstdint>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dp_partition {

// Neighboring-database model. Under kReplace a neighbor differs by one user
// changing their data, which costs twice the add/remove budget.
enum class Neighboring { kAddRemove, kReplace };

absl::StatusOr<Neighboring> ParseNeighboring(absl::string_view name);
absl::string_view NeighboringName(Neighboring neighboring);

struct PrivacyParams {
  double epsilon = 0;
  double delta = 0;
  Neighboring neighboring = Neighboring::kAddRemove;

  // Budget actually spent on a single add/remove step.
  double effective_epsilon() const {
    return neighboring == Neighboring::kReplace ? epsilon / 2 : epsilon;
  }
  double effective_delta() const {
    return neighboring == Neighboring::kReplace ? delta / 2 : delta;
  }
};

// Checks epsilon >= 0 (finite) and delta in [0, 1].
absl::Status ValidatePrivacyParams(const PrivacyParams& params);

// Splits the budget evenly over `kappa` partitions per user. The result keeps
// the neighboring model of `params`.
absl::StatusOr<PrivacyParams> DivideBudget(const PrivacyParams& params,
                                           int64_t kappa);

}  // namespace dp_partition

#endif  // DP_PARTITION_PRIVACY_PARAMS_H_
