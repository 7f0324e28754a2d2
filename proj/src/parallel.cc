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

#include "dp_partition/parallel.h"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

#include "absl/strings/numbers.h"

namespace dp_partition {

std::optional<int> ThreadLimitFromEnvironment() {
  const char* value = std::getenv(kThreadsEnvVar);
  int threads = 0;
  if (value == nullptr || !absl::SimpleAtoi(value, &threads) || threads < 1) {
    return std::nullopt;
  }
  return threads;
}

void SetThreadCount(int threads) { omp_set_num_threads(std::max(1, threads)); }

int ThreadCount() { return omp_get_max_threads(); }

void ApplyThreadLimitFromEnvironment() {
  if (std::optional<int> limit = ThreadLimitFromEnvironment()) {
    SetThreadCount(std::min(*limit, omp_get_max_threads()));
  }
}

}  // namespace dp_partition
