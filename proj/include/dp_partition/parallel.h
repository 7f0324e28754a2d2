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

#ifndef DP_PARTITION_PARALLEL_H_
#define DP_PARTITION_PARALLEL_H_

#include <optional>

namespace dp_partition {

// Environment variable capping the number of worker threads.
inline constexpr char kThreadsEnvVar[] = "DP_PS_THREADS";

// Parses DP_PS_THREADS; nullopt when unset or not a positive integer.
std::optional<int> ThreadLimitFromEnvironment();

// Sets the OpenMP team size used by the parallel kernels.
void SetThreadCount(int threads);
int ThreadCount();

// Applies DP_PS_THREADS, if set, as an upper bound on the team size.
void ApplyThreadLimitFromEnvironment();

}  // namespace dp_partition

#endif  // DP_PARTITION_PARALLEL_H_
