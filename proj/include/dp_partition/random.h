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

#ifndef DP_PARTITION_RANDOM_H_
#define DP_PARTITION_RANDOM_H_

#include <cstdint>
#include <random>
#include "absl/strings/string_view.h"

namespace dp_partition {

// All sampling in the library draws from this engine so that outputs are a
// pure function of the seed.
using RandomEngine = std::mt19937_64;

// Uniform double in [0, 1) with 53 bits of resolution. Unlike
// std::generate_canonical this never returns 1.
inline double UniformDouble(RandomEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Bernoulli(probability) from a single uniform draw.
inline bool Bernoulli(double probability, RandomEngine& rng) {
  return UniformDouble(rng) < probability;
}

// 64-bit FNV-1a. Stable across platforms and standard library versions.
uint64_t StableHash(absl::string_view bytes);

// SplitMix64 finalizer.
uint64_t MixSeed(uint64_t seed);

// Random stream for one partition: independent of iteration order and thread
// scheduling.
RandomEngine PartitionStream(uint64_t master_seed, absl::string_view key);

}  // namespace dp_partition

#endif  // DP_PARTITION_RANDOM_H_
