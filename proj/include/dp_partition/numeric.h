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

// Small numeric helpers shared by the primitive, noise and baseline modules.

#ifndef DP_PARTITION_NUMERIC_H_
#define DP_PARTITION_NUMERIC_H_

#include <algorithm>
#include <cmath>

namespace dp_partition {

// Relative distance under which a computed crossover is treated as landing on
// an integer. Exact ties are where both recurrence branches agree, so snapping
// never changes a probability by more than rounding noise.
inline constexpr double kIntegerTieTolerance = 1e-10;

inline double SnapToInteger(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <=
      kIntegerTieTolerance * std::max(1.0, std::abs(x))) {
    return nearest;
  }
  return x;
}

inline double TieAwareFloor(double x) { return std::floor(SnapToInteger(x)); }
inline double TieAwareCeil(double x) { return std::ceil(SnapToInteger(x)); }

// Standard normal CDF and survival function, accurate in both tails.
inline double NormalCdf(double x) { return 0.5 * std::erfc(-x / M_SQRT2); }
inline double NormalSurvival(double x) { return 0.5 * std::erfc(x / M_SQRT2); }

}  // namespace dp_partition

#endif  // DP_PARTITION_NUMERIC_H_
