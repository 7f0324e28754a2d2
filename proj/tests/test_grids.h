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

#ifndef DP_PARTITION_TESTS_TEST_GRIDS_H_
#define DP_PARTITION_TESTS_TEST_GRIDS_H_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"

#include "dp_partition/privacy_params.h"

namespace dp_partition::testing {

inline constexpr std::array<double, 6> kGridEpsilons = {0.01, 0.1, 0.5,
                                                        1,    2,   5};
inline constexpr std::array<double, 4> kGridDeltas = {1e-12, 1e-10, 1e-5,
                                                      1e-2};

inline std::vector<PrivacyParams> PrivacyGrid() {
  std::vector<PrivacyParams> grid;
  for (double epsilon : kGridEpsilons) {
    for (double delta : kGridDeltas) grid.push_back({epsilon, delta});
  }
  return grid;
}

// Test-name suffix such as "eps1_delta1em05"; works with any param info
// whose `param` is a PrivacyParams.
struct GridPointName {
  template <typename ParamInfo>
  std::string operator()(const ParamInfo& info) const {
    std::string name = absl::StrCat("eps", info.param.epsilon, "_delta",
                                    info.param.delta);
    for (char& ch : name) {
      if (ch == '.') ch = 'p';
      if (ch == '-') ch = 'm';
    }
    return name;
  }
};

// Delta for which ln((e^eps + 2 delta - 1) / ((e^eps + 1) delta)) / eps == k,
// solved from e^(k eps) (e^eps + 1) delta = e^eps - 1 + 2 delta.
inline double IntegralCrossoverDelta(double epsilon, int k) {
  const double e = std::exp(epsilon);
  return (e - 1) / ((e + 1) * std::exp(k * epsilon) - 2);
}

// Three binomial standard deviations of the mean of `trials` draws.
inline double BinomialTolerance(double p, double trials, double sigmas = 3) {
  return sigmas * std::sqrt(p * (1 - p) / trials);
}

}  // namespace dp_partition::testing

#endif  // DP_PARTITION_TESTS_TEST_GRIDS_H_
