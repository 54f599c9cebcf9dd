// Copyright 2026 The wassdep Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WASSDEP_REPORT_HPP
#define WASSDEP_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wassdep {

// Result of one index evaluation: value = numerator / denominator, plus the
// settings needed to reproduce it. Unset optionals are not serialized.
struct IndexReport {
  std::string index;      // "joint", "conditional", "gaussian", ...
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 1.0;
  std::string estimator;  // "permute", "split", "full", "exact", "bins", ...
  std::optional<std::string> variant;
  double p = 1.0;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<int> bins;
  std::optional<double> center;  // symmetry centre a of the concordance index
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool exceeds_one = false;
  std::vector<std::string> warnings;
};

}  // namespace wassdep

#endif  // WASSDEP_REPORT_HPP
