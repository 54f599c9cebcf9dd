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

// Random helpers with fully specified algorithms, so that every draw is the
// same on any standard library (std distributions are implementation
// defined).

#ifndef WASSDEP_RANDOM_HPP
#define WASSDEP_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace wassdep {

using Rng = std::mt19937_64;

// splitmix64 of (seed, stream): independent per-replicate seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

double uniform01(Rng& rng);                     // [0, 1), 53-bit
std::size_t uniform_index(Rng& rng, std::size_t n);  // [0, n), unbiased
double standard_normal(Rng& rng);               // Box-Muller

// Uniform random permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);
// Uniform random derangement (no fixed points) by rejection; n >= 2.
std::vector<std::size_t> random_derangement(std::size_t n, Rng& rng);

}  // namespace wassdep

#endif  // WASSDEP_RANDOM_HPP
