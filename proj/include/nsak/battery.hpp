// Copyright 2026 The nsak Authors.
//
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

// The property battery behind `selftest` and the acceptance binary. Every
// check is a pure function of its arguments; randomized ones draw from a
// generator seeded by the caller.

#ifndef NSAK_BATTERY_HPP_
#define NSAK_BATTERY_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nsak/reals.hpp"

namespace nsak {

// A binary tree with a node at `depth`: one random branch kept whole, every
// other child kept with probability 0.3.
std::set<FinSeq> random_tree(std::uint64_t depth, std::uint64_t seed);

struct BatteryResult {
  int criterion = 0;
  std::string name;
  bool ok = false;
  std::vector<std::pair<std::string, std::string>> fields;  // never timings
};

// 1: the shipped library checks green and every mutant is rejected.
BatteryResult battery_library(const std::string& dir);
// 2: y0(N) separates the counterexample pair for every N in 1..max_N.
BatteryResult battery_discontinuity(std::uint64_t max_N = 64);
// 3: |u(x,N) - x| <= 4/N for random x in [0,1], N in {64, 256, 1024}.
BatteryResult battery_standard_part(std::uint64_t samples, std::uint64_t seed, unsigned cap_exp = 60);
// 4: 16 binary digits at N = 1024 against the exact expansion.
BatteryResult battery_binary_digits(std::uint64_t samples, std::uint64_t seed);
// 5: the exhaustive majorizability suite at B in {1, 2}.
BatteryResult battery_majorizability(std::uint64_t seed);
// 6: covers of Cantor space from random finitely determined G.
BatteryResult battery_hbu(std::uint64_t samples, std::uint64_t seed);
// 7: left-most paths through random trees of depth 20.
BatteryResult battery_wkl(std::uint64_t samples, std::uint64_t seed);
// 8: the diagonal sequence against the shipped machine table.
BatteryResult battery_ct(std::uint64_t steps = 1000);
// 9: hat outputs converge fast; distinctness and order witnesses re-verify.
BatteryResult battery_reals(std::uint64_t inputs, std::uint64_t pairs, std::uint64_t seed);

}  // namespace nsak

#endif  // NSAK_BATTERY_HPP_
