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


// Acceptance run: one line per criterion with its wall time against the
// budget. Exits nonzero when any criterion fails or overruns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "nsak/battery.hpp"
#include "nsak/cli.hpp"
#include "nsak/kernel.hpp"

using namespace nsak;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<BatteryResult()> run;
};

BatteryResult determinism() {
  auto selftest = [] {
    std::ostringstream out, err;
    int code = run_cli({"selftest", "--format", "line-record", "--seed", "1"}, out, err);
    return std::pair{code, out.str()};
  };
  auto [c1, a] = selftest();
  auto [c2, b] = selftest();
  BatteryResult r;
  r.criterion = 10;
  r.name = "determinism";
  r.ok = c1 == 0 && c2 == 0 && a == b && !a.empty();
  r.fields = {{"bytes", std::to_string(a.size())}, {"identical", a == b ? "yes" : "no"}};
  return r;
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "proof library", 10, [] { return battery_library(default_library_dir()); }},
      {2, "discontinuity witness", 1, [] { return battery_discontinuity(64); }},
      {3, "standard-part map", 30, [] { return battery_standard_part(1000, kSeed); }},
      {4, "binary approximation", 10, [] { return battery_binary_digits(1000, kSeed); }},
      {5, "majorizability suite", 60, [] { return battery_majorizability(kSeed); }},
      {6, "HBU cover", 30, [] { return battery_hbu(100, kSeed); }},
      {7, "WKL path", 5, [] { return battery_wkl(100, kSeed); }},
      {8, "CT diagonal", 5, [] { return battery_ct(1000); }},
      {9, "reals discipline", 30, [] { return battery_reals(1000, 10000, kSeed); }},
      {10, "determinism", 120, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    BatteryResult r;
    std::string note;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      note = std::string(" error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = r.ok && secs < c.budget_s;
    failed += !pass;
    std::string fields;
    for (const auto& [k, v] : r.fields) fields += " " + k + "=" + v;
    std::printf("%s criterion %d (%s) %.3fs budget %.0fs%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_s, fields.c_str(), note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
