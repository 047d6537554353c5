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

// Executable constructions at a finite scale N standing in for a nonstandard
// number. Every guarantee is stated with its explicit 1/N or 2^-N slack.

#ifndef NSAK_WITNESSES_HPP_
#define NSAK_WITNESSES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsak/evaluator.hpp"
#include "nsak/reals.hpp"

namespace nsak {

using Support = std::set<std::uint64_t>;

// A type-2 functional on infinite sequences that reports the points it read.
struct Functional2 {
  std::function<std::uint64_t(const Oracle&)> fn;
  std::uint64_t operator()(const Oracle& f, Support* support = nullptr) const;
};

Oracle constant_oracle(std::uint64_t c);
// s followed by `tail` forever.
Oracle extend(const FinSeq& s, std::uint64_t tail = 0);

//------------------------------------------------------------------------------
// Discontinuity

// 0 if f(n) = 0 for some n <= N+1, else 1.
Functional2 y0(std::uint64_t N);
// The same functional as a closed T term of type (0->0)->0.
Term y0_term(std::uint64_t N);

struct CounterexamplePair {
  Oracle f0;  // constant 1
  Oracle g0;  // N ones, then zeros
  std::uint64_t agreement = 0;  // length of the common prefix
};
CounterexamplePair counterexample_pair(std::uint64_t N);

// Z(f)(n) = 0 if f(n) = 0 else 1.
Oracle z_transform(Oracle f);

//------------------------------------------------------------------------------
// Reals at scale N

// 0 if [x](N) <= 1/N, else 1.
std::function<int(const RealCode&)> phi_sign(std::uint64_t N);

// Interval halving driven by phi_sign; ties go to 0.
std::vector<int> binary_digits(const RealCode& x, std::uint64_t n_digits, std::uint64_t N);

struct StandardPart {
  RealCode u;                // u(k) = sum_{i<=k} v(i) / 2^(i+1)
  std::vector<int> digits;   // the first N values of v; zero beyond
  bool guarded = false;      // true when the guard sent x to 0
  std::uint64_t guard_index = 0;
  Rational value() const;    // limit of u
};
// Guard index min(2^N, 2^cap_exp).
StandardPart standard_part(const RealCode& x, std::uint64_t N, unsigned cap_exp = 60);

// s(Y, N)(f) = Y(first N values of f, then zeros) if those are binary, else n0.
Functional2 functional_standard_part(const Functional2& Y, std::uint64_t N, std::uint64_t n0);

//------------------------------------------------------------------------------
// Trees and covers

struct NotATree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_binary_tree(const std::set<FinSeq>& T);
// sigma*0^w for the left-most sigma of maximal length <= N in T.
Oracle wkl_path(const std::set<FinSeq>& T, std::uint64_t N);

struct Cover {
  bool ok = false;
  std::uint64_t N = 0;
  std::vector<FinSeq> leaves;        // all binary sigma of length N, in order
  std::vector<std::uint64_t> radii;  // G(sigma*0^w)
  FinSeq offending;                  // leaf whose radius exceeds N
};

Cover hbu_cover(const Functional2& G, std::uint64_t N, std::uint64_t cap = 20);
// Tests N = 0, 1, 2, 4, ... and N_max.
std::optional<Cover> find_cover(const Functional2& G, std::uint64_t N_max, std::uint64_t cap = 20);
// Every binary prefix of length `depth` extended by zeros lies in a cylinder.
bool cover_is_complete(const Cover& c, std::uint64_t depth);

struct NotDetermined : std::runtime_error {
  using std::runtime_error::runtime_error;
};
std::uint64_t sup_on_cantor(const Functional2& Y, std::uint64_t N);

//------------------------------------------------------------------------------
// Machines

struct Instruction {
  enum class Op { Inc, Dec, Halt } op;
  unsigned reg = 0;
  std::size_t next = 0;    // Inc/Dec successor
  std::size_t branch = 0;  // Dec target when the register is zero
};
using Program = std::vector<Instruction>;

// Input in register 0, output in register 1.
std::optional<std::uint64_t> machine_step(const Program& p, std::uint64_t input, std::uint64_t steps);
const std::vector<Program>& machine_table();
const std::vector<std::string>& machine_names();

struct Diagonal {
  std::vector<int> f0;                            // f0(e)
  std::vector<std::optional<std::uint64_t>> value;  // machine e on e within N steps
  std::vector<std::uint64_t> disagreements;        // e with a value different from f0(e)
};
Diagonal ct_diagonal(std::uint64_t N, const std::vector<Program>& machines = machine_table());

//------------------------------------------------------------------------------
// Refuters

using DoubleOracle = std::function<std::uint64_t(std::uint64_t, std::uint64_t)>;

// f0(n, m) = 0 if m > h0(n) else 1.
DoubleOracle aca_refuter(Oracle h0);

struct KripkeGamma {
  Oracle g0, h0, gamma;
};
KripkeGamma kripke_gamma(DoubleOracle alpha, DoubleOracle beta, std::uint64_t N);

}  // namespace nsak

#endif  // NSAK_WITNESSES_HPP_
