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

// Exact rationals, real codes (fast-converging rational sequences) and
// finite-sequence coding.
//
// A real code q satisfies |q(n) - q(n+i)| < 2^-n for all n, i. hat() turns an
// arbitrary rational sequence into one by freezing it at the last index
// before the first violation.
//
// Sequence code: code(<>) = 0, code(s*<a>) = 2^a * (2 code(s) + 1).

#ifndef NSAK_REALS_HPP_
#define NSAK_REALS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsak {

using Rational = mpq_class;

Rational pow2(long exponent);  // 2^exponent, negative exponents allowed
Rational abs(const Rational& q);
std::string to_string(const Rational& q);
// "p/q" or "p" with optional sign.
Rational parse_rational(std::string_view text);

class RealCode {
 public:
  using Program = std::function<Rational(std::uint64_t)>;

  RealCode();  // the code of 0
  explicit RealCode(Program program);
  static RealCode constant(const Rational& q);

  // q(k), memoized per code instance; thread-safe.
  Rational at(std::uint64_t k) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

RealCode hat(RealCode::Program raw);
Rational approx(const RealCode& x, std::uint64_t k);

// Checks |q(n) - q(n+i)| < 2^-n on `pairs` random (n, i) with n, i < bound.
// Returns the first failing pair.
std::optional<std::pair<std::uint64_t, std::uint64_t>> fast_convergence_violation(
    const RealCode& x, std::uint64_t pairs, std::uint64_t bound, std::mt19937_64& rng);

struct EqVerdict {
  bool distinct = false;
  std::uint64_t index = 0;  // witness n when distinct, else K
};
// distinct(n) iff |q(n) - r(n)| > 2^(1-n) at the first such n <= K.
EqVerdict real_eq_upto(const RealCode& x, const RealCode& y, std::uint64_t K);
bool verify_distinct(const RealCode& x, const RealCode& y, std::uint64_t n);

// lt(n) iff q(n) + 2^(1-n) < r(n) at the first such n <= K.
std::optional<std::uint64_t> real_lt_witness(const RealCode& x, const RealCode& y, std::uint64_t K);
bool verify_lt(const RealCode& x, const RealCode& y, std::uint64_t n);

// "rat(p/q)" or "cauchy(path)" (one rational per line, hatted; the last line
// repeats beyond the file).
RealCode parse_real_literal(std::string_view text);

//------------------------------------------------------------------------------
// Finite sequences

using FinSeq = std::vector<std::uint64_t>;

mpz_class seq_encode(const FinSeq& s);
FinSeq seq_decode(const mpz_class& code);
FinSeq seq_concat(const FinSeq& s, const FinSeq& t);
// First N entries; throws std::out_of_range beyond |s|.
FinSeq seq_trunc(const FinSeq& s, std::uint64_t N);
FinSeq seq_trunc(const std::function<std::uint64_t(std::uint64_t)>& stream, std::uint64_t N);

}  // namespace nsak

#endif  // NSAK_REALS_HPP_
