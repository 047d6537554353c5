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

#include "nsak/reals.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <unordered_map>

namespace nsak {

Rational pow2(long exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  Rational r(1, 1);
  r = Rational(mpz_class(1), p);
  return r;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

//------------------------------------------------------------------------------
// Codes

struct RealCode::State {
  Program program;
  std::mutex mu;
  std::unordered_map<std::uint64_t, Rational> memo;
};

RealCode::RealCode() : RealCode(Program([](std::uint64_t) { return Rational(0); })) {}

RealCode::RealCode(Program program) : state_(std::make_shared<State>()) { state_->program = std::move(program); }

RealCode RealCode::constant(const Rational& q) {
  return RealCode([q](std::uint64_t) { return q; });
}

Rational RealCode::at(std::uint64_t k) const {
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->memo.find(k);
    if (it != state_->memo.end()) return it->second;
  }
  Rational v = state_->program(k);
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->memo.emplace(k, v).first->second;
}

namespace {

// Shared state of a hatted sequence: how far the raw prefix is known to be
// valid, and the first violation once found.
struct HatState {
  RealCode raw;
  std::mutex mu;
  std::uint64_t valid_through = 0;  // raw(0..valid_through) pairwise fine
  std::optional<std::uint64_t> violation;
};

}  // namespace

RealCode hat(RealCode::Program raw) {
  auto st = std::make_shared<HatState>();
  st->raw = RealCode(std::move(raw));
  return RealCode([st](std::uint64_t n) {
    std::lock_guard<std::mutex> lock(st->mu);
    while (!st->violation && st->valid_through < n) {
      std::uint64_t j = st->valid_through + 1;
      Rational qj = st->raw.at(j);
      for (std::uint64_t i = 0; i < j; ++i) {
        if (!(abs(st->raw.at(i) - qj) < pow2(-static_cast<long>(i)))) {
          st->violation = j;
          break;
        }
      }
      if (!st->violation) st->valid_through = j;
    }
    return st->raw.at(std::min(n, st->valid_through));
  });
}

Rational approx(const RealCode& x, std::uint64_t k) { return x.at(k); }

std::optional<std::pair<std::uint64_t, std::uint64_t>> fast_convergence_violation(
    const RealCode& x, std::uint64_t pairs, std::uint64_t bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, bound - 1);
  for (std::uint64_t p = 0; p < pairs; ++p) {
    std::uint64_t n = pick(rng), i = pick(rng);
    if (!(abs(x.at(n) - x.at(n + i)) < pow2(-static_cast<long>(n)))) return std::make_pair(n, i);
  }
  return std::nullopt;
}

bool verify_distinct(const RealCode& x, const RealCode& y, std::uint64_t n) {
  return abs(x.at(n) - y.at(n)) > pow2(1 - static_cast<long>(n));
}

EqVerdict real_eq_upto(const RealCode& x, const RealCode& y, std::uint64_t K) {
  for (std::uint64_t n = 0; n <= K; ++n)
    if (verify_distinct(x, y, n)) return {true, n};
  return {false, K};
}

bool verify_lt(const RealCode& x, const RealCode& y, std::uint64_t n) {
  return x.at(n) + pow2(1 - static_cast<long>(n)) < y.at(n);
}

std::optional<std::uint64_t> real_lt_witness(const RealCode& x, const RealCode& y, std::uint64_t K) {
  for (std::uint64_t n = 0; n <= K; ++n)
    if (verify_lt(x, y, n)) return n;
  return std::nullopt;
}

RealCode parse_real_literal(std::string_view text) {
  auto inside = [&](std::string_view prefix) -> std::optional<std::string> {
    if (text.substr(0, prefix.size()) != prefix || text.empty() || text.back() != ')') return std::nullopt;
    return std::string(text.substr(prefix.size(), text.size() - prefix.size() - 1));
  };
  if (auto body = inside("rat(")) return RealCode::constant(parse_rational(*body));
  if (auto path = inside("cauchy(")) {
    std::ifstream in(*path);
    if (!in) throw std::invalid_argument("cannot open '" + *path + "'");
    std::vector<Rational> values;
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line[0] != '#') values.push_back(parse_rational(line));
    if (values.empty()) throw std::invalid_argument("empty cauchy file '" + *path + "'");
    return hat([values](std::uint64_t k) { return values[std::min<std::uint64_t>(k, values.size() - 1)]; });
  }
  throw std::invalid_argument("expected rat(p/q) or cauchy(path), found '" + std::string(text) + "'");
}

//------------------------------------------------------------------------------
// Sequences

mpz_class seq_encode(const FinSeq& s) {
  mpz_class c = 0;
  for (std::uint64_t a : s) {
    c = 2 * c + 1;
    mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), a);
  }
  return c;
}

FinSeq seq_decode(const mpz_class& code) {
  if (code < 0) throw std::invalid_argument("negative sequence code");
  FinSeq out;
  mpz_class c = code;
  while (c != 0) {
    std::uint64_t a = mpz_scan1(c.get_mpz_t(), 0);
    out.push_back(a);
    mpz_fdiv_q_2exp(c.get_mpz_t(), c.get_mpz_t(), a + 1);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

FinSeq seq_concat(const FinSeq& s, const FinSeq& t) {
  FinSeq out = s;
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

FinSeq seq_trunc(const FinSeq& s, std::uint64_t N) {
  if (N > s.size()) throw std::out_of_range("truncation beyond sequence length");
  return FinSeq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(N));
}

FinSeq seq_trunc(const std::function<std::uint64_t(std::uint64_t)>& stream, std::uint64_t N) {
  FinSeq out(N);
  for (std::uint64_t i = 0; i < N; ++i) out[i] = stream(i);
  return out;
}

}  // namespace nsak
