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

#include <random>

#include "doctest.h"
#include "nsak/witnesses.hpp"

using namespace nsak;

TEST_CASE("y0 oracles") {
  CHECK(nsak::y0(8)(constant_oracle(1)) == 1);
  CHECK(nsak::y0(8)([](std::uint64_t n) -> std::uint64_t { return n == 0 ? 0 : 1; }) == 0);
  CHECK(nsak::y0(8)(extend(FinSeq(10, 1), 0)) == 1);
  Support s;
  nsak::y0(5)(constant_oracle(3), &s);
  CHECK(s == Support{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("y0 term agrees with the host functional") {
  for (std::uint64_t N : {1u, 3u, 8u}) {
    auto p = counterexample_pair(N);
    CHECK(apply_functional(y0_term(N), {p.f0}) == nsak::y0(N)(p.f0));
    CHECK(apply_functional(y0_term(N), {p.g0}) == nsak::y0(N)(p.g0));
  }
}

TEST_CASE("counterexample_pair oracles") {
  auto p = counterexample_pair(8);
  CHECK(nsak::y0(8)(p.f0) == 1);
  CHECK(nsak::y0(8)(p.g0) == 0);
  CHECK(p.agreement == 8);
  auto q = counterexample_pair(1);
  CHECK(q.g0(0) == 1);
  CHECK(q.g0(1) == 0);
  CHECK(q.g0(5) == 0);
}

TEST_CASE("discontinuity at every scale up to 64") {
  for (std::uint64_t N = 1; N <= 64; ++N) {
    auto p = counterexample_pair(N);
    REQUIRE(p.agreement == N);
    REQUIRE(nsak::y0(N)(p.f0) == 1);
    REQUIRE(nsak::y0(N)(p.g0) == 0);
  }
}

TEST_CASE("z_transform oracles") {
  Oracle f = [](std::uint64_t n) -> std::uint64_t { return n % 2 ? 5 : 0; };
  Oracle z = z_transform(f);
  CHECK(z(0) == 0);
  CHECK(z(1) == 1);
  CHECK(z(2) == 0);
  CHECK(z_transform(constant_oracle(0))(7) == 0);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> vals(12);
    for (auto& v : vals) v = std::uniform_int_distribution<int>(0, 3)(rng);
    Oracle g = extend(vals, 1), zg = z_transform(g);
    for (std::uint64_t k = 0; k < 12; ++k) {
      bool a = false, b = false;
      for (std::uint64_t n = 0; n <= k; ++n) {
        a = a || g(n) == 0;
        b = b || zg(n) == 0;
        REQUIRE(zg(n) <= 1);
      }
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("phi_sign oracles") {
  auto phi = phi_sign(16);
  CHECK(phi(RealCode::constant(-1)) == 0);
  CHECK(phi(RealCode::constant(1)) == 1);
  CHECK(phi(RealCode::constant(0)) == 0);
}

TEST_CASE("binary_digits oracles") {
  CHECK(binary_digits(RealCode::constant(0), 8, 64) == std::vector<int>(8, 0));
  CHECK(binary_digits(RealCode::constant(Rational(7, 10)), 4, 1024) == std::vector<int>{1, 0, 1, 1});
  CHECK(binary_digits(RealCode::constant(1), 4, 1024) == std::vector<int>{1, 1, 1, 1});
  CHECK_THROWS(binary_digits(RealCode::constant(1), 5, 4));
}

TEST_CASE("standard_part oracles") {
  auto z = standard_part(RealCode::constant(0), 64);
  CHECK(z.value() == 0);
  auto t = standard_part(RealCode::constant(Rational(3, 10)), 1024);
  CHECK(abs(t.value() - Rational(3, 10)) <= Rational(4, 1024));
  CHECK(abs(t.u.at(5000) - Rational(3, 10)) <= Rational(4, 1024));
  auto g = standard_part(RealCode::constant(2), 64);
  CHECK(g.guarded);
  CHECK(g.value() == 0);
  CHECK(g.guard_index == (std::uint64_t{1} << 60));
  CHECK(standard_part(RealCode::constant(0), 8).guard_index == 256);
}

TEST_CASE("standard_part is a code with binary digits") {
  auto sp = standard_part(RealCode::constant(Rational(5, 17)), 64);
  for (int d : sp.digits) CHECK((d == 0 || d == 1));
  std::mt19937_64 rng(4);
  CHECK_FALSE(fast_convergence_violation(sp.u, 2000, 100, rng).has_value());
}

TEST_CASE("functional_standard_part oracles") {
  Functional2 first{[](const Oracle& f) { return f(0) + 10; }};
  auto s = functional_standard_part(first, 3, 99);
  for (std::uint64_t i = 0; i < 16; ++i) {
    Oracle f = [i](std::uint64_t n) -> std::uint64_t { return (i >> (n % 4)) & 1; };
    CHECK(s(f) == first(f));
  }
  CHECK(s([](std::uint64_t n) -> std::uint64_t { return n == 0 ? 2 : 0; }) == 99);
  auto sy = functional_standard_part(nsak::y0(10), 4, 7);
  CHECK(sy(constant_oracle(1)) != nsak::y0(10)(constant_oracle(1)));
  Support sup;
  s(constant_oracle(1), &sup);
  CHECK(*sup.rbegin() < 3);
}

TEST_CASE("support soundness under disagreement outside the support") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t N = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<std::uint64_t> vals(20);
    for (auto& v : vals) v = std::uniform_int_distribution<int>(0, 2)(rng);
    Oracle f = extend(vals, 1);
    Support s;
    std::uint64_t out = nsak::y0(N)(f, &s);
    std::vector<std::uint64_t> other(40);
    for (std::uint64_t k = 0; k < 40; ++k)
      other[k] = s.count(k) ? f(k) : std::uniform_int_distribution<int>(0, 5)(rng);
    REQUIRE(nsak::y0(N)(extend(other, 3)) == out);
  }
}

TEST_CASE("trees and paths") {
  std::set<FinSeq> full;
  for (std::uint64_t len = 0; len <= 5; ++len)
    for (std::uint64_t i = 0; i < (1u << len); ++i) {
      FinSeq s(len);
      for (std::uint64_t j = 0; j < len; ++j) s[j] = (i >> j) & 1;
      full.insert(s);
    }
  CHECK(is_binary_tree(full));
  Oracle p = wkl_path(full, 5);
  for (std::uint64_t n = 0; n < 10; ++n) CHECK(p(n) == 0);
  std::set<FinSeq> spine{{}, {1}, {1, 1}, {1, 1, 1}};
  Oracle q = wkl_path(spine, 3);
  CHECK(seq_trunc(q, 5) == FinSeq{1, 1, 1, 0, 0});
  CHECK_THROWS_AS(wkl_path({{}, {1, 1}}, 3), NotATree);
  CHECK_FALSE(is_binary_tree({{}, {2}}));
  CHECK(wkl_path({}, 4)(0) == 0);
}

TEST_CASE("hbu_cover and find_cover oracles") {
  Functional2 three{[](const Oracle&) { return std::uint64_t{3}; }};
  Cover c = hbu_cover(three, 3);
  CHECK(c.ok);
  CHECK(c.leaves.size() == 8);
  for (auto r : c.radii) CHECK(r == 3);
  Functional2 g{[](const Oracle& f) { return f(0) + 1; }};
  Cover bad = hbu_cover(g, 1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.offending == FinSeq{1});
  CHECK(hbu_cover(g, 2).ok);
  Functional2 zero{[](const Oracle&) { return std::uint64_t{0}; }};
  Cover z = hbu_cover(zero, 0);
  CHECK(z.ok);
  CHECK(z.leaves.size() == 1);
  CHECK(cover_is_complete(z, 3));
  CHECK(find_cover(g, 16)->N == 2);
  CHECK(find_cover(zero, 16)->N == 0);
  Functional2 big{[](const Oracle&) { return std::uint64_t{17}; }};
  CHECK_FALSE(find_cover(big, 16).has_value());
  CHECK(cover_is_complete(*find_cover(g, 16), 4));
  CHECK_THROWS(hbu_cover(g, 21));
}

TEST_CASE("sup_on_cantor oracles") {
  Functional2 sum{[](const Oracle& f) { return f(0) + f(1); }};
  CHECK(sup_on_cantor(sum, 2) == 2);
  Functional2 c{[](const Oracle&) { return std::uint64_t{9}; }};
  CHECK(sup_on_cantor(c, 3) == 9);
  CHECK(sup_on_cantor(nsak::y0(4), 6) == 1);
  CHECK_THROWS_AS(sup_on_cantor(nsak::y0(4), 3), NotDetermined);
}

TEST_CASE("machines") {
  const auto& names = machine_names();
  CHECK(machine_table().size() >= 16);
  auto index = [&](const std::string& n) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), n) - names.begin());
  };
  const auto& m = machine_table();
  CHECK(machine_step(m[index("identity")], 7, 1000) == 7u);
  CHECK(machine_step(m[index("successor")], 7, 1000) == 8u);
  CHECK(machine_step(m[index("double")], 7, 1000) == 14u);
  CHECK(machine_step(m[index("parity")], 7, 1000) == 1u);
  CHECK(machine_step(m[index("parity")], 6, 1000) == 0u);
  CHECK(machine_step(m[index("predecessor")], 7, 1000) == 6u);
  CHECK(machine_step(m[index("predecessor")], 0, 1000) == 0u);
  CHECK(machine_step(m[index("half")], 7, 1000) == 3u);
  CHECK(machine_step(m[index("triple")], 4, 1000) == 12u);
  CHECK(machine_step(m[index("is-zero")], 0, 1000) == 1u);
  CHECK(machine_step(m[index("is-zero")], 3, 1000) == 0u);
  CHECK_FALSE(machine_step(m[index("loop")], 0, 1000).has_value());
  for (const auto& p : m)
    for (std::uint64_t n = 0; n < 6; ++n) {
      REQUIRE_FALSE(machine_step(p, n, 0).has_value());
      std::optional<std::uint64_t> prev;
      for (std::uint64_t s = 0; s < 60; ++s) {
        auto v = machine_step(p, n, s);
        if (prev) REQUIRE(v == prev);
        prev = v;
      }
    }
}

TEST_CASE("ct_diagonal oracles") {
  auto d = ct_diagonal(1000);
  CHECK(d.f0[0] == 1);
  CHECK(d.value[0] == 0u);
  CHECK(d.f0[2] == 0);
  CHECK_FALSE(d.value[2].has_value());
  auto z = ct_diagonal(0);
  for (int b : z.f0) CHECK(b == 0);
  for (std::size_t e = 0; e < d.f0.size(); ++e)
    if (d.value[e]) CHECK(*d.value[e] != static_cast<std::uint64_t>(d.f0[e]));
  CHECK_FALSE(d.disagreements.empty());
}

TEST_CASE("aca_refuter oracles") {
  auto f = aca_refuter([](std::uint64_t n) { return n; });
  CHECK(f(2, 3) == 0);
  CHECK(f(2, 2) == 1);
  for (std::uint64_t n = 0; n < 10; ++n) {
    std::uint64_t m = 0;
    while (f(n, m) != 0) ++m;
    CHECK(m == n + 1);
  }
}

TEST_CASE("kripke_gamma oracles") {
  auto k = kripke_gamma([](std::uint64_t, std::uint64_t) { return std::uint64_t{0}; },
                        [](std::uint64_t i, std::uint64_t) -> std::uint64_t { return i == 0 ? 0 : 1; }, 5);
  for (std::uint64_t m = 0; m < 5; ++m) {
    CHECK(k.g0(m) == 5);
    CHECK(k.h0(m) == 0);
    CHECK(k.gamma(m) == 0);
  }
  auto l = kripke_gamma([](std::uint64_t i, std::uint64_t) -> std::uint64_t { return i == 0 ? 1 : 0; },
                        [](std::uint64_t, std::uint64_t) { return std::uint64_t{1}; }, 5);
  CHECK(l.g0(3) == 0);
  CHECK(l.h0(3) == 5);
  CHECK(l.gamma(3) == 1);
  auto e = kripke_gamma([](std::uint64_t i, std::uint64_t) -> std::uint64_t { return i == 2 ? 1 : 0; },
                        [](std::uint64_t i, std::uint64_t) -> std::uint64_t { return i == 2 ? 0 : 1; }, 5);
  CHECK(e.g0(0) == e.h0(0));
  CHECK(e.gamma(0) == 1);
}
