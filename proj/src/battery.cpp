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

#include "nsak/battery.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "nsak/kernel.hpp"
#include "nsak/majorizability.hpp"
#include "nsak/witnesses.hpp"

namespace nsak {
namespace {

using Rng = std::mt19937_64;

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// p/q in [0,1] with 1 <= q <= max_den.
Rational random_unit_rational(Rng& rng, std::uint64_t max_den) {
  std::uint64_t q = uniform(rng, 1, max_den);
  Rational r(static_cast<unsigned long>(uniform(rng, 0, q)), static_cast<unsigned long>(q));
  r.canonicalize();
  return r;
}

std::string str(std::uint64_t n) { return std::to_string(n); }

// Six decimals, exact: the rational is rounded down, never through floating point.
std::string decimal(const Rational& q) {
  mpz_class scaled = mpz_class(q.get_num() * 1000000) / q.get_den();
  mpz_class whole = scaled / 1000000, frac = scaled % 1000000;
  std::string f = frac.get_str();
  return whole.get_str() + "." + std::string(6 - f.size(), '0') + f;
}

BatteryResult make(int criterion, std::string name) {
  BatteryResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  return r;
}

// Bits of the terminating binary expansion of x in [0,1); 1 gives all ones.
int exact_bit(const Rational& x, std::uint64_t i) {
  if (x >= 1) return 1;
  Rational scaled = x * pow2(static_cast<long>(i) + 1);
  mpz_class fl = scaled.get_num() / scaled.get_den();
  return mpz_odd_p(fl.get_mpz_t()) ? 1 : 0;
}

}  // namespace

std::set<FinSeq> random_tree(std::uint64_t depth, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution keep(0.3);
  FinSeq branch(depth);
  for (auto& b : branch) b = uniform(rng, 0, 1);
  std::set<FinSeq> T;
  std::vector<FinSeq> frontier{{}};
  while (!frontier.empty()) {
    FinSeq s = std::move(frontier.back());
    frontier.pop_back();
    T.insert(s);
    if (s.size() == depth) continue;
    bool on_branch = std::equal(s.begin(), s.end(), branch.begin());
    for (std::uint64_t b = 0; b < 2; ++b)
      if ((on_branch && branch[s.size()] == b) || keep(rng)) {
        FinSeq t = s;
        t.push_back(b);
        frontier.push_back(std::move(t));
      }
  }
  return T;
}

BatteryResult battery_library(const std::string& dir) {
  BatteryResult r = make(1, "proof-library");
  auto entries = check_library(dir);
  LemmaTable lemmas;
  std::uint64_t theorems = 0, theorems_ok = 0, lemma_total = 0, lemma_ok = 0;
  for (const auto& e : entries) {
    if (e.script.lemma) {
      ++lemma_total;
      if (e.result.ok()) {
        ++lemma_ok;
        lemmas.emplace(e.script.name, *e.result.theorem);
      }
    } else {
      ++theorems;
      if (e.result.ok()) ++theorems_ok;
    }
  }
  static const std::set<std::string> kCore = {"L2", "L3", "L5"};
  std::uint64_t total = 0, rejected = 0, core = 0, core_rejected = 0;
  for (const auto& e : entries) {
    if (e.script.lemma || !e.result.ok()) continue;
    for (const auto& m : mutations(e.script)) {
      bool rej = !check_script(apply_mutation(e.script, m), lemmas).ok();
      ++total;
      rejected += rej;
      if (kCore.count(e.script.name)) {
        ++core;
        core_rejected += rej;
      }
    }
  }
  r.ok = theorems == 7 && theorems_ok == 7 && lemma_ok == lemma_total && core >= 20 && core_rejected == core &&
         rejected == total;
  r.fields = {{"theorems", str(theorems_ok) + "/" + str(theorems)},
              {"lemmas", str(lemma_ok) + "/" + str(lemma_total)},
              {"core_mutations_rejected", str(core_rejected) + "/" + str(core)},
              {"mutations_rejected", str(rejected) + "/" + str(total)}};
  return r;
}

BatteryResult battery_discontinuity(std::uint64_t max_N) {
  BatteryResult r = make(2, "discontinuity");
  std::uint64_t good = 0;
  std::string first_bad = "none";
  for (std::uint64_t N = 1; N <= max_N; ++N) {
    auto pair = counterexample_pair(N);
    bool ok = pair.agreement == N && pair.f0(N) != pair.g0(N);
    for (std::uint64_t k = 0; k < N && ok; ++k) ok = pair.f0(k) == pair.g0(k);
    auto y = y0(N);
    ok = ok && y(pair.f0) == 1 && y(pair.g0) == 0;
    if (ok) ++good;
    else if (first_bad == "none") first_bad = str(N);
  }
  r.ok = good == max_N;
  r.fields = {{"scales", str(good) + "/" + str(max_N)}, {"first_failure", first_bad}};
  return r;
}

BatteryResult battery_standard_part(std::uint64_t samples, std::uint64_t seed, unsigned cap_exp) {
  BatteryResult r = make(3, "standard-part");
  Rng rng(seed);
  std::uint64_t good = 0, total = 0;
  Rational worst = 0;  // largest error times N
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rational x = random_unit_rational(rng, 10000);
    for (std::uint64_t N : {64u, 256u, 1024u}) {
      ++total;
      StandardPart sp = standard_part(RealCode::constant(x), N, cap_exp);
      Rational err = abs(sp.value() - x) * static_cast<unsigned long>(N);
      bool binary = true;
      for (int d : sp.digits) binary = binary && (d == 0 || d == 1);
      if (err > worst) worst = err;
      if (err <= 4 && binary && !sp.guarded) ++good;
    }
  }
  r.ok = good == total;
  r.fields = {{"checked", str(good) + "/" + str(total)}, {"claimed", "4/N"}, {"measured", decimal(worst) + "/N"}};
  return r;
}

BatteryResult battery_binary_digits(std::uint64_t samples, std::uint64_t seed) {
  BatteryResult r = make(4, "binary-approximation");
  constexpr std::uint64_t n = 16, N = 1024;
  const Rational slack = 2 * (Rational(1, N) + pow2(-static_cast<long>(N)));
  const Rational bound = pow2(-static_cast<long>(n)) + slack;
  Rng rng(seed);
  std::uint64_t good = 0, agree = 0, banded = 0;
  Rational worst = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rational x = random_unit_rational(rng, 10000);
    auto bits = binary_digits(RealCode::constant(x), n, N);
    Rational m = 0;
    for (std::uint64_t k = 0; k < n; ++k) m += bits[k] * pow2(-static_cast<long>(k) - 1);
    Rational err = abs(x - m);
    if (err > worst) worst = err;
    // A disagreement with the exact expansion must sit next to a dyadic midpoint.
    bool ok = err <= bound;
    std::uint64_t k = 0;
    Rational prefix = 0;
    while (k < n && bits[k] == exact_bit(x, k)) prefix += bits[k] * pow2(-static_cast<long>(k) - 1), ++k;
    if (k == n) {
      ++agree;
    } else {
      Rational mid = prefix + pow2(-static_cast<long>(k) - 1);
      if (abs(x - mid) <= slack) ++banded;
      else ok = false;
    }
    good += ok;
  }
  r.ok = good == samples;
  r.fields = {{"checked", str(good) + "/" + str(samples)},
              {"exact_expansion_agree", str(agree)},
              {"differ_within_slack", str(banded)},
              {"claimed", "2^-16+2(1/N+2^-N)"},
              {"measured_max_error", decimal(worst)}};
  return r;
}

BatteryResult battery_majorizability(std::uint64_t seed) {
  BatteryResult r = make(5, "majorizability");
  auto results = run_model_suite({1, 2}, seed);
  std::uint64_t ok = 0, exhaustive = 0, checked = 0;
  std::string first_bad = "none";
  for (const auto& s : results) {
    checked += s.checked;
    exhaustive += s.mode == "exhaustive";
    if (s.ok) ++ok;
    else if (first_bad == "none") first_bad = s.property + "@" + s.type + "/B=" + str(s.B);
  }
  r.ok = !results.empty() && ok == results.size();
  r.fields = {{"properties", str(ok) + "/" + str(results.size())},
              {"exhaustive", str(exhaustive)},
              {"elements", str(checked)},
              {"first_failure", first_bad}};
  return r;
}

BatteryResult battery_hbu(std::uint64_t samples, std::uint64_t seed) {
  BatteryResult r = make(6, "hbu-cover");
  Functional2 g{[](const Oracle& f) { return f(0) + 1; }};
  auto base = find_cover(g, 16);
  bool base_ok = base && base->N == 2 && cover_is_complete(*base, base->N + 2);
  Rng rng(seed);
  std::uint64_t good = 0, max_N = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::uint64_t modulus = uniform(rng, 0, 8);
    std::vector<std::uint64_t> table(std::uint64_t{1} << modulus);
    for (auto& v : table) v = uniform(rng, 0, 8);
    Functional2 G{[table, modulus](const Oracle& f) {
      std::uint64_t idx = 0;
      for (std::uint64_t k = 0; k < modulus; ++k) idx |= (f(k) & 1) << k;
      return table[idx];
    }};
    auto c = find_cover(G, 16);
    if (c && cover_is_complete(*c, c->N + 2)) {
      ++good;
      if (c->N > max_N) max_N = c->N;
    }
  }
  r.ok = base_ok && good == samples;
  r.fields = {{"f0_plus_1_N", base ? str(base->N) : "none"},
              {"covers", str(good) + "/" + str(samples)},
              {"max_N", str(max_N)}};
  return r;
}

BatteryResult battery_wkl(std::uint64_t samples, std::uint64_t seed) {
  BatteryResult r = make(7, "wkl-path");
  constexpr std::uint64_t depth = 20;
  Rng rng(seed);
  std::uint64_t good = 0, nodes = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::set<FinSeq> T = random_tree(depth, rng());
    nodes += T.size();
    Oracle p = wkl_path(T, depth);
    bool ok = is_binary_tree(T);
    for (std::uint64_t k = 0; k <= depth && ok; ++k) ok = T.count(seq_trunc(p, k)) > 0;
    good += ok;
  }
  r.ok = good == samples;
  r.fields = {{"trees", str(good) + "/" + str(samples)}, {"depth", str(depth)}, {"nodes", str(nodes)}};
  return r;
}

BatteryResult battery_ct(std::uint64_t steps) {
  BatteryResult r = make(8, "ct-diagonal");
  Diagonal d = ct_diagonal(steps);
  std::uint64_t defined = 0, differ = 0;
  for (std::size_t e = 0; e < d.f0.size(); ++e) {
    if (!d.value[e]) continue;
    ++defined;
    differ += static_cast<std::uint64_t>(d.f0[e]) != *d.value[e];
  }
  r.ok = machine_table().size() >= 16 && defined > 0 && differ == defined && d.disagreements.size() == defined;
  r.fields = {{"machines", str(machine_table().size())},
              {"steps", str(steps)},
              {"defined", str(defined)},
              {"differ", str(differ)}};
  return r;
}

BatteryResult battery_reals(std::uint64_t inputs, std::uint64_t pairs, std::uint64_t seed) {
  BatteryResult r = make(9, "reals");
  Rng rng(seed);
  std::uint64_t converge = 0;
  std::vector<RealCode> codes;
  for (std::uint64_t i = 0; i < inputs; ++i) {
    std::vector<Rational> raw(48);
    auto den = static_cast<long>(1 + i % 7);
    for (auto& q : raw) q = Rational(std::uniform_int_distribution<long>(-50, 50)(rng), den);
    RealCode h = hat([raw](std::uint64_t k) { return raw[std::min<std::uint64_t>(k, raw.size() - 1)]; });
    converge += !fast_convergence_violation(h, pairs, 40, rng).has_value();
    codes.push_back(h);
  }
  // Refutations on constants and on hat outputs, each re-verified.
  std::uint64_t refuted = 0, reverified = 0;
  for (const RealCode& y : codes) {
    RealCode x = RealCode::constant(Rational(std::uniform_int_distribution<long>(-40, 40)(rng), 16));
    EqVerdict v = real_eq_upto(x, y, 30);
    if (v.distinct) {
      ++refuted;
      reverified += verify_distinct(x, y, v.index);
    }
    for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}})
      if (auto w = real_lt_witness(a, b, 30)) {
        ++refuted;
        reverified += verify_lt(a, b, *w);
      }
  }
  r.ok = converge == inputs && reverified == refuted;
  r.fields = {{"fast_convergence", str(converge) + "/" + str(inputs)},
              {"pairs_per_input", str(pairs)},
              {"refutations_reverified", str(reverified) + "/" + str(refuted)}};
  return r;
}

}  // namespace nsak
