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

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "nsak/battery.hpp"
#include "nsak/cli.hpp"
#include "nsak/kernel.hpp"
#include "nsak/witnesses.hpp"

namespace nsak {
namespace {

// One demo report: inputs, N, outputs, claimed bound, measured bound, verdict.
struct Report {
  explicit Report(std::string n) : name(std::move(n)) {}
  std::string name;
  std::string inputs;
  std::uint64_t N = 0;
  std::string outputs;
  std::string claimed;
  std::string measured;
  bool pass = false;
  Reporter::Fields extra;
};

int emit(const Report& r, Reporter& rep) {
  Reporter::Fields f = {{"demo", r.name},     {"inputs", r.inputs},   {"N", std::to_string(r.N)},
                        {"outputs", r.outputs}, {"claimed", r.claimed}, {"measured", r.measured}};
  f.insert(f.end(), r.extra.begin(), r.extra.end());
  f.emplace_back("verdict", r.pass ? "PASS" : "FAIL");
  std::ostringstream h;
  h << "demo " << r.name << '\n';
  for (const auto& [k, v] : f)
    if (k != "demo") h << "  " << k << ": " << v << '\n';
  std::string text = h.str();
  text.pop_back();
  rep.emit("demo", f, text);
  return r.pass ? 0 : 1;
}

std::string prefix(const Oracle& f, std::uint64_t n) {
  std::string out;
  for (std::uint64_t k = 0; k < n; ++k) out += (k ? "," : "") + std::to_string(f(k));
  return out + ",...";
}

std::string bits(const std::vector<int>& b) {
  std::string out;
  for (int d : b) out += static_cast<char>('0' + d);
  return out;
}

Rational rational_input(const RunConfig& cfg, const Rational& fallback) {
  return cfg.inputs.empty() ? fallback : parse_rational(cfg.inputs.front());
}

int demo_discontinuity(const RunConfig& cfg, Reporter& rep) {
  Report r("discontinuity");
  r.N = std::max<std::uint64_t>(cfg.N, 1);
  auto pair = counterexample_pair(r.N);
  auto y = y0(r.N);
  std::uint64_t agree = 0;
  while (agree < r.N + 1 && pair.f0(agree) == pair.g0(agree)) ++agree;
  std::uint64_t a = y(pair.f0), b = y(pair.g0);
  r.inputs = "f0=" + prefix(pair.f0, r.N + 2) + " g0=" + prefix(pair.g0, r.N + 2);
  r.outputs = std::to_string(a) + "/" + std::to_string(b);
  r.claimed = "agreement N, outputs 1/0";
  r.measured = "agreement " + std::to_string(agree) + ", outputs " + r.outputs;
  r.extra = {{"agreement", std::to_string(agree)}};
  r.pass = agree == r.N && a == 1 && b == 0;
  return emit(r, rep);
}

int demo_standard_part(const RunConfig& cfg, Reporter& rep) {
  Report r("standard-part");
  Rational x = rational_input(cfg, Rational(3, 10));
  r.N = cfg.N;
  StandardPart sp = standard_part(RealCode::constant(x), r.N, cfg.cap_exp);
  Rational err = abs(sp.value() - x);
  r.inputs = "x=" + to_string(x);
  r.outputs = "u=" + to_string(sp.value()) + " digits=" + bits(sp.digits) + (sp.guarded ? " (guarded)" : "");
  r.claimed = "|u-x| <= 4/N = " + to_string(Rational(4, r.N));
  r.measured = "|u-x| = " + to_string(err);
  r.extra = {{"guard_index", std::to_string(sp.guard_index)}};
  bool in_unit = x >= 0 && x <= 1;
  r.pass = in_unit ? err <= Rational(4, r.N) : sp.value() == 0;
  return emit(r, rep);
}

int demo_binary(const RunConfig& cfg, Reporter& rep) {
  Report r("binary");
  Rational x = rational_input(cfg, Rational(7, 10));
  r.N = cfg.N;
  std::uint64_t n = std::min<std::uint64_t>(16, r.N);
  auto b = binary_digits(RealCode::constant(x), n, r.N);
  Rational m = 0;
  for (std::uint64_t k = 0; k < n; ++k) m += b[k] * pow2(-static_cast<long>(k) - 1);
  Rational bound = pow2(-static_cast<long>(n)) + 2 * (Rational(1, r.N) + pow2(-static_cast<long>(r.N)));
  r.inputs = "x=" + to_string(x) + " digits=" + std::to_string(n);
  r.outputs = bits(b);
  r.claimed = "|x-m| <= 2^-n + 2(1/N + 2^-N) = " + to_string(bound);
  r.measured = "|x-m| = " + to_string(abs(x - m));
  r.pass = abs(x - m) <= bound;
  return emit(r, rep);
}

int demo_hbu(const RunConfig& cfg, Reporter& rep) {
  Report r("hbu");
  Functional2 G{[](const Oracle& f) { return f(0) + 1; }};
  std::uint64_t n_max = std::min<std::uint64_t>(std::max<std::uint64_t>(cfg.N, 2), 16);
  auto c = find_cover(G, n_max);
  r.N = c ? c->N : n_max;
  r.inputs = "G(f)=f(0)+1";
  if (c) {
    std::string radii;
    for (std::size_t i = 0; i < c->leaves.size(); ++i)
      radii += (i ? "," : "") + bits(std::vector<int>(c->leaves[i].begin(), c->leaves[i].end())) + ":" +
               std::to_string(c->radii[i]);
    r.outputs = "cover " + radii;
  } else {
    r.outputs = "not found";
  }
  bool complete = c && cover_is_complete(*c, c->N + 2);
  r.claimed = "cover at N=2, complete on prefixes of length N+2";
  r.measured = c ? "cover at N=" + std::to_string(c->N) + (complete ? ", complete" : ", incomplete") : "none";
  r.pass = c && c->N == 2 && complete;
  return emit(r, rep);
}

int demo_wkl(const RunConfig& cfg, Reporter& rep) {
  Report r("wkl");
  r.N = cfg.N;
  auto T = random_tree(r.N, cfg.seed);
  Oracle p = wkl_path(T, r.N);
  std::uint64_t in_tree = 0;
  while (in_tree <= r.N && T.count(seq_trunc(p, in_tree))) ++in_tree;
  r.inputs = "random tree, depth " + std::to_string(r.N) + ", " + std::to_string(T.size()) + " nodes, seed " +
             std::to_string(cfg.seed);
  r.outputs = "path " + prefix(p, r.N + 2);
  r.claimed = "prefixes of length 0.." + std::to_string(r.N) + " in T";
  r.measured = std::to_string(in_tree) + " prefixes in T";
  r.pass = in_tree == r.N + 1;
  return emit(r, rep);
}

int demo_ct(const RunConfig& cfg, Reporter& rep) {
  Report r("ct");
  r.N = cfg.N;
  Diagonal d = ct_diagonal(r.N);
  std::string vals, f0;
  std::uint64_t defined = 0, differ = 0;
  for (std::size_t e = 0; e < d.f0.size(); ++e) {
    f0 += static_cast<char>('0' + d.f0[e]);
    vals += (e ? "," : "") + (d.value[e] ? std::to_string(*d.value[e]) : std::string("-"));
    if (d.value[e]) {
      ++defined;
      differ += static_cast<std::uint64_t>(d.f0[e]) != *d.value[e];
    }
  }
  r.inputs = std::to_string(d.f0.size()) + " machines, step bound N";
  r.outputs = "f0=" + f0 + " values=" + vals;
  r.claimed = "f0(e) differs from every value machine e gives at e";
  r.measured = std::to_string(differ) + "/" + std::to_string(defined) + " defined indices differ";
  r.pass = differ == defined;
  return emit(r, rep);
}

int demo_aca(const RunConfig& cfg, Reporter& rep) {
  Report r("aca");
  r.N = cfg.N;
  Oracle h0 = [](std::uint64_t n) { return n; };
  DoubleOracle f0 = aca_refuter(h0);
  std::string least;
  bool ok = true;
  for (std::uint64_t n = 0; n < r.N; ++n) {
    std::uint64_t m = 0;
    while (f0(n, m) != 0) ++m;
    least += (n ? "," : "") + std::to_string(m);
    ok = ok && m == h0(n) + 1;
  }
  r.inputs = "h0=id, rows 0.." + std::to_string(r.N ? r.N - 1 : 0);
  r.outputs = "least zero per row " + least;
  r.claimed = "least witness of row n is h0(n)+1";
  r.measured = ok ? "all rows match" : "mismatch";
  r.pass = ok;
  return emit(r, rep);
}

int demo_kripke(const RunConfig& cfg, Reporter& rep) {
  Report r("kripke");
  r.N = std::max<std::uint64_t>(cfg.N, 1);
  DoubleOracle zero = [](std::uint64_t, std::uint64_t) -> std::uint64_t { return 0; };
  DoubleOracle one = [](std::uint64_t, std::uint64_t) -> std::uint64_t { return 1; };
  DoubleOracle beta0 = [](std::uint64_t k, std::uint64_t) -> std::uint64_t { return k == 0 ? 0 : 1; };
  DoubleOracle alpha1 = [](std::uint64_t k, std::uint64_t) -> std::uint64_t { return k == 0 ? 1 : 0; };
  auto a = kripke_gamma(zero, beta0, r.N);
  auto b = kripke_gamma(alpha1, one, r.N);
  r.inputs = "(alpha=0, beta(0,m)=0) and (alpha(0,m)=1, beta=1)";
  r.outputs = "gamma " + prefix(a.gamma, 4) + " and " + prefix(b.gamma, 4);
  r.claimed = "gamma constant 0, then constant 1";
  bool ok = true;
  for (std::uint64_t m = 0; m < 16; ++m)
    ok = ok && a.g0(m) == r.N && a.h0(m) == 0 && a.gamma(m) == 0 && b.g0(m) == 0 && b.h0(m) == r.N &&
         b.gamma(m) == 1;
  r.measured = ok ? "as claimed on m < 16" : "differs";
  r.pass = ok;
  return emit(r, rep);
}

int demo_hat(const RunConfig& cfg, Reporter& rep) {
  Report r("hat");
  r.N = cfg.N;
  RealCode h = hat([](std::uint64_t n) { return Rational(n % 2); });
  std::mt19937_64 rng(cfg.seed);
  auto bad = fast_convergence_violation(h, cfg.samples, std::max<std::uint64_t>(r.N, 1), rng);
  std::string approx;
  for (std::uint64_t k = 0; k < std::min<std::uint64_t>(r.N, 6); ++k) approx += (k ? "," : "") + to_string(h.at(k));
  r.inputs = "raw q(n) = n mod 2";
  r.outputs = "hat " + approx;
  r.claimed = "|q(m)-q(n)| <= 2^-m for m <= n < N";
  r.measured = bad ? "violated at " + std::to_string(bad->first) + "," + std::to_string(bad->second)
                   : std::to_string(cfg.samples) + " pairs within bound";
  r.pass = !bad;
  return emit(r, rep);
}

int demo_sup(const RunConfig& cfg, Reporter& rep) {
  Report r("sup");
  r.N = std::max<std::uint64_t>(cfg.N, 3);
  std::uint64_t M = r.N - 2;
  auto Y = y0(M);
  std::uint64_t s = sup_on_cantor(Y, r.N);
  std::mt19937_64 rng(cfg.seed);
  std::uint64_t seen = 0;
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    std::uint64_t word = rng();
    seen = std::max(seen, Y([word](std::uint64_t k) { return k < 64 ? (word >> k) & 1 : 0; }));
  }
  r.inputs = "Y=y0(" + std::to_string(M) + ")";
  r.outputs = "sup " + std::to_string(s);
  r.claimed = "Y f <= sup for binary f";
  r.measured = "max over " + std::to_string(cfg.samples) + " random binary f = " + std::to_string(seen);
  r.pass = seen <= s;
  return emit(r, rep);
}

const std::map<std::string, std::function<int(const RunConfig&, Reporter&)>>& demos() {
  static const std::map<std::string, std::function<int(const RunConfig&, Reporter&)>> m = {
      {"discontinuity", demo_discontinuity}, {"standard-part", demo_standard_part}, {"binary", demo_binary},
      {"hbu", demo_hbu},                     {"wkl", demo_wkl},                     {"ct", demo_ct},
      {"aca", demo_aca},                     {"kripke", demo_kripke},               {"hat", demo_hat},
      {"sup", demo_sup},
  };
  return m;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : demos()) out.push_back(name);
  return out;
}

int run_demo(const std::string& name, const RunConfig& cfg, Reporter& rep) { return demos().at(name)(cfg, rep); }

int run_selftest(const RunConfig& cfg, Reporter& rep) {
  std::vector<BatteryResult> results = {
      battery_library(default_library_dir()),
      battery_discontinuity(64),
      battery_standard_part(cfg.samples, cfg.seed, cfg.cap_exp),
      battery_binary_digits(cfg.samples, cfg.seed),
      battery_majorizability(cfg.seed),
      battery_hbu(std::max<std::uint64_t>(cfg.samples / 10, 1), cfg.seed),
      battery_wkl(std::max<std::uint64_t>(cfg.samples / 10, 1), cfg.seed),
      battery_ct(1000),
      battery_reals(cfg.samples, 10 * cfg.samples, cfg.seed),
  };
  std::uint64_t passed = 0;
  for (const auto& b : results) {
    Reporter::Fields f = {{"criterion", std::to_string(b.criterion)}, {"check", b.name}};
    f.insert(f.end(), b.fields.begin(), b.fields.end());
    f.emplace_back("verdict", b.ok ? "PASS" : "FAIL");
    std::string human = (b.ok ? "PASS " : "FAIL ") + std::to_string(b.criterion) + " " + b.name;
    for (const auto& [k, v] : b.fields) human += " " + k + "=" + v;
    rep.emit("selftest", f, human);
    passed += b.ok;
  }
  rep.emit("summary",
           {{"passed", std::to_string(passed)}, {"total", std::to_string(results.size())},
            {"seed", std::to_string(cfg.seed)}, {"samples", std::to_string(cfg.samples)}},
           "selftest: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " passed (seed " +
               std::to_string(cfg.seed) + ")");
  return passed == results.size() ? 0 : 1;
}

}  // namespace nsak
