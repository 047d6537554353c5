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

#include "nsak/witnesses.hpp"

#include <algorithm>

#include "nsak/prelude.hpp"

namespace nsak {

std::uint64_t Functional2::operator()(const Oracle& f, Support* support) const {
  if (!support) return fn(f);
  Oracle logged = [&f, support](std::uint64_t n) {
    support->insert(n);
    return f(n);
  };
  return fn(logged);
}

Oracle constant_oracle(std::uint64_t c) {
  return [c](std::uint64_t) { return c; };
}

Oracle extend(const FinSeq& s, std::uint64_t tail) {
  return [s, tail](std::uint64_t n) { return n < s.size() ? s[n] : tail; };
}

//------------------------------------------------------------------------------
// Discontinuity

Functional2 y0(std::uint64_t N) {
  return {[N](const Oracle& f) -> std::uint64_t {
    for (std::uint64_t n = 0; n <= N + 1; ++n)
      if (f(n) == 0) return 0;
    return 1;
  }};
}

Term y0_term(std::uint64_t N) {
  std::string text = "lam f:0->0. sg (Rec[0] (S (S " + std::to_string(N) +
                     ")) 1 (lam k:0. lam r:0. Rec[0] (f k) 0 (lam j:0. lam q:0. r)))";
  return parse_term(text, &prelude());
}

CounterexamplePair counterexample_pair(std::uint64_t N) {
  CounterexamplePair p;
  p.f0 = constant_oracle(1);
  p.g0 = [N](std::uint64_t n) -> std::uint64_t { return n < N ? 1 : 0; };
  while (p.f0(p.agreement) == p.g0(p.agreement)) ++p.agreement;
  return p;
}

Oracle z_transform(Oracle f) {
  return [f = std::move(f)](std::uint64_t n) -> std::uint64_t { return f(n) == 0 ? 0 : 1; };
}

//------------------------------------------------------------------------------
// Reals at scale N

std::function<int(const RealCode&)> phi_sign(std::uint64_t N) {
  Rational bound(1, N);
  return [N, bound](const RealCode& x) { return x.at(N) <= bound ? 0 : 1; };
}

std::vector<int> binary_digits(const RealCode& x, std::uint64_t n_digits, std::uint64_t N) {
  if (n_digits > N) throw std::invalid_argument("binary_digits needs n_digits <= N");
  Rational q = x.at(N);
  Rational slack(1, N);
  Rational lower = 0;
  std::vector<int> bits;
  bits.reserve(n_digits);
  for (std::uint64_t i = 0; i < n_digits; ++i) {
    Rational mid = lower + pow2(-static_cast<long>(i) - 1);
    // phi_sign applied to x - mid, whose N-th approximation is q - mid.
    int bit = (q - mid <= slack) ? 0 : 1;
    if (bit) lower = mid;
    bits.push_back(bit);
  }
  return bits;
}

Rational StandardPart::value() const {
  Rational sum = 0;
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i]) sum += pow2(-static_cast<long>(i) - 1);
  return sum;
}

StandardPart standard_part(const RealCode& x, std::uint64_t N, unsigned cap_exp) {
  if (N == 0) throw std::invalid_argument("standard_part needs N >= 1");
  StandardPart sp;
  unsigned e = static_cast<unsigned>(std::min<std::uint64_t>(N, cap_exp));
  sp.guard_index = std::uint64_t{1} << e;
  Rational q = x.at(sp.guard_index);
  Rational band(1, N);
  if (-band <= q && q <= 1 + band) {
    sp.digits = binary_digits(x, N, N);
  } else {
    sp.guarded = true;
    sp.digits.assign(N, 0);
  }
  auto partial = std::make_shared<std::vector<Rational>>();
  Rational sum = 0;
  for (std::size_t i = 0; i < sp.digits.size(); ++i) {
    if (sp.digits[i]) sum += pow2(-static_cast<long>(i) - 1);
    partial->push_back(sum);
  }
  sp.u = RealCode([partial](std::uint64_t k) { return (*partial)[std::min<std::uint64_t>(k, partial->size() - 1)]; });
  return sp;
}

Functional2 functional_standard_part(const Functional2& Y, std::uint64_t N, std::uint64_t n0) {
  return {[Y, N, n0](const Oracle& f) -> std::uint64_t {
    FinSeq prefix(N);
    for (std::uint64_t i = 0; i < N; ++i) {
      prefix[i] = f(i);
      if (prefix[i] > 1) return n0;
    }
    return Y(extend(prefix));
  }};
}

//------------------------------------------------------------------------------
// Trees and covers

bool is_binary_tree(const std::set<FinSeq>& T) {
  for (const auto& s : T) {
    if (std::any_of(s.begin(), s.end(), [](std::uint64_t b) { return b > 1; })) return false;
    if (!s.empty() && !T.count(FinSeq(s.begin(), s.end() - 1))) return false;
  }
  return true;
}

Oracle wkl_path(const std::set<FinSeq>& T, std::uint64_t N) {
  if (!is_binary_tree(T)) throw NotATree("input is not a prefix-closed set of binary sequences");
  const FinSeq* best = nullptr;
  for (const auto& s : T) {
    if (s.size() > N) continue;
    if (!best || s.size() > best->size()) best = &s;  // set order makes ties left-most
  }
  return extend(best ? *best : FinSeq{});
}

namespace {

FinSeq bits_of(std::uint64_t i, std::uint64_t len) {
  FinSeq s(len);
  for (std::uint64_t j = 0; j < len; ++j) s[j] = (i >> (len - 1 - j)) & 1;
  return s;
}

}  // namespace

Cover hbu_cover(const Functional2& G, std::uint64_t N, std::uint64_t cap) {
  if (N > cap) throw std::invalid_argument("cover depth " + std::to_string(N) + " exceeds cap " + std::to_string(cap));
  Cover c;
  c.N = N;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << N); ++i) {
    FinSeq sigma = bits_of(i, N);
    std::uint64_t r = G(extend(sigma));
    if (r > N) {
      c.offending = sigma;
      c.leaves.clear();
      c.radii.clear();
      return c;
    }
    c.leaves.push_back(std::move(sigma));
    c.radii.push_back(r);
  }
  c.ok = true;
  return c;
}

std::optional<Cover> find_cover(const Functional2& G, std::uint64_t N_max, std::uint64_t cap) {
  std::vector<std::uint64_t> tried;
  for (std::uint64_t N = 0; N < N_max; N = N == 0 ? 1 : 2 * N) tried.push_back(N);
  tried.push_back(N_max);
  for (std::uint64_t N : tried) {
    Cover c = hbu_cover(G, N, cap);
    if (c.ok) return c;
  }
  return std::nullopt;
}

bool cover_is_complete(const Cover& c, std::uint64_t depth) {
  if (!c.ok) return false;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << depth); ++i) {
    FinSeq tau = bits_of(i, depth);
    Oracle f = extend(tau);
    bool inside = false;
    for (std::size_t k = 0; k < c.leaves.size() && !inside; ++k) {
      Oracle beta = extend(c.leaves[k]);
      bool agree = true;
      for (std::uint64_t j = 0; j < c.radii[k] && agree; ++j) agree = f(j) == beta(j);
      inside = agree;
    }
    if (!inside) return false;
  }
  return true;
}

std::uint64_t sup_on_cantor(const Functional2& Y, std::uint64_t N) {
  std::uint64_t best = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << N); ++i) {
    Support s;
    std::uint64_t v = Y(extend(bits_of(i, N)), &s);
    if (!s.empty() && *s.rbegin() >= N)
      throw NotDetermined("functional queried index " + std::to_string(*s.rbegin()) + " beyond " + std::to_string(N));
    best = std::max(best, v);
  }
  return best;
}

//------------------------------------------------------------------------------
// Machines

std::optional<std::uint64_t> machine_step(const Program& p, std::uint64_t input, std::uint64_t steps) {
  std::uint64_t reg[4] = {input, 0, 0, 0};
  std::size_t pc = 0;
  for (std::uint64_t s = 0; s < steps; ++s) {
    if (pc >= p.size()) return std::nullopt;
    const Instruction& ins = p[pc];
    switch (ins.op) {
      case Instruction::Op::Halt:
        return reg[1];
      case Instruction::Op::Inc:
        ++reg[ins.reg];
        pc = ins.next;
        break;
      case Instruction::Op::Dec:
        if (reg[ins.reg] == 0) {
          pc = ins.branch;
        } else {
          --reg[ins.reg];
          pc = ins.next;
        }
        break;
    }
  }
  return std::nullopt;
}

namespace {

Instruction inc(unsigned r, std::size_t next) { return {Instruction::Op::Inc, r, next, 0}; }
Instruction dec(unsigned r, std::size_t next, std::size_t if_zero) { return {Instruction::Op::Dec, r, next, if_zero}; }
Instruction halt() { return {Instruction::Op::Halt, 0, 0, 0}; }

struct Table {
  std::vector<Program> programs;
  std::vector<std::string> names;
};

const Table& table() {
  static const Table t = [] {
    Table out;
    auto add = [&](std::string name, Program p) {
      out.names.push_back(std::move(name));
      out.programs.push_back(std::move(p));
    };
    add("zero", {halt()});
    add("one", {inc(1, 1), halt()});
    add("loop", {inc(2, 0)});
    add("identity", {dec(0, 1, 2), inc(1, 0), halt()});
    add("successor", {dec(0, 1, 2), inc(1, 0), inc(1, 3), halt()});
    add("double", {dec(0, 1, 3), inc(1, 2), inc(1, 0), halt()});
    add("parity", {dec(0, 1, 4), dec(0, 0, 2), inc(1, 3), halt(), halt()});
    add("zero-if-even", {dec(0, 1, 3), dec(0, 0, 2), inc(2, 2), halt()});
    add("predecessor", {dec(0, 1, 3), dec(0, 2, 3), inc(1, 1), halt()});
    add("five", {inc(1, 1), inc(1, 2), inc(1, 3), inc(1, 4), inc(1, 5), halt()});
    add("sign", {dec(0, 1, 2), inc(1, 2), halt()});
    add("is-zero", {dec(0, 2, 1), inc(1, 2), halt()});
    add("countdown", {dec(0, 0, 1), halt()});
    add("loop-unless-zero", {dec(0, 1, 2), inc(2, 1), inc(1, 3), halt()});
    add("triple", {dec(0, 1, 4), inc(1, 2), inc(1, 3), inc(1, 0), halt()});
    add("half", {dec(0, 1, 3), dec(0, 2, 3), inc(1, 0), halt()});
    add("slow-zero", {dec(0, 1, 3), inc(2, 2), inc(3, 0), halt()});
    return out;
  }();
  return t;
}

}  // namespace

const std::vector<Program>& machine_table() { return table().programs; }
const std::vector<std::string>& machine_names() { return table().names; }

Diagonal ct_diagonal(std::uint64_t N, const std::vector<Program>& machines) {
  Diagonal d;
  for (std::size_t e = 0; e < machines.size(); ++e) {
    auto v = machine_step(machines[e], e, N);
    d.value.push_back(v);
    d.f0.push_back(v && *v == 0 ? 1 : 0);
    if (v && *v != static_cast<std::uint64_t>(d.f0.back())) d.disagreements.push_back(e);
  }
  return d;
}

//------------------------------------------------------------------------------
// Refuters

DoubleOracle aca_refuter(Oracle h0) {
  return [h0 = std::move(h0)](std::uint64_t n, std::uint64_t m) -> std::uint64_t { return m > h0(n) ? 0 : 1; };
}

KripkeGamma kripke_gamma(DoubleOracle alpha, DoubleOracle beta, std::uint64_t N) {
  KripkeGamma k;
  k.g0 = [alpha, N](std::uint64_t m) {
    for (std::uint64_t i = 0; i <= N; ++i)
      if (alpha(i, m) != 0) return i;
    return N;
  };
  k.h0 = [beta, N](std::uint64_t m) {
    for (std::uint64_t i = 0; i <= N; ++i)
      if (beta(i, m) == 0) return i;
    return N;
  };
  k.gamma = [g = k.g0, h = k.h0](std::uint64_t m) -> std::uint64_t { return g(m) > h(m) ? 0 : 1; };
  return k;
}

}  // namespace nsak
