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

// The inference rules. Each step is checked against the canonical forms of
// the steps it cites; nothing here trusts the author's formula text beyond
// parsing and typing it.

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nsak/kernel.hpp"

namespace nsak {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Reject {
  std::string reason;
};

[[noreturn]] void reject(const std::string& why) { throw Reject{why}; }

// Tokens of a justification after the rule name.
class Args {
 public:
  explicit Args(std::string text) : text_(std::move(text)) {}

  bool empty() const { return trim(std::string_view(text_).substr(pos_)).empty(); }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) reject("missing argument");
    return text_.substr(start, pos_ - start);
  }

  int ref() {
    std::string w = word();
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      reject("expected a step number, found '" + w + "'");
    return std::stoi(w);
  }

  std::pair<int, int> range() {
    std::string w = word();
    auto dash = w.find('-');
    if (dash == std::string::npos) reject("expected a step range a-b, found '" + w + "'");
    try {
      return {std::stoi(w.substr(0, dash)), std::stoi(w.substr(dash + 1))};
    } catch (const std::exception&) {
      reject("expected a step range a-b, found '" + w + "'");
    }
  }

  std::string rest() {
    std::string r = trim(std::string_view(text_).substr(pos_));
    pos_ = text_.size();
    return r;
  }

  void done() {
    if (!empty()) reject("unexpected trailing text '" + rest() + "'");
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string text_;
  std::size_t pos_ = 0;
};

// eq_subst: `b` arises from `a` by replacing some occurrences of one side
// of the equation with the other. Both formulas are walked in lockstep in
// core form; a differing pair of subterms must match the equation (up to
// normalization) and must not capture the equation's variables.
class SubstWalk {
 public:
  SubstWalk(Term s, Term t) : s_(canonical_term(s)), t_(canonical_term(t)) {
    for (const auto& v : free_vars(s_)) fv_.insert(v);
    for (const auto& v : free_vars(t_)) fv_.insert(v);
  }

  bool formulas(const Formula& a, const Formula& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case FormKind::Eq:
      case FormKind::Le:
        return terms(a->lhs, b->lhs) && terms(a->rhs, b->rhs);
      case FormKind::St:
        return type_equal(a->type, b->type) && terms(a->lhs, b->lhs);
      case FormKind::And:
      case FormKind::Or:
      case FormKind::Implies:
        return formulas(a->a, b->a) && formulas(a->b, b->b);
      case FormKind::Forall:
      case FormKind::Exists: {
        if (a->var != b->var || !type_equal(a->type, b->type)) return false;
        bound_.push_back(a->var);
        bool ok = formulas(a->a, b->a);
        bound_.pop_back();
        return ok;
      }
      case FormKind::Falsum:
        return true;
      default:
        return false;
    }
  }

 private:
  bool terms(const Term& a, const Term& b) {
    if (alpha_equal(a, b)) return true;
    if (a->kind == b->kind && children(a, b)) return true;
    for (const auto& v : bound_)
      if (fv_.count(v)) return false;
    Term na = canonical_term(a), nb = canonical_term(b);
    return (alpha_equal(na, s_) && alpha_equal(nb, t_)) || (alpha_equal(na, t_) && alpha_equal(nb, s_));
  }

  bool children(const Term& a, const Term& b) {
    switch (a->kind) {
      case TermKind::App:
      case TermKind::Pair:
        return terms(a->a, b->a) && terms(a->b, b->b);
      case TermKind::Lam: {
        if (a->name != b->name || !type_equal(a->type, b->type)) return false;
        bound_.push_back(a->name);
        bool ok = terms(a->a, b->a);
        bound_.pop_back();
        return ok;
      }
      default:
        return false;
    }
  }

  Term s_, t_;
  std::set<std::string> fv_;
  std::vector<std::string> bound_;
};

class Checker {
 public:
  Checker(const ProofScript& s, const LemmaTable& lemmas) : s_(s), lemmas_(lemmas) {}

  CheckResult run() {
    CheckResult result;
    out_.name = s_.name;
    out_.lemma = s_.lemma;
    int expected = 1;
    for (const auto& step : s_.steps) {
      current_ = step.index;
      rule_.clear();
      try {
        if (step.index != expected) reject("steps must be numbered 1, 2, ... (expected " + std::to_string(expected) + ")");
        ++expected;
        check_step(step);
      } catch (const Reject& r) {
        result.failure = CheckFailure{step.index, rule_, r.reason};
        return result;
      }
    }
    if (s_.steps.empty()) {
      result.failure = CheckFailure{0, "", "script has no steps"};
      return result;
    }
    const Done& last = done_.at(s_.steps.back().index);
    if (!last.deps.empty()) {
      result.failure = CheckFailure{s_.steps.back().index, "",
                                    "final step still depends on assumption " + std::to_string(*last.deps.begin())};
      return result;
    }
    if (s_.goal && !alpha_equal(canonical(*s_.goal), last.canon)) {
      result.failure = CheckFailure{s_.steps.back().index, "goal", "final step does not state the declared goal"};
      return result;
    }
    out_.sequent.conclusion = last.literal;
    result.theorem = out_;
    return result;
  }

 private:
  struct Done {
    Formula literal;
    Formula canon;
    std::set<int> deps;
    bool assumption = false;
  };

  void check_step(const ScriptStep& step) {
    try {
      check_formula(step.formula, s_.vars);
    } catch (const TypeError& e) {
      reject(std::string("ill-typed formula: ") + e.what());
    }
    std::istringstream js(step.justification);
    js >> rule_;
    std::string rest;
    std::getline(js, rest);
    Args args(rest);
    Done d;
    d.literal = step.formula;
    d.canon = canonical(step.formula);
    const Formula& C = d.canon;

    if (rule_ == "assume") {
      args.done();
      d.deps = {step.index};
      d.assumption = true;
    } else if (rule_ == "axiom") {
      d.deps = {};
      axiom(args, C);
    } else if (rule_ == "use") {
      std::string name = args.word();
      args.done();
      use(name, C);
    } else if (rule_ == "mp") {
      int i = args.ref(), j = args.ref();
      args.done();
      const Done &a = get(i), &b = get(j);
      bool ok = (a.canon->kind == FormKind::Implies && same(a.canon->a, b.canon) && same(a.canon->b, C)) ||
                (b.canon->kind == FormKind::Implies && same(b.canon->a, a.canon) && same(b.canon->b, C));
      if (!ok) reject("steps " + std::to_string(i) + " and " + std::to_string(j) + " do not yield this formula by modus ponens");
      d.deps = join(a.deps, b.deps);
    } else if (rule_ == "and_i") {
      int i = args.ref(), j = args.ref();
      args.done();
      const Done &a = get(i), &b = get(j);
      if (C->kind != FormKind::And || !same(C->a, a.canon) || !same(C->b, b.canon))
        reject("formula is not the conjunction of steps " + std::to_string(i) + " and " + std::to_string(j));
      d.deps = join(a.deps, b.deps);
    } else if (rule_ == "and_e") {
      int i = args.ref();
      args.done();
      const Done& a = get(i);
      if (a.canon->kind != FormKind::And || !(same(a.canon->a, C) || same(a.canon->b, C)))
        reject("formula is not a conjunct of step " + std::to_string(i));
      d.deps = a.deps;
    } else if (rule_ == "or_i") {
      int i = args.ref();
      args.done();
      const Done& a = get(i);
      if (C->kind != FormKind::Or || !(same(C->a, a.canon) || same(C->b, a.canon)))
        reject("step " + std::to_string(i) + " is not a disjunct of this formula");
      d.deps = a.deps;
    } else if (rule_ == "or_e") {
      int i = args.ref();
      auto [a1, b1] = args.range();
      auto [a2, b2] = args.range();
      args.done();
      const Done& dis = get(i);
      if (dis.canon->kind != FormKind::Or) reject("step " + std::to_string(i) + " is not a disjunction");
      const Done& h1 = assumption(a1, b1);
      const Done& h2 = assumption(a2, b2);
      if (!same(h1.canon, dis.canon->a)) reject("step " + std::to_string(a1) + " does not assume the left disjunct");
      if (!same(h2.canon, dis.canon->b)) reject("step " + std::to_string(a2) + " does not assume the right disjunct");
      if (!same(get(b1).canon, C) || !same(get(b2).canon, C))
        reject("both cases must conclude this formula");
      d.deps = join(dis.deps, join(minus(get(b1).deps, a1), minus(get(b2).deps, a2)));
    } else if (rule_ == "imp_i") {
      auto [a, b] = args.range();
      args.done();
      const Done& h = assumption(a, b);
      if (C->kind != FormKind::Implies || !same(C->a, h.canon) || !same(C->b, get(b).canon))
        reject("formula is not step " + std::to_string(a) + " -> step " + std::to_string(b));
      d.deps = minus(get(b).deps, a);
    } else if (rule_ == "forall_i") {
      int i = args.ref();
      std::string x = args.empty() ? "" : args.word();
      args.done();
      d.deps = forall_i(get(i), x, C);
    } else if (rule_ == "forall_e") {
      int i = args.ref();
      Term t = term(args.rest());
      const Done& a = get(i);
      if (a.canon->kind != FormKind::Forall) reject("step " + std::to_string(i) + " is not universal");
      expect_type(t, a.canon->type);
      if (!same(canonical(substitute(a.canon->a, a.canon->var, t)), C))
        reject("formula is not the instance of step " + std::to_string(i) + " at " + print(t));
      d.deps = a.deps;
    } else if (rule_ == "exists_i") {
      int i = args.ref();
      Term t = term(args.rest());
      const Done& a = get(i);
      if (C->kind != FormKind::Exists) reject("formula is not existential");
      expect_type(t, C->type);
      if (!same(canonical(substitute(C->a, C->var, t)), a.canon))
        reject("step " + std::to_string(i) + " is not the instance of this formula at " + print(t));
      d.deps = a.deps;
    } else if (rule_ == "exists_e") {
      int i = args.ref();
      auto [a, b] = args.range();
      std::string x = args.empty() ? "" : args.word();
      args.done();
      d.deps = exists_e(i, a, b, x, C);
    } else if (rule_ == "falsum_e") {
      int i = args.ref();
      args.done();
      const Done& a = get(i);
      if (!same(a.canon, canonical(falsum()))) reject("step " + std::to_string(i) + " is not false");
      d.deps = a.deps;
    } else if (rule_ == "eq_refl") {
      args.done();
      if (C->kind != FormKind::Eq || !alpha_equal(C->lhs, C->rhs)) reject("sides do not normalize to the same term");
    } else if (rule_ == "eq_sym") {
      int i = args.ref();
      args.done();
      const Done& a = get(i);
      if (a.canon->kind != FormKind::Eq || C->kind != FormKind::Eq || !alpha_equal(a.canon->lhs, C->rhs) ||
          !alpha_equal(a.canon->rhs, C->lhs))
        reject("formula is not step " + std::to_string(i) + " reversed");
      d.deps = a.deps;
    } else if (rule_ == "eq_subst") {
      int i = args.ref(), j = args.ref();
      args.done();
      const Done &e = get(i), &a = get(j);
      if (e.canon->kind != FormKind::Eq) reject("step " + std::to_string(i) + " is not an equation");
      SubstWalk walk(e.canon->lhs, e.canon->rhs);
      if (!walk.formulas(core_form(a.literal), core_form(step.formula)))
        reject("formula does not arise from step " + std::to_string(j) + " by rewriting with step " +
               std::to_string(i));
      d.deps = join(e.deps, a.deps);
    } else if (rule_ == "unfold") {
      int i = args.ref();
      args.done();
      const Done& a = get(i);
      if (!same(a.canon, C)) reject("formula is not definitionally equal to step " + std::to_string(i));
      d.deps = a.deps;
    } else if (rule_ == "ind" || rule_ == "ia_st") {
      int i = args.ref(), j = args.ref();
      args.done();
      d.deps = induction(rule_ == "ia_st", i, j, C);
    } else if (rule_ == "eval_leaf") {
      std::string w = args.word();
      args.done();
      std::uint64_t budget = 0;
      try {
        budget = std::stoull(w);
      } catch (const std::exception&) {
        reject("eval_leaf needs a numeric budget");
      }
      bool truth = false;
      try {
        truth = eval_leaf(step.formula, budget);
      } catch (const LeafError& e) {
        reject(e.what());
      }
      if (!truth) reject("leaf evaluates to false");
      out_.leaves.push_back(LeafFact{step.index, step.formula, budget});
    } else {
      reject("unknown rule '" + rule_ + "'");
    }
    done_.emplace(step.index, std::move(d));
  }

  static bool same(const Formula& a, const Formula& b) { return alpha_equal(a, b); }

  static std::set<int> join(const std::set<int>& a, const std::set<int>& b) {
    std::set<int> out = a;
    out.insert(b.begin(), b.end());
    return out;
  }

  static std::set<int> minus(std::set<int> a, int x) {
    a.erase(x);
    return a;
  }

  const Done& get(int i) const {
    if (i < 1 || i >= current_) reject("step " + std::to_string(i) + " is not an earlier step");
    return done_.at(i);
  }

  const Done& assumption(int a, int b) const {
    if (a > b) reject("empty range " + std::to_string(a) + "-" + std::to_string(b));
    const Done& h = get(a);
    get(b);
    if (!h.assumption) reject("step " + std::to_string(a) + " is not an assumption");
    return h;
  }

  Term term(const std::string& text) const {
    if (text.empty()) reject("missing term");
    Term t;
    try {
      t = parse_term(text, &s_.defs);
    } catch (const SyntaxError& e) {
      reject(std::string("bad term: ") + e.what());
    }
    return t;
  }

  void expect_type(const Term& t, const Type& want) const {
    Type got;
    try {
      got = infer_type(t, s_.vars);
    } catch (const TypeError& e) {
      reject(std::string("ill-typed term: ") + e.what());
    }
    if (!type_equal(got, want)) reject("term " + print(t) + " has type " + print(got) + ", expected " + print(want));
  }

  // x must not occur free in any open assumption.
  void fresh_for(const std::string& x, const std::set<int>& deps, int except) const {
    for (int h : deps) {
      if (h == except) continue;
      if (free_vars(done_.at(h).canon).count(x))
        reject("eigenvariable " + x + " is free in open assumption " + std::to_string(h));
    }
  }

  std::set<int> forall_i(const Done& a, std::string x, const Formula& C) const {
    if (C->kind != FormKind::Forall) reject("formula is not universal");
    if (x.empty()) x = C->var;
    auto it = s_.vars.find(x);
    if (it == s_.vars.end() || !type_equal(it->second, C->type))
      reject("eigenvariable " + x + " must be declared with type " + print(C->type));
    if (free_vars(C).count(x)) reject("eigenvariable " + x + " is free in the conclusion");
    fresh_for(x, a.deps, 0);
    if (!same(canonical(substitute(C->a, C->var, var(x))), a.canon))
      reject("premise is not the body at " + x);
    return a.deps;
  }

  std::set<int> exists_e(int i, int a, int b, std::string x, const Formula& C) const {
    const Done& ex = get(i);
    if (ex.canon->kind != FormKind::Exists) reject("step " + std::to_string(i) + " is not existential");
    const Done& h = assumption(a, b);
    const Type& T = ex.canon->type;
    auto matches = [&](const std::string& y) {
      auto it = s_.vars.find(y);
      return it != s_.vars.end() && type_equal(it->second, T) &&
             same(canonical(substitute(ex.canon->a, ex.canon->var, var(y))), h.canon);
    };
    if (x.empty()) {
      if (matches(ex.canon->var)) {
        x = ex.canon->var;
      } else {
        for (const auto& y : free_vars(h.canon))
          if (matches(y)) {
            x = y;
            break;
          }
      }
      if (x.empty()) reject("step " + std::to_string(a) + " does not assume an instance of step " + std::to_string(i));
    } else if (!matches(x)) {
      reject("step " + std::to_string(a) + " does not assume the instance at " + x);
    }
    if (!same(get(b).canon, C)) reject("formula is not the conclusion of step " + std::to_string(b));
    if (free_vars(C).count(x)) reject("eigenvariable " + x + " is free in the conclusion");
    if (free_vars(ex.canon).count(x)) reject("eigenvariable " + x + " is free in step " + std::to_string(i));
    fresh_for(x, get(b).deps, a);
    return join(ex.deps, minus(get(b).deps, a));
  }

  std::set<int> induction(bool external, int i, int j, const Formula& C) {
    if (external && !s_.theory.count(TheoryEntry{SchemaId::IA_ST, false}))
      reject("IA_ST is not in the declared theory");
    if (C->kind != FormKind::Forall || !type_equal(C->type, base_type()))
      reject("formula is not a universal statement over type 0");
    const std::string& n = C->var;
    Formula body = C->a;
    if (external) {
      if (body->kind != FormKind::Implies || body->a->kind != FormKind::St ||
          !alpha_equal(body->a->lhs, var(n)))
        reject("formula is not of the form forall-st n. A(n)");
      body = body->b;
      out_.theory_used.insert(TheoryEntry{SchemaId::IA_ST, false});
    } else if (!is_internal(body)) {
      reject("internal induction needs an internal formula");
    }
    const Done &base = get(i), &step = get(j);
    if (!same(canonical(substitute(body, n, zero())), base.canon))
      reject("step " + std::to_string(i) + " is not the base case");
    Formula next = implies(body, substitute(body, n, succ(var(n))));
    Formula want = external ? forall(n, base_type(), implies(st(base_type(), var(n)), next))
                            : forall(n, base_type(), next);
    if (!same(canonical(want), step.canon)) reject("step " + std::to_string(j) + " is not the induction step");
    return join(base.deps, step.deps);
  }

  void axiom(Args& args, const Formula& C) {
    std::string head = args.word();
    std::string rest = args.rest();
    TheoryEntry entry;
    try {
      auto items = parse_theory_item(head);
      if (items.size() != 1) reject("name one schema");
      entry = items[0];
    } catch (const std::invalid_argument& e) {
      reject(e.what());
    }
    if (!s_.theory.count(entry)) reject(to_string(entry) + " is not in the declared theory");
    std::map<std::string, std::string> keys;
    if (!rest.empty()) {
      if (rest.front() != '{' || rest.back() != '}') reject("axiom keys go in braces");
      std::string body = rest.substr(1, rest.size() - 2);
      int depth = 0;
      std::size_t start = 0;
      auto add = [&](std::string item) {
        item = trim(item);
        if (item.empty()) return;
        auto eq = item.find('=');
        if (eq == std::string::npos) reject("axiom key needs key=value: " + item);
        keys[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
      };
      for (std::size_t k = 0; k < body.size(); ++k) {
        char c = body[k];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ';' && depth == 0) {
          add(body.substr(start, k - start));
          start = k + 1;
        }
      }
      add(body.substr(start));
    }
    Formula inst;
    try {
      Instantiation in = instantiation_from_keys(entry.id, keys, s_.vars, &s_.defs);
      in.relativized = entry.relativized;
      inst = instantiate(in);
    } catch (const SchemaError& e) {
      reject(e.what());
    } catch (const SyntaxError& e) {
      reject(std::string("bad axiom argument: ") + e.what());
    } catch (const std::invalid_argument& e) {
      reject(e.what());
    }
    if (!same(canonical(inst), C)) reject("formula is not the instance " + print(inst));
    out_.theory_used.insert(entry);
  }

  void use(const std::string& name, const Formula& C) {
    auto it = lemmas_.find(name);
    if (it == lemmas_.end()) reject("no checked lemma named " + name);
    const CheckedTheorem& lem = it->second;
    if (!lem.lemma) reject(name + " is not a lemma");
    if (!lem.sequent.hypotheses.empty()) reject("lemma " + name + " has open hypotheses");
    if (!free_vars(lem.sequent.conclusion).empty()) reject("lemma " + name + " is not closed");
    for (const auto& e : lem.theory_used)
      if (!s_.theory.count(e)) reject("lemma " + name + " uses " + to_string(e) + ", outside the declared theory");
    if (!same(canonical(lem.sequent.conclusion), C)) reject("formula is not the statement of lemma " + name);
    out_.theory_used.insert(lem.theory_used.begin(), lem.theory_used.end());
    if (std::find(out_.lemmas_used.begin(), out_.lemmas_used.end(), name) == out_.lemmas_used.end())
      out_.lemmas_used.push_back(name);
    for (const auto& leaf : lem.leaves) out_.leaves.push_back(leaf);
  }

  const ProofScript& s_;
  const LemmaTable& lemmas_;
  std::map<int, Done> done_;
  CheckedTheorem out_;
  int current_ = 0;
  std::string rule_;
};

}  // namespace

CheckResult check_script(const ProofScript& script, const LemmaTable& lemmas) {
  return Checker(script, lemmas).run();
}

}  // namespace nsak
