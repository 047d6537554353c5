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

#include "nsak/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "nsak/evaluator.hpp"
#include "nsak/prelude.hpp"

namespace nsak {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on `sep` outside parentheses, brackets and braces.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

//------------------------------------------------------------------------------
// Theories

std::string to_string(const TheoryEntry& e) { return to_string(e.id) + (e.relativized ? "^st" : ""); }

std::vector<TheoryEntry> parse_theory_item(const std::string& item) {
  std::string name = trim(item);
  if (name == "DG") {
    std::vector<TheoryEntry> out;
    for (const auto& info : catalog())
      if (info.in_dg) out.push_back({info.id, false});
    return out;
  }
  bool rel = false;
  if (name.size() > 3 && name.compare(name.size() - 3, 3, "^st") == 0) {
    rel = true;
    name.resize(name.size() - 3);
  }
  auto id = parse_schema_id(name);
  if (!id) throw std::invalid_argument("'" + name + "' is not a catalog schema");
  return {{*id, rel}};
}

//------------------------------------------------------------------------------
// Script text

ScriptParseError::ScriptParseError(int l, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}

ProofScript parse_script(const std::string& text, const std::string& path) {
  ProofScript s;
  s.path = path;
  s.defs = prelude();
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::string goal_text;
  int goal_line = 0;
  auto wrap = [&](auto&& fn) {
    try {
      return fn();
    } catch (const SyntaxError& e) {
      throw ScriptParseError(line, std::string("syntax error: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ScriptParseError(line, e.what());
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    std::string l = trim(raw);
    if (l.empty() || l[0] == '#') continue;
    if (std::isdigit(static_cast<unsigned char>(l[0]))) {
      auto first = l.find('|');
      if (first == std::string::npos) throw ScriptParseError(line, "step needs `i | formula | justification`");
      // The justification follows the last top-level bar; formulas may use `|`.
      int depth = 0;
      std::size_t last = std::string::npos;
      for (std::size_t i = first + 1; i < l.size(); ++i) {
        if (l[i] == '{') ++depth;
        if (l[i] == '}') --depth;
        if (l[i] == '|' && depth == 0) last = i;
      }
      if (last == std::string::npos) throw ScriptParseError(line, "step needs a justification column");
      ScriptStep step;
      step.line = line;
      try {
        step.index = std::stoi(trim(l.substr(0, first)));
      } catch (const std::exception&) {
        throw ScriptParseError(line, "bad step index");
      }
      step.formula_text = trim(l.substr(first + 1, last - first - 1));
      step.justification = trim(l.substr(last + 1));
      step.formula = wrap([&] { return parse_formula(step.formula_text, &s.defs); });
      s.steps.push_back(std::move(step));
      continue;
    }
    if (starts_with(l, "def ")) {
      auto eq = l.find(":=");
      if (eq == std::string::npos) throw ScriptParseError(line, "def needs `def NAME := term`");
      std::string name = trim(l.substr(4, eq - 4));
      if (name.empty()) throw ScriptParseError(line, "def needs a name");
      Term t = wrap([&] { return parse_term(trim(l.substr(eq + 2)), &s.defs); });
      s.defs.insert_or_assign(name, t);
      continue;
    }
    auto colon = l.find(':');
    if (colon == std::string::npos) throw ScriptParseError(line, "unrecognized line");
    std::string key = trim(l.substr(0, colon));
    std::string value = trim(l.substr(colon + 1));
    if (key == "name") {
      s.name = value;
    } else if (key == "kind") {
      if (value != "lemma" && value != "theorem") throw ScriptParseError(line, "kind is lemma or theorem");
      s.lemma = value == "lemma";
    } else if (key == "theory") {
      for (const auto& item : split_top(value, ','))
        if (!item.empty())
          for (const auto& e : wrap([&] { return parse_theory_item(item); })) s.theory.insert(e);
    } else if (key == "var") {
      for (const auto& item : split_top(value, ',')) {
        auto c = item.find(':');
        if (c == std::string::npos) throw ScriptParseError(line, "var needs `name:type`");
        std::string v = trim(item.substr(0, c));
        Type t = wrap([&] { return parse_type(trim(item.substr(c + 1))); });
        s.vars.insert_or_assign(v, t);
      }
    } else if (key == "goal") {
      goal_text = value;
      goal_line = line;
    } else {
      throw ScriptParseError(line, "unknown header '" + key + "'");
    }
  }
  if (!goal_text.empty()) {
    line = goal_line;
    s.goal = wrap([&] { return parse_formula(goal_text, &s.defs); });
  }
  if (s.name.empty()) throw ScriptParseError(0, "script has no name");
  return s;
}

ProofScript load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_script(buf.str(), path);
}

//------------------------------------------------------------------------------
// Canonical forms

namespace {

constexpr std::uint64_t kCanonFuel = 1u << 20;

}  // namespace

Term canonical_term(const Term& t) {
  try {
    return normalize(t, kCanonFuel);
  } catch (const FuelExhausted&) {
    return t;  // comparison then fails rather than lies
  }
}

namespace {

Term norm(const Term& t) { return canonical_term(t); }

Formula expand_st(const Formula& f) {
  switch (f->kind) {
    case FormKind::ForallSt:
      return forall(f->var, f->type, implies(st(f->type, var(f->var)), expand_st(f->a)));
    case FormKind::ExistsSt:
      return exists(f->var, f->type, conj(st(f->type, var(f->var)), expand_st(f->a)));
    case FormKind::Forall:
    case FormKind::Exists:
      return quant(f->kind, f->var, f->type, expand_st(f->a));
    case FormKind::And:
      return conj(expand_st(f->a), expand_st(f->b));
    case FormKind::Or:
      return disj(expand_st(f->a), expand_st(f->b));
    case FormKind::Implies:
      return implies(expand_st(f->a), expand_st(f->b));
    default:
      return f;
  }
}

Formula normalize_terms(const Formula& f) {
  switch (f->kind) {
    case FormKind::Eq:
      return eq(norm(f->lhs), norm(f->rhs));
    case FormKind::St:
      return st(f->type, norm(f->lhs));
    case FormKind::Forall:
    case FormKind::Exists:
      return quant(f->kind, f->var, f->type, normalize_terms(f->a));
    case FormKind::And:
      return conj(normalize_terms(f->a), normalize_terms(f->b));
    case FormKind::Or:
      return disj(normalize_terms(f->a), normalize_terms(f->b));
    case FormKind::Implies:
      return implies(normalize_terms(f->a), normalize_terms(f->b));
    default:
      return f;
  }
}

}  // namespace

Formula core_form(const Formula& f) { return expand_st(desugar(f)); }

Formula canonical(const Formula& f) { return normalize_terms(core_form(f)); }

bool same_proposition(const Formula& a, const Formula& b) { return alpha_equal(canonical(a), canonical(b)); }

//------------------------------------------------------------------------------
// Leaf evaluation

namespace {

struct LeafEval {
  std::uint64_t budget;
  std::uint64_t used = 0;

  void spend() {
    if (++used > budget) throw LeafError("leaf budget of " + std::to_string(budget) + " exhausted");
  }

  std::uint64_t value(const Term& t) {
    spend();
    try {
      return eval_nat(t, budget - used + 1);
    } catch (const FuelExhausted&) {
      throw LeafError("leaf budget of " + std::to_string(budget) + " exhausted");
    } catch (const EvalError& e) {
      throw LeafError(e.what());
    }
  }

  bool eval(const Formula& f) {
    switch (f->kind) {
      case FormKind::Falsum:
        return false;
      case FormKind::Eq:
        return value(f->lhs) == value(f->rhs);
      case FormKind::Le:
        return value(f->lhs) <= value(f->rhs);
      case FormKind::EqT:
        if (f->type->kind != TypeKind::Base) break;
        return value(f->lhs) == value(f->rhs);
      case FormKind::LeT:
      case FormKind::LeqStar:  // at type 0 majorization is plain order
        if (f->type->kind != TypeKind::Base) break;
        return value(f->lhs) <= value(f->rhs);
      case FormKind::And:
        return eval(f->a) && eval(f->b);
      case FormKind::Or:
        return eval(f->a) || eval(f->b);
      case FormKind::Implies:
        return !eval(f->a) || eval(f->b);
      case FormKind::BForall:
      case FormKind::BExists: {
        std::uint64_t bound = value(f->lhs);
        bool all = f->kind == FormKind::BForall;
        for (std::uint64_t n = 0; n <= bound; ++n) {
          spend();
          if (eval(substitute(f->a, f->var, numeral(n))) != all) return !all;
        }
        return all;
      }
      default:
        break;
    }
    throw LeafError("leaf formulas use only atoms at type 0, connectives and bounded quantifiers: " + print(f));
  }
};

}  // namespace

bool eval_leaf(const Formula& f, std::uint64_t budget) {
  if (!free_vars(f).empty()) throw LeafError("leaf formula is not closed: " + print(f));
  if (!is_internal(f)) throw LeafError("leaf formula is not internal: " + print(f));
  try {
    check_formula(f);
  } catch (const TypeError& e) {
    throw LeafError(std::string("leaf formula is ill-typed: ") + e.what());
  }
  LeafEval ev{budget};
  return ev.eval(f);
}

std::string CheckFailure::describe() const {
  std::string where = step > 0 ? "step " + std::to_string(step) : "script";
  return where + (rule.empty() ? "" : " (" + rule + ")") + ": " + reason;
}

}  // namespace nsak
