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

#include "nsak/checker.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "nsak/prelude.hpp"

namespace nsak {
namespace {

//------------------------------------------------------------------------------
// Typing

// Scoped lookup: innermost binders shadow the context.
class Scope {
 public:
  explicit Scope(const Context& ctx) : ctx_(ctx) {}
  void push(const std::string& name, const Type& t) { stack_.emplace_back(name, t); }
  void pop() { stack_.pop_back(); }
  Type lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if (it->first == name) return it->second;
    auto it = ctx_.find(name);
    if (it == ctx_.end()) return nullptr;
    return it->second;
  }

 private:
  const Context& ctx_;
  std::vector<std::pair<std::string, Type>> stack_;
};

[[noreturn]] void type_fail(const std::string& what, const Term& at) {
  throw TypeError(what + " in '" + print(at) + "'");
}

Type infer(const Term& t, Scope& scope) {
  switch (t->kind) {
    case TermKind::Var: {
      Type ty = scope.lookup(t->name);
      if (!ty) throw TypeError("unbound variable '" + t->name + "'");
      return ty;
    }
    case TermKind::Lam: {
      scope.push(t->name, t->type);
      Type body = infer(t->a, scope);
      scope.pop();
      return arrow(t->type, body);
    }
    case TermKind::App: {
      if (t->a->kind == TermKind::Fst || t->a->kind == TermKind::Snd) {
        Type arg = infer(t->b, scope);
        if (arg->kind != TypeKind::Product)
          type_fail("projection expects a product, found " + print(arg), t);
        return t->a->kind == TermKind::Fst ? arg->left : arg->right;
      }
      Type fn = infer(t->a, scope);
      if (fn->kind != TypeKind::Arrow) type_fail("applying a non-function of type " + print(fn), t);
      Type arg = infer(t->b, scope);
      if (!type_equal(fn->left, arg))
        type_fail("type mismatch: expected " + print(fn->left) + ", found " + print(arg), t);
      return fn->right;
    }
    case TermKind::Zero:
    case TermKind::Num:
      return base_type();
    case TermKind::Succ:
      return type1();
    case TermKind::Rec: {
      const Type& r = t->type;
      return arrow(base_type(), arrow(r, arrow(arrow(base_type(), arrow(r, r)), r)));
    }
    case TermKind::Pair:
      return product(infer(t->a, scope), infer(t->b, scope));
    case TermKind::Fst:
    case TermKind::Snd:
      type_fail("projection must be applied to a pair", t);
  }
  type_fail("unknown term", t);
}

void check(const Formula& f, Scope& scope) {
  auto expect = [&](const Term& t, const Type& ty) {
    Type found = infer(t, scope);
    if (!type_equal(found, ty))
      throw TypeError("type mismatch: expected " + print(ty) + ", found " + print(found) + " for '" +
                      print(t) + "'");
  };
  switch (f->kind) {
    case FormKind::Falsum:
      return;
    case FormKind::Eq:
    case FormKind::Le:
      expect(f->lhs, base_type());
      expect(f->rhs, base_type());
      return;
    case FormKind::EqT:
    case FormKind::LeT:
    case FormKind::Approx:
    case FormKind::LeqStar:
      expect(f->lhs, f->type);
      expect(f->rhs, f->type);
      return;
    case FormKind::St:
      expect(f->lhs, f->type);
      return;
    case FormKind::And:
    case FormKind::Or:
    case FormKind::Implies:
      check(f->a, scope);
      check(f->b, scope);
      return;
    case FormKind::BForall:
    case FormKind::BExists:
      expect(f->lhs, base_type());
      scope.push(f->var, base_type());
      check(f->a, scope);
      scope.pop();
      return;
    default:
      scope.push(f->var, f->type);
      check(f->a, scope);
      scope.pop();
      return;
  }
}

//------------------------------------------------------------------------------
// Free variables

void collect(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      return;
    case TermKind::Lam:
      bound.push_back(t->name);
      collect(t->a, bound, out);
      bound.pop_back();
      return;
    case TermKind::App:
    case TermKind::Pair:
      collect(t->a, bound, out);
      collect(t->b, bound, out);
      return;
    default:
      return;
  }
}

void collect(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (f->lhs) collect(f->lhs, bound, out);
  if (f->rhs) collect(f->rhs, bound, out);
  if (is_quantifier(f->kind)) {
    bound.push_back(f->var);
    collect(f->a, bound, out);
    bound.pop_back();
    return;
  }
  if (f->a) collect(f->a, bound, out);
  if (f->b) collect(f->b, bound, out);
}

//------------------------------------------------------------------------------
// Unfoldings

enum class Rel { Eq, Le, Approx };

Formula unfold_rel(Rel rel, const Type& type, const Term& x, const Term& y) {
  switch (type->kind) {
    case TypeKind::Base:
      return rel == Rel::Le ? le(x, y) : eq(x, y);
    case TypeKind::Product:
      return conj(unfold_rel(rel, type->left, app(fst_const(), x), app(fst_const(), y)),
                  unfold_rel(rel, type->right, app(snd_const(), x), app(snd_const(), y)));
    case TypeKind::Arrow: {
      std::set<std::string> avoid = free_vars(x);
      for (const auto& v : free_vars(y)) avoid.insert(v);
      std::string z = fresh_name("z", avoid);
      Formula body = unfold_rel(rel, type->right, app(x, var(z)), app(y, var(z)));
      return rel == Rel::Approx ? forall_st(z, type->left, body) : forall(z, type->left, body);
    }
  }
  return falsum();
}

Formula relativize_impl(const Formula& f) {
  switch (f->kind) {
    case FormKind::Forall:
      return forall_st(f->var, f->type, relativize_impl(f->a));
    case FormKind::Exists:
      return exists_st(f->var, f->type, relativize_impl(f->a));
    case FormKind::ForallSt:
    case FormKind::ExistsSt:
    case FormKind::ForallMonSt:
    case FormKind::ExistsMonSt:
      return quant(f->kind, f->var, f->type, relativize_impl(f->a));
    case FormKind::BForall:
      return bounded_forall(f->var, f->lhs, relativize_impl(f->a));
    case FormKind::BExists:
      return bounded_exists(f->var, f->lhs, relativize_impl(f->a));
    case FormKind::And:
      return conj(relativize_impl(f->a), relativize_impl(f->b));
    case FormKind::Or:
      return disj(relativize_impl(f->a), relativize_impl(f->b));
    case FormKind::Implies:
      return implies(relativize_impl(f->a), relativize_impl(f->b));
    case FormKind::EqT:
      return f->type->kind == TypeKind::Base ? eq(f->lhs, f->rhs) : approx(f->type, f->lhs, f->rhs);
    case FormKind::LeT:
      return relativize_impl(unfold_equality(f));
    case FormKind::LeqStar:
      return relativize_impl(leq_star_formula(f->type, f->lhs, f->rhs));
    default:
      return f;
  }
}

// Renames the bound variable of a quantifier node so that it avoids `avoid`.
Formula rename_binder(const Formula& f, const std::set<std::string>& avoid) {
  std::set<std::string> all = avoid;
  for (const auto& v : free_vars(f->a)) all.insert(v);
  std::string fresh = fresh_name(f->var, all);
  Formula body = substitute(f->a, f->var, var(fresh));
  FormulaNode node = *f;
  node.var = fresh;
  node.a = body;
  return std::make_shared<const FormulaNode>(std::move(node));
}

Formula desugar_impl(const Formula& f) {
  switch (f->kind) {
    case FormKind::Falsum:
      return eq(zero(), numeral(1));
    case FormKind::Eq:
    case FormKind::St:
      return f;
    case FormKind::Le:
      return eq(app(prelude_term("lt"), {f->lhs, succ(f->rhs)}), numeral(1));
    case FormKind::And:
      return conj(desugar_impl(f->a), desugar_impl(f->b));
    case FormKind::Or:
      return disj(desugar_impl(f->a), desugar_impl(f->b));
    case FormKind::Implies:
      return implies(desugar_impl(f->a), desugar_impl(f->b));
    case FormKind::Forall:
    case FormKind::Exists:
    case FormKind::ForallSt:
    case FormKind::ExistsSt:
      return quant(f->kind, f->var, f->type, desugar_impl(f->a));
    case FormKind::ForallMonSt: {
      Formula mono = desugar_impl(leq_star_formula(f->type, var(f->var), var(f->var)));
      return forall_st(f->var, f->type, implies(mono, desugar_impl(f->a)));
    }
    case FormKind::ExistsMonSt: {
      Formula mono = desugar_impl(leq_star_formula(f->type, var(f->var), var(f->var)));
      return exists_st(f->var, f->type, conj(mono, desugar_impl(f->a)));
    }
    case FormKind::BForall:
    case FormKind::BExists: {
      Formula g = f;
      std::set<std::string> fv = free_vars(f->lhs);
      if (fv.count(f->var)) g = rename_binder(f, fv);
      Formula guard = desugar_impl(le(var(g->var), g->lhs));
      Formula body = desugar_impl(g->a);
      return g->kind == FormKind::BForall ? forall(g->var, base_type(), implies(guard, body))
                                          : exists(g->var, base_type(), conj(guard, body));
    }
    case FormKind::EqT:
    case FormKind::LeT:
    case FormKind::Approx:
      return desugar_impl(unfold_equality(f));
    case FormKind::LeqStar:
      return desugar_impl(leq_star_formula(f->type, f->lhs, f->rhs));
  }
  return f;
}

//------------------------------------------------------------------------------
// Alpha-equivalence

using Binders = std::vector<std::pair<std::string, std::string>>;

// Position of the innermost binder for `name` on side `left`, or -1.
int binder_index(const Binders& env, const std::string& name, bool left) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
    if ((left ? env[i].first : env[i].second) == name) return i;
  return -1;
}

Term predecessor_numeral(const Term& t) { return numeral(t->num - 1); }

bool alpha_term(const Term& a, const Term& b, Binders& env) {
  if (a->kind == TermKind::Num && b->kind == TermKind::App && b->a->kind == TermKind::Succ)
    return alpha_term(predecessor_numeral(a), b->b, env);
  if (b->kind == TermKind::Num && a->kind == TermKind::App && a->a->kind == TermKind::Succ)
    return alpha_term(a->b, predecessor_numeral(b), env);
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      int i = binder_index(env, a->name, true);
      int j = binder_index(env, b->name, false);
      if (i != j) return false;
      return i >= 0 || a->name == b->name;
    }
    case TermKind::Lam: {
      if (!type_equal(a->type, b->type)) return false;
      env.emplace_back(a->name, b->name);
      bool ok = alpha_term(a->a, b->a, env);
      env.pop_back();
      return ok;
    }
    case TermKind::App:
    case TermKind::Pair:
      return alpha_term(a->a, b->a, env) && alpha_term(a->b, b->b, env);
    case TermKind::Rec:
      return type_equal(a->type, b->type);
    case TermKind::Num:
      return a->num == b->num;
    default:
      return true;
  }
}

bool alpha_formula(const Formula& a, const Formula& b, Binders& env) {
  if (a->kind != b->kind) return false;
  if (a->type && b->type && !type_equal(a->type, b->type)) return false;
  if (static_cast<bool>(a->lhs) != static_cast<bool>(b->lhs)) return false;
  if (a->lhs && !alpha_term(a->lhs, b->lhs, env)) return false;
  if (static_cast<bool>(a->rhs) != static_cast<bool>(b->rhs)) return false;
  if (a->rhs && !alpha_term(a->rhs, b->rhs, env)) return false;
  if (is_quantifier(a->kind)) {
    env.emplace_back(a->var, b->var);
    bool ok = alpha_formula(a->a, b->a, env);
    env.pop_back();
    return ok;
  }
  if (a->a && !alpha_formula(a->a, b->a, env)) return false;
  if (a->b && !alpha_formula(a->b, b->b, env)) return false;
  return true;
}

}  // namespace

//------------------------------------------------------------------------------
// Public entry points

Type infer_type(const Term& t, const Context& ctx) {
  Scope scope(ctx);
  return infer(t, scope);
}

void check_formula(const Formula& f, const Context& ctx) {
  Scope scope(ctx);
  check(f, scope);
}

bool is_internal(const Formula& f) {
  switch (f->kind) {
    case FormKind::St:
    case FormKind::ForallSt:
    case FormKind::ExistsSt:
    case FormKind::ForallMonSt:
    case FormKind::ExistsMonSt:
    case FormKind::Approx:
      return false;
    default:
      break;
  }
  if (f->a && !is_internal(f->a)) return false;
  if (f->b && !is_internal(f->b)) return false;
  return true;
}

Formula relativize(const Formula& f) { return relativize_impl(f); }

Formula unfold_equality(const Formula& f) {
  switch (f->kind) {
    case FormKind::EqT: return unfold_rel(Rel::Eq, f->type, f->lhs, f->rhs);
    case FormKind::LeT: return unfold_rel(Rel::Le, f->type, f->lhs, f->rhs);
    case FormKind::Approx: return unfold_rel(Rel::Approx, f->type, f->lhs, f->rhs);
    default: return f;
  }
}

Formula leq_star_formula(const Type& type, const Term& x, const Term& y, bool printed_clause) {
  switch (type->kind) {
    case TypeKind::Base:
      return le(x, y);
    case TypeKind::Product:
      return conj(leq_star_formula(type->left, app(fst_const(), x), app(fst_const(), y), printed_clause),
                  leq_star_formula(type->right, app(snd_const(), x), app(snd_const(), y), printed_clause));
    case TypeKind::Arrow: {
      std::set<std::string> avoid = free_vars(x);
      for (const auto& v : free_vars(y)) avoid.insert(v);
      std::string u = fresh_name("u", avoid);
      avoid.insert(u);
      std::string v = fresh_name("v", avoid);
      Term tu = var(u), tv = var(v);
      Formula guard = leq_star_formula(type->left, tv, tu, printed_clause);
      Formula first = printed_clause ? leq_star_formula(type->right, app(x, tu), app(y, tv), true)
                                     : leq_star_formula(type->right, app(x, tv), app(y, tu), false);
      Formula second = printed_clause ? leq_star_formula(type->right, app(y, tu), app(y, tv), true)
                                      : leq_star_formula(type->right, app(y, tv), app(y, tu), false);
      return forall(u, type->left, forall(v, type->left, implies(guard, conj(first, second))));
    }
  }
  return falsum();
}

Formula desugar(const Formula& f) { return desugar_impl(f); }

std::set<std::string> free_vars(const Term& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect(t, bound, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect(f, bound, out);
  return out;
}

std::map<std::string, Type> free_vars_typed(const Formula& f, const Context& ctx) {
  std::map<std::string, Type> out;
  for (const auto& name : free_vars(f)) {
    auto it = ctx.find(name);
    if (it == ctx.end()) throw TypeError("undeclared free variable '" + name + "'");
    out.emplace(name, it->second);
  }
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Term substitute(const Term& t, const std::string& name, const Term& value) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == name ? value : t;
    case TermKind::Lam: {
      if (t->name == name) return t;
      std::set<std::string> body_fv = free_vars(t->a);
      if (!body_fv.count(name)) return t;
      std::set<std::string> value_fv = free_vars(value);
      if (!value_fv.count(t->name)) return lam(t->name, t->type, substitute(t->a, name, value));
      std::set<std::string> avoid = value_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      std::string fresh = fresh_name(t->name, avoid);
      Term body = substitute(t->a, t->name, var(fresh));
      return lam(fresh, t->type, substitute(body, name, value));
    }
    case TermKind::App: {
      Term a = substitute(t->a, name, value);
      Term b = substitute(t->b, name, value);
      if (a == t->a && b == t->b) return t;
      return app(a, b);
    }
    case TermKind::Pair: {
      Term a = substitute(t->a, name, value);
      Term b = substitute(t->b, name, value);
      if (a == t->a && b == t->b) return t;
      return pair(a, b);
    }
    default:
      return t;
  }
}

Formula substitute(const Formula& f, const std::string& name, const Term& value) {
  if (!free_vars(f).count(name)) return f;
  FormulaNode node = *f;
  if (node.lhs) node.lhs = substitute(node.lhs, name, value);
  if (node.rhs) node.rhs = substitute(node.rhs, name, value);
  if (is_quantifier(f->kind)) {
    if (f->var != name) {
      if (free_vars(value).count(f->var)) {
        std::set<std::string> avoid = free_vars(value);
        avoid.insert(name);
        Formula renamed = rename_binder(f, avoid);
        node.var = renamed->var;
        node.a = renamed->a;
      }
      node.a = substitute(node.a, name, value);
    }
    return std::make_shared<const FormulaNode>(std::move(node));
  }
  if (node.a) node.a = substitute(node.a, name, value);
  if (node.b) node.b = substitute(node.b, name, value);
  return std::make_shared<const FormulaNode>(std::move(node));
}

bool alpha_equal(const Term& a, const Term& b) {
  Binders env;
  return alpha_term(a, b, env);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  Binders env;
  return alpha_formula(a, b, env);
}

}  // namespace nsak
