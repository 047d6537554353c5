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

#include "nsak/schemas.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "nsak/majorizability.hpp"
#include "nsak/prelude.hpp"

namespace nsak {

SchemaError::SchemaError(std::string cond, std::string off)
    : std::invalid_argument(cond + " violated" + (off.empty() ? "" : ": " + off)),
      condition(std::move(cond)),
      offending(std::move(off)) {}

//------------------------------------------------------------------------------
// Catalog

namespace {

using S = SchemaId;

std::vector<SchemaInfo> build_catalog() {
  auto entry = [](S id, std::string name, std::string desc, std::vector<std::string> side,
                  std::vector<std::string> formulas, std::vector<std::string> types,
                  std::vector<std::string> terms, std::vector<std::string> binders, bool dg = false,
                  bool transfer = false) {
    return SchemaInfo{id,    std::move(name),  std::move(desc),    std::move(side), std::move(formulas),
                      std::move(types), std::move(terms), std::move(binders), dg,  transfer};
  };
  const std::string internal = "internal phi";
  const std::string decidable = "phi internal with bounded quantifiers only";
  return {
      entry(S::ST_A, "ST_A", "x =[s] y -> (st(x) -> st(y))", {}, {}, {"sigma"}, {}, {"x", "y"}, true),
      entry(S::ST_B, "ST_B", "st(y) -> (x <=*[s] y -> st(x))", {}, {}, {"sigma"}, {}, {"x", "y"}, true),
      entry(S::ST_C, "ST_C", "st(t) for a closed term t", {"closed term t"}, {}, {}, {"t"}, {}, true),
      entry(S::ST_D, "ST_D", "st(z) -> (st(x) -> st(z x))", {}, {}, {"sigma", "tau"}, {}, {"z", "x"}, true),
      entry(S::IA_ST, "IA_ST", "Phi(0) & (forall-st n)(Phi(n) -> Phi(n+1)) -> (forall-st n)Phi(n)",
            {"any Phi", "closed instance"}, {"Phi"}, {}, {}, {"n"}, true),
      entry(S::mAC, "mAC",
            "(~forall-st x)(~exists-st y)Phi(x,y) -> (~exists-st f)(~forall-st x)(exists y <=* f x)Phi(x,y)",
            {"any Phi"}, {"Phi"}, {"rho", "sigma"}, {}, {"x", "y", "f"}, true),
      entry(S::R, "R", "(forall x)(exists-st y)Phi(x,y) -> (~exists-st z)(forall x)(exists y <=* z)Phi(x,y)",
            {"any Phi"}, {"Phi"}, {"rho", "sigma"}, {}, {"x", "y", "z"}, true),
      entry(S::I, "I", "(~forall-st z)(exists x)(forall y <=* z)phi(x,y) -> (exists x)(forall-st y)phi(x,y)",
            {internal}, {"phi"}, {"rho", "sigma"}, {}, {"x", "y", "z"}, true),
      entry(S::IP, "IP",
            "[(~forall-st x)phi(x) -> (~exists-st y)Psi(y)] -> "
            "(~exists-st z)[(~forall-st x)phi(x) -> (~exists y <=* z)Psi(y)]",
            {internal, "any Psi"}, {"phi", "Psi"}, {"rho", "sigma"}, {}, {"x", "y", "z"}, true),
      entry(S::M, "M", "[(~forall-st x)phi(x) -> psi] -> (~exists-st y)[(forall x <=* y)phi(x) -> psi]",
            {"internal phi and psi", "x not free in psi"}, {"phi", "psi"}, {"rho"}, {}, {"x", "y"}, true),
      entry(S::MAJ, "MAJ", "(forall-st x)(exists-st y)(x <=* y)", {}, {}, {"sigma"}, {}, {"x", "y"}, true),
      entry(S::E, "E", "(forall phi)(forall x, y)(x =[rho] y -> phi x =[tau] phi y) at T = rho->tau",
            {"T an arrow type"}, {}, {"T"}, {}, {"phi", "x", "y"}, true),
      entry(S::MP, "MP", "(not not (exists n)phi(n)) -> (exists n)phi(n); phi defaults to f n = 0", {decidable},
            {"phi"}, {}, {}, {"n"}),
      entry(S::PF_TP_E, "PF_TP_E", "(exists xs)phi(xs) -> (exists-st xs)phi(xs)",
            {internal, "parameter-free: all free variables shown"}, {"phi"}, {}, {}, {}, false, true),
      entry(S::PF_TP_A, "PF_TP_A", "(forall-st xs)phi(xs) -> (forall xs)phi(xs)",
            {internal, "parameter-free: all free variables shown"}, {"phi"}, {}, {}, {}, false, true),
      entry(S::PI01_TRANS, "PI01_TRANS", "(forall-st f)[(forall-st n)(f n = 0) -> (forall n)(f n = 0)]", {}, {},
            {}, {}, {"f", "n"}, false, true),
      entry(S::E2_EXISTS, "E2_EXISTS", "(exists phi)(forall f)[(exists n)(f n = 0) <-> phi f = 0]", {}, {}, {}, {},
            {"phi", "f", "n"}),
      entry(S::TJ_ST, "TJ_ST", "(exists-st phi)(forall-st f)[(exists n)(f n = 0) <-> phi f = 0]", {}, {}, {}, {},
            {"phi", "f", "n"}, false, true),
      entry(S::ACA0, "ACA0", "(forall f <= 1)(exists g <= 1)(forall n)[(exists m)(f n m = 0) <-> g n = 0]", {}, {},
            {}, {}, {"f", "g", "n", "m"}),
      entry(S::WT, "WT", "(forall-st Y)[(exists f <= 1)(Y f = 0) -> (exists-st f <= 1)(Y f = 0)]", {}, {}, {}, {},
            {"Y", "f"}, false, true),
      entry(S::FAN, "FAN",
            "(forall T <= 1)[(forall a <= 1)(exists m)(T(bar a m) = 0) -> (exists n)(forall b <= 1)(T(bar b n) = 0)]",
            {}, {}, {}, {}, {"T", "alpha", "m", "n", "beta"}),
      entry(S::WKL, "WKL",
            "(forall T)[(forall n)(exists b)(forall m <= n)(T(bar (bin b) m) = 1) -> "
            "(exists a)(forall m)(T(bar (bin a) m) = 1)]",
            {}, {}, {}, {}, {"T", "n", "beta", "m", "alpha"}),
      entry(S::UWKL, "UWKL",
            "(exists Psi)(forall T)[(forall n)(exists b)(forall m <= n)(T(bar (bin b) m) = 1) -> "
            "(forall m)(T(bar (bin (Psi T)) m) = 1)]",
            {}, {}, {}, {}, {"Psi", "T", "n", "beta", "m"}),
      entry(S::HBU_C, "HBU_C",
            "(forall G)(exists k, B)(forall a <= 1)(exists i <= k)(bar a (G (B i)) = bar (B i) (G (B i)))", {}, {},
            {}, {}, {"G", "k", "B", "alpha", "i"}),
      entry(S::MUC, "MUC",
            "(exists Omega)(forall Y)(forall f, g <= 1)(bar f (Omega Y) = bar g (Omega Y) -> Y f = Y g)", {}, {},
            {}, {}, {"Omega", "Y", "f", "g"}),
      entry(S::SE, "SE", "(forall Y, f, g)(not Y f = Y g -> (exists n)(not f n = g n))", {}, {}, {}, {},
            {"Y", "f", "g", "n"}),
      entry(S::CONT_C, "CONT_C", "(forall f <= 1)(exists N)(forall g <= 1)(bar f N = bar g N -> Y f = Y g)",
            {"term Y of type (0->0)->0"}, {}, {}, {"Y"}, {"f", "N", "g"}),
      entry(S::BCT_C, "BCT_C", "(forall Y) CONT_C(Y)", {}, {}, {}, {}, {"Y", "f", "N", "g"}),
      entry(S::WC_N, "WC_N",
            "(forall a)(exists n)A(a,n) -> (forall a)(exists n, m)(forall b)(bar a m = bar b m -> A(b,n))",
            {"any A"}, {"A"}, {}, {}, {"alpha", "n", "m", "beta"}),
      entry(S::WC_N0, "WC_N0", "WC_N for quantifier-free A",
            {"A internal with bounded quantifiers only"}, {"A"}, {}, {}, {"alpha", "n", "m", "beta"}),
      entry(S::CCT_C, "CCT_C", "(forall-st Y)(CONT_C(Y) -> CONT_C(Y)^st)", {}, {}, {}, {}, {"Y", "f", "N", "g"},
            false, true),
      entry(S::KS0, "KS0",
            "(forall a <= 1)(exists b <= 1)(forall m)[(forall k)(a k m = 0) <-> (exists n)(b n m = 0)]", {}, {},
            {}, {}, {"alpha", "beta", "m", "k", "n"}),
      entry(S::CT, "CT", "(forall f)(exists e)(forall n, m)[(exists s)(step e s n = S m) <-> f n = m]",
            {"term step of type 0->0->0->0"}, {}, {}, {"step"}, {"f", "e", "n", "m", "s"}),
      entry(S::QF_AC, "QF_AC", "(forall x)(exists y)phi(x,y) -> (exists Y)(forall x)phi(x, Y x)", {decidable},
            {"phi"}, {"sigma", "tau"}, {}, {"x", "y", "Y"}),
      entry(S::SIMPLER, "SIMPLER",
            "(exists-st Phi)(forall x)[(Phi x = 0 -> x <~ 0) & (Phi x = 1 -> x >~ 0)], with "
            "x <~ 0 read as (forall-st k)(qle (x k) (qcode 0 2 k) = 1)",
            {}, {}, {}, {}, {"Phi", "x", "k"}),
      entry(S::GAFOT, "GAFOT", "(forall-st f <= 1)(forall g <= 1)(f ~[0->0] g -> Y f = Y g)",
            {"term Y of type (0->0)->0"}, {}, {}, {"Y"}, {"f", "g"}),
      entry(S::NEAR_STD, "NEAR_STD", "(forall-st f)(exists-st n)(Y f = n)", {"term Y of type (0->0)->0"}, {}, {},
            {"Y"}, {"f", "n"}),
  };
}

}  // namespace

const std::vector<SchemaInfo>& catalog() {
  static const std::vector<SchemaInfo> c = build_catalog();
  return c;
}

const SchemaInfo& schema_info(SchemaId id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw std::logic_error("schema missing from catalog");
}

std::string to_string(SchemaId id) { return schema_info(id).name; }

std::optional<SchemaId> parse_schema_id(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e.id;
  return std::nullopt;
}

//------------------------------------------------------------------------------
// Instantiation

namespace {

Term P(std::string_view n) { return prelude_term(n); }

Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

// Constant-k element of any type.
Term const_term(const Type& t, std::uint64_t k) {
  switch (t->kind) {
    case TypeKind::Base:
      return numeral(k);
    case TypeKind::Arrow:
      return lam("z", t->left, const_term(t->right, k));
    case TypeKind::Product:
      return pair(const_term(t->left, k), const_term(t->right, k));
  }
  return numeral(k);
}

Formula eq_typed(const Type& t, Term a, Term b) {
  return t->kind == TypeKind::Base ? eq(std::move(a), std::move(b)) : eq_at(t, std::move(a), std::move(b));
}

// f <= 1 at type t.
Formula le_one(const Type& t, Term f) { return le_at(t, std::move(f), const_term(t, 1)); }

Term bar(Term f, Term n) { return app(P("bar"), {std::move(f), std::move(n)}); }

// The binary sequence k |-> sg(f k).
Term binary(Term f) { return app(P("bin"), std::move(f)); }

Formula expand_monotone(const Formula& f) {
  switch (f->kind) {
    case FormKind::ForallMonSt:
      return forall_st(f->var, f->type,
                       implies(leq_star(f->type, var(f->var), var(f->var)), expand_monotone(f->a)));
    case FormKind::ExistsMonSt:
      return exists_st(f->var, f->type, conj(leq_star(f->type, var(f->var), var(f->var)), expand_monotone(f->a)));
    case FormKind::Forall:
    case FormKind::Exists:
    case FormKind::ForallSt:
    case FormKind::ExistsSt:
      return quant(f->kind, f->var, f->type, expand_monotone(f->a));
    case FormKind::BForall:
      return bounded_forall(f->var, f->lhs, expand_monotone(f->a));
    case FormKind::BExists:
      return bounded_exists(f->var, f->lhs, expand_monotone(f->a));
    case FormKind::And:
      return conj(expand_monotone(f->a), expand_monotone(f->b));
    case FormKind::Or:
      return disj(expand_monotone(f->a), expand_monotone(f->b));
    case FormKind::Implies:
      return implies(expand_monotone(f->a), expand_monotone(f->b));
    default:
      return f;
  }
}

// Free variables in order of first occurrence.
void ordered_free(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end() &&
          std::find(out.begin(), out.end(), t->name) == out.end())
        out.push_back(t->name);
      return;
    case TermKind::Lam:
      bound.push_back(t->name);
      ordered_free(t->a, bound, out);
      bound.pop_back();
      return;
    case TermKind::App:
    case TermKind::Pair:
      ordered_free(t->a, bound, out);
      ordered_free(t->b, bound, out);
      return;
    default:
      return;
  }
}

void ordered_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (f->lhs) ordered_free(f->lhs, bound, out);
  if (f->rhs) ordered_free(f->rhs, bound, out);
  if (is_quantifier(f->kind)) {
    bound.push_back(f->var);
    ordered_free(f->a, bound, out);
    bound.pop_back();
    return;
  }
  if (f->a) ordered_free(f->a, bound, out);
  if (f->b) ordered_free(f->b, bound, out);
}

std::vector<std::string> ordered_free(const Formula& f) {
  std::vector<std::string> bound, out;
  ordered_free(f, bound, out);
  return out;
}

bool only_bounded_quantifiers(const Formula& f) {
  if (is_typed_quantifier(f->kind)) return false;
  if (f->a && !only_bounded_quantifiers(f->a)) return false;
  if (f->b && !only_bounded_quantifiers(f->b)) return false;
  return true;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return out;
}

class Builder {
 public:
  explicit Builder(const Instantiation& inst) : inst_(inst), info_(schema_info(inst.schema)), ctx_(inst.context) {
    binders_ = inst.binders.empty() ? info_.binders : inst.binders;
    if (inst.schema != S::PF_TP_E && inst.schema != S::PF_TP_A && binders_.size() != info_.binders.size())
      throw SchemaError("binder arity " + std::to_string(info_.binders.size()),
                        std::to_string(binders_.size()) + " binder names given");
    std::set<std::string> distinct(binders_.begin(), binders_.end());
    if (distinct.size() != binders_.size()) throw SchemaError("distinct binder names", "");
  }

  const std::string& b(std::size_t i) const { return binders_.at(i); }
  Term bv(std::size_t i) const { return var(b(i)); }

  // Formula argument i; `designated` lists the binder indices it may mention.
  Formula phi(std::size_t i, std::vector<std::size_t> designated) {
    if (i >= inst_.formula_args.size() || !inst_.formula_args[i])
      throw SchemaError("formula argument " + info_.formula_params.at(i) + " supplied", "");
    Formula f = inst_.formula_args[i];
    std::set<std::string> allowed;
    for (auto d : designated) allowed.insert(b(d));
    guard_capture(free_vars(f), allowed, print(f));
    return f;
  }

  Type type(std::size_t i) const {
    if (i >= inst_.type_args.size() || !inst_.type_args[i])
      throw SchemaError("type argument " + info_.type_params.at(i) + " supplied", "");
    return inst_.type_args[i];
  }

  Term term(std::size_t i) {
    if (i >= inst_.term_args.size() || !inst_.term_args[i])
      throw SchemaError("term argument " + info_.term_params.at(i) + " supplied", "");
    guard_capture(free_vars(inst_.term_args[i]), {}, print(inst_.term_args[i]));
    return inst_.term_args[i];
  }

  const std::vector<std::string>& binders() const { return binders_; }
  Context& context() { return ctx_; }

 private:
  // Parameters of an argument must not be captured by the template binders.
  void guard_capture(const std::set<std::string>& fv, const std::set<std::string>& allowed,
                     const std::string& where) const {
    for (const auto& v : fv)
      if (!allowed.count(v) && std::find(binders_.begin(), binders_.end(), v) != binders_.end())
        throw SchemaError("no capture of parameter " + v + " by a template binder", where);
  }

  const Instantiation& inst_;
  const SchemaInfo& info_;
  std::vector<std::string> binders_;
  Context ctx_;
};

void require_internal(const Formula& f, const std::string& name) {
  if (!is_internal(f)) throw SchemaError("internal " + name + " required", print(f));
}

void require_decidable(const Formula& f, const std::string& name) {
  require_internal(f, name);
  if (!only_bounded_quantifiers(f))
    throw SchemaError(name + " with bounded quantifiers only", print(f));
}

Formula cont_c(const Builder& k, Term Y, std::size_t f, std::size_t N, std::size_t g) {
  Type t1 = type1();
  Formula agree = eq(bar(k.bv(f), k.bv(N)), bar(k.bv(g), k.bv(N)));
  Formula same = eq(app(Y, k.bv(f)), app(Y, k.bv(g)));
  return forall(k.b(f), t1,
                implies(le_one(t1, k.bv(f)),
                        exists(k.b(N), base_type(),
                               forall(k.b(g), t1, implies(le_one(t1, k.bv(g)), implies(agree, same))))));
}

Formula turing_jump(const Builder& k, std::size_t phi, std::size_t f, std::size_t n) {
  return iff(exists(k.b(n), base_type(), eq(app(k.bv(f), k.bv(n)), zero())),
             eq(app(k.bv(phi), k.bv(f)), zero()));
}

Formula wc_n(Builder& k, const Formula& A) {
  Type t1 = type1(), t0 = base_type();
  Formula shifted = substitute(A, k.b(0), k.bv(3));
  return implies(forall(k.b(0), t1, exists(k.b(1), t0, A)),
                 forall(k.b(0), t1,
                        exists(k.b(1), t0,
                               exists(k.b(2), t0,
                                      forall(k.b(3), t1,
                                             implies(eq(bar(k.bv(0), k.bv(2)), bar(k.bv(3), k.bv(2))),
                                                     shifted))))));
}

// Infinite-tree hypothesis: every level n has a sequence whose binary
// prefixes up to n all lie in T (prefix closure folded in). Binary sequences
// are written `bin b`, so no `b <= 1` guard appears and relativizing the
// schema leaves binarity internal.
Formula infinite_tree(const Builder& k, std::size_t T, std::size_t n, std::size_t beta, std::size_t m) {
  return forall(k.b(n), base_type(),
                exists(k.b(beta), type1(),
                       bounded_forall(k.b(m), k.bv(n),
                                      eq(app(k.bv(T), bar(binary(k.bv(beta)), k.bv(m))), numeral(1)))));
}

Formula build(Builder& k, const Instantiation& inst) {
  const Type t0 = base_type(), t1 = type1(), t2 = type2();
  switch (inst.schema) {
    case S::ST_A: {
      Type s = k.type(0);
      return forall(k.b(0), s,
                    forall(k.b(1), s,
                           implies(eq_typed(s, k.bv(0), k.bv(1)), implies(st(s, k.bv(0)), st(s, k.bv(1))))));
    }
    case S::ST_B: {
      Type s = k.type(0);
      return forall(k.b(0), s,
                    forall(k.b(1), s,
                           implies(st(s, k.bv(1)), implies(leq_star(s, k.bv(0), k.bv(1)), st(s, k.bv(0))))));
    }
    case S::ST_C: {
      Term t = k.term(0);
      if (!free_vars(t).empty()) throw SchemaError("closed term t", print(t));
      Type ty;
      try {
        ty = infer_type(t);
      } catch (const TypeError& e) {
        throw SchemaError("well-typed term t", e.what());
      }
      return st(ty, t);
    }
    case S::ST_D: {
      Type s = k.type(0), t = k.type(1), fn = arrow(s, t);
      return forall(k.b(0), fn,
                    forall(k.b(1), s,
                           implies(st(fn, k.bv(0)), implies(st(s, k.bv(1)), st(t, app(k.bv(0), k.bv(1)))))));
    }
    case S::IA_ST: {
      Formula Phi = k.phi(0, {0});
      const std::string& n = k.b(0);
      std::set<std::string> params = free_vars(Phi);
      params.erase(n);
      if (!params.empty()) throw SchemaError("closed instance (open IA_ST instances are rejected)", join(params));
      return implies(conj(substitute(Phi, n, zero()),
                          forall_st(n, t0, implies(Phi, substitute(Phi, n, succ(var(n)))))),
                     forall_st(n, t0, Phi));
    }
    case S::mAC: {
      Formula Phi = k.phi(0, {0, 1});
      Type rho = k.type(0), sigma = k.type(1);
      return implies(
          forall_mon_st(k.b(0), rho, exists_mon_st(k.b(1), sigma, Phi)),
          exists_mon_st(k.b(2), arrow(rho, sigma),
                        forall_mon_st(k.b(0), rho,
                                      exists(k.b(1), sigma,
                                             conj(leq_star(sigma, k.bv(1), app(k.bv(2), k.bv(0))), Phi)))));
    }
    case S::R: {
      Formula Phi = k.phi(0, {0, 1});
      Type rho = k.type(0), sigma = k.type(1);
      return implies(forall(k.b(0), rho, exists_st(k.b(1), sigma, Phi)),
                     exists_mon_st(k.b(2), sigma,
                                   forall(k.b(0), rho,
                                          exists(k.b(1), sigma, conj(leq_star(sigma, k.bv(1), k.bv(2)), Phi)))));
    }
    case S::I: {
      Formula phi = k.phi(0, {0, 1});
      require_internal(phi, "phi");
      Type rho = k.type(0), sigma = k.type(1);
      return implies(
          forall_mon_st(k.b(2), sigma,
                        exists(k.b(0), rho, forall(k.b(1), sigma, implies(leq_star(sigma, k.bv(1), k.bv(2)), phi)))),
          exists(k.b(0), rho, forall_st(k.b(1), sigma, phi)));
    }
    case S::IP: {
      Formula phi = k.phi(0, {0}), Psi = k.phi(1, {1});
      require_internal(phi, "phi");
      Type rho = k.type(0), sigma = k.type(1);
      Formula hyp = forall_mon_st(k.b(0), rho, phi);
      Formula bounded =
          exists(k.b(1), sigma,
                 conj(leq_star(sigma, k.bv(1), k.bv(1)), conj(leq_star(sigma, k.bv(1), k.bv(2)), Psi)));
      return implies(implies(hyp, exists_mon_st(k.b(1), sigma, Psi)),
                     exists_mon_st(k.b(2), sigma, implies(hyp, bounded)));
    }
    case S::M: {
      Formula phi = k.phi(0, {0}), psi = k.phi(1, {});
      require_internal(phi, "phi");
      require_internal(psi, "psi");
      Type rho = k.type(0);
      return implies(
          implies(forall_mon_st(k.b(0), rho, phi), psi),
          exists_mon_st(k.b(1), rho,
                        implies(forall(k.b(0), rho, implies(leq_star(rho, k.bv(0), k.bv(1)), phi)), psi)));
    }
    case S::MAJ: {
      Type s = k.type(0);
      return forall_st(k.b(0), s, exists_st(k.b(1), s, leq_star(s, k.bv(0), k.bv(1))));
    }
    case S::E: {
      Type T = k.type(0);
      if (T->kind != TypeKind::Arrow) throw SchemaError("T an arrow type", print(T));
      return forall(k.b(0), T,
                    forall(k.b(1), T->left,
                           forall(k.b(2), T->left,
                                  implies(eq_typed(T->left, k.bv(1), k.bv(2)),
                                          eq_typed(T->right, app(k.bv(0), k.bv(1)), app(k.bv(0), k.bv(2)))))));
    }
    case S::MP: {
      Formula phi;
      if (inst.formula_args.empty()) {
        std::string f = fresh_name("f", {k.b(0)});
        k.context().emplace(f, t1);
        phi = eq(app(var(f), k.bv(0)), zero());
      } else {
        phi = k.phi(0, {0});
      }
      require_decidable(phi, "phi");
      Formula ex = exists(k.b(0), t0, phi);
      return implies(neg(neg(ex)), ex);
    }
    case S::PF_TP_E:
    case S::PF_TP_A: {
      const auto& xs = k.binders();
      if (xs.empty() || xs.size() != inst.type_args.size())
        throw SchemaError("one type per displayed variable", std::to_string(xs.size()) + " variables, " +
                                                                  std::to_string(inst.type_args.size()) + " types");
      std::vector<std::size_t> all(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) all[i] = i;
      Formula phi = k.phi(0, all);
      require_internal(phi, "phi");
      std::set<std::string> extra = free_vars(phi);
      for (const auto& x : xs) extra.erase(x);
      if (!extra.empty()) throw SchemaError("parameter-free: all free variables shown", join(extra));
      bool ex = inst.schema == S::PF_TP_E;
      Formula lhs = phi, rhs = phi;
      for (std::size_t i = xs.size(); i-- > 0;) {
        Type t = k.type(i);
        lhs = ex ? exists(xs[i], t, lhs) : forall_st(xs[i], t, lhs);
        rhs = ex ? exists_st(xs[i], t, rhs) : forall(xs[i], t, rhs);
      }
      return implies(lhs, rhs);
    }
    case S::PI01_TRANS: {
      Formula zero_at = eq(app(k.bv(0), k.bv(1)), zero());
      return forall_st(k.b(0), t1, implies(forall_st(k.b(1), t0, zero_at), forall(k.b(1), t0, zero_at)));
    }
    case S::E2_EXISTS:
      return exists(k.b(0), t2, forall(k.b(1), t1, turing_jump(k, 0, 1, 2)));
    case S::TJ_ST:
      return exists_st(k.b(0), t2, forall_st(k.b(1), t1, turing_jump(k, 0, 1, 2)));
    case S::ACA0: {
      Type t00 = arrow(t0, t1);
      Formula row = iff(exists(k.b(3), t0, eq(app(k.bv(0), {k.bv(2), k.bv(3)}), zero())),
                        eq(app(k.bv(1), k.bv(2)), zero()));
      return forall(k.b(0), t00,
                    implies(le_one(t00, k.bv(0)),
                            exists(k.b(1), t1, conj(le_one(t1, k.bv(1)), forall(k.b(2), t0, row)))));
    }
    case S::WT: {
      Formula body = conj(le_one(t1, k.bv(1)), eq(app(k.bv(0), k.bv(1)), zero()));
      return forall_st(k.b(0), t2, implies(exists(k.b(1), t1, body), exists_st(k.b(1), t1, body)));
    }
    case S::FAN: {
      auto out = [&](std::size_t seq, std::size_t len) {
        return eq(app(k.bv(0), bar(k.bv(seq), k.bv(len))), zero());
      };
      Formula hyp = forall(k.b(1), t1, implies(le_one(t1, k.bv(1)), exists(k.b(2), t0, out(1, 2))));
      Formula concl = exists(k.b(3), t0, forall(k.b(4), t1, implies(le_one(t1, k.bv(4)), out(4, 3))));
      return forall(k.b(0), t1, implies(le_one(t1, k.bv(0)), implies(hyp, concl)));
    }
    case S::WKL: {
      Formula path = forall(k.b(3), t0, eq(app(k.bv(0), bar(binary(k.bv(4)), k.bv(3))), numeral(1)));
      return forall(k.b(0), t1, implies(infinite_tree(k, 0, 1, 2, 3), exists(k.b(4), t1, path)));
    }
    case S::UWKL: {
      Formula path =
          forall(k.b(4), t0, eq(app(k.bv(1), bar(binary(app(k.bv(0), k.bv(1))), k.bv(4))), numeral(1)));
      return exists(k.b(0), arrow(t1, t1), forall(k.b(1), t1, implies(infinite_tree(k, 1, 2, 3, 4), path)));
    }
    case S::HBU_C: {
      Term radius = app(k.bv(0), app(k.bv(2), k.bv(4)));
      Formula in_cyl = eq(bar(k.bv(3), radius), bar(app(k.bv(2), k.bv(4)), radius));
      return forall(k.b(0), t2,
                    exists(k.b(1), t0,
                           exists(k.b(2), arrow(t0, t1),
                                  forall(k.b(3), t1,
                                         implies(le_one(t1, k.bv(3)), bounded_exists(k.b(4), k.bv(1), in_cyl))))));
    }
    case S::MUC: {
      Term m = app(k.bv(0), k.bv(1));
      Formula body = implies(le_one(t1, k.bv(2)),
                             implies(le_one(t1, k.bv(3)), implies(eq(bar(k.bv(2), m), bar(k.bv(3), m)),
                                                                  eq(app(k.bv(1), k.bv(2)), app(k.bv(1), k.bv(3))))));
      return exists(k.b(0), arrow(t2, t0),
                    forall(k.b(1), t2, forall(k.b(2), t1, forall(k.b(3), t1, body))));
    }
    case S::SE: {
      Formula body = implies(neg(eq(app(k.bv(0), k.bv(1)), app(k.bv(0), k.bv(2)))),
                             exists(k.b(3), t0, neg(eq(app(k.bv(1), k.bv(3)), app(k.bv(2), k.bv(3))))));
      return forall(k.b(0), t2, forall(k.b(1), t1, forall(k.b(2), t1, body)));
    }
    case S::CONT_C:
      return cont_c(k, k.term(0), 0, 1, 2);
    case S::BCT_C:
      return forall(k.b(0), t2, cont_c(k, k.bv(0), 1, 2, 3));
    case S::WC_N:
      return wc_n(k, k.phi(0, {0, 1}));
    case S::WC_N0: {
      Formula A = k.phi(0, {0, 1});
      require_decidable(A, "A");
      return wc_n(k, A);
    }
    case S::CCT_C: {
      Formula c = cont_c(k, k.bv(0), 1, 2, 3);
      return forall_st(k.b(0), t2, implies(c, relativize(c)));
    }
    case S::KS0: {
      Type t00 = arrow(t0, t1);
      Formula row = iff(forall(k.b(3), t0, eq(app(k.bv(0), {k.bv(3), k.bv(2)}), zero())),
                        exists(k.b(4), t0, eq(app(k.bv(1), {k.bv(4), k.bv(2)}), zero())));
      return forall(k.b(0), t00,
                    implies(le_one(t00, k.bv(0)),
                            exists(k.b(1), t00, conj(le_one(t00, k.bv(1)), forall(k.b(2), t0, row)))));
    }
    case S::CT: {
      Term step = k.term(0);
      Formula row = iff(exists(k.b(4), t0, eq(app(step, {k.bv(1), k.bv(4), k.bv(2)}), succ(k.bv(3)))),
                        eq(app(k.bv(0), k.bv(2)), k.bv(3)));
      return forall(k.b(0), t1, exists(k.b(1), t0, forall(k.b(2), t0, forall(k.b(3), t0, row))));
    }
    case S::QF_AC: {
      Formula phi = k.phi(0, {0, 1});
      require_decidable(phi, "phi");
      Type s = k.type(0), t = k.type(1);
      return implies(forall(k.b(0), s, exists(k.b(1), t, phi)),
                     exists(k.b(2), arrow(s, t), forall(k.b(0), s, substitute(phi, k.b(1), app(k.bv(2), k.bv(0))))));
    }
    case S::SIMPLER: {
      auto below = [&](Term lo, Term hi) { return eq(app(P("qle"), {lo, hi}), numeral(1)); };
      Term xk = app(k.bv(1), k.bv(2));
      Term two = app(P("qcode"), {zero(), numeral(2), k.bv(2)});
      Term minus_two = app(P("qcode"), {numeral(1), numeral(2), k.bv(2)});
      Term phix = app(k.bv(0), k.bv(1));
      Formula lo = implies(eq(phix, zero()), forall_st(k.b(2), t0, below(xk, two)));
      Formula hi = implies(eq(phix, numeral(1)), forall_st(k.b(2), t0, below(minus_two, xk)));
      return exists_st(k.b(0), t2, forall(k.b(1), t1, conj(lo, hi)));
    }
    case S::GAFOT: {
      Term Y = k.term(0);
      Formula same = eq(app(Y, k.bv(0)), app(Y, k.bv(1)));
      return forall_st(k.b(0), t1,
                       implies(le_one(t1, k.bv(0)),
                               forall(k.b(1), t1,
                                      implies(le_one(t1, k.bv(1)), implies(approx(t1, k.bv(0), k.bv(1)), same)))));
    }
    case S::NEAR_STD: {
      Term Y = k.term(0);
      return forall_st(k.b(0), t1, exists_st(k.b(1), t0, eq(app(Y, k.bv(0)), k.bv(1))));
    }
  }
  throw std::logic_error("unhandled schema");
}

}  // namespace

Formula instantiate(const Instantiation& inst) {
  Builder k(inst);
  Formula f = expand_monotone(build(k, inst));
  // Universal closure over parameters, first occurrence outermost.
  std::vector<std::string> params = ordered_free(f);
  bool closed_only = inst.schema == S::IA_ST || inst.schema == S::PF_TP_E || inst.schema == S::PF_TP_A;
  if (closed_only && !params.empty()) throw SchemaError("closed instance", params.front());
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    auto t = k.context().find(*it);
    if (t == k.context().end()) throw SchemaError("parameter typed in context", *it);
    f = forall(*it, t->second, f);
  }
  try {
    check_formula(f);
  } catch (const TypeError& e) {
    throw SchemaError("well-typed instance", e.what());
  }
  return inst.relativized ? relativize(f) : f;
}

Instantiation instantiation_from_keys(SchemaId id, const std::map<std::string, std::string>& keys,
                                      const Context& context, const Definitions* defs) {
  const SchemaInfo& info = schema_info(id);
  Instantiation inst;
  inst.schema = id;
  inst.context = context;
  inst.formula_args.resize(info.formula_params.size());
  inst.type_args.resize(info.type_params.size());
  inst.term_args.resize(info.term_params.size());
  std::vector<std::string> binders = info.binders;
  auto index_of = [](const std::vector<std::string>& v, const std::string& k) -> std::optional<std::size_t> {
    auto it = std::find(v.begin(), v.end(), k);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  };
  for (const auto& [key, value] : keys) {
    if (auto i = index_of(info.formula_params, key)) {
      inst.formula_args[*i] = parse_formula(value, defs);
    } else if (auto i = index_of(info.type_params, key)) {
      inst.type_args[*i] = parse_type(value);
    } else if (auto i = index_of(info.term_params, key)) {
      inst.term_args[*i] = parse_term(value, defs);
    } else if (auto i = index_of(info.binders, key)) {
      binders[*i] = value;
    } else if (key == "vars" && (id == S::PF_TP_E || id == S::PF_TP_A)) {
      binders.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw SchemaError("vars entries of the form name:type", item);
        std::string name = item.substr(0, colon);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        binders.push_back(name);
        inst.type_args.push_back(parse_type(item.substr(colon + 1)));
      }
    } else {
      throw SchemaError("known parameter of " + info.name, key);
    }
  }
  // MP falls back to its default matrix when phi is absent.
  if (id == S::MP && !inst.formula_args[0]) inst.formula_args.clear();
  inst.binders = binders;
  return inst;
}

//------------------------------------------------------------------------------
// Finite-model check

namespace {

struct OutOfBudget {};

class ModelChecker {
 public:
  ModelChecker(std::uint32_t B, std::uint64_t budget, StMode st) : B_(B), budget_(budget), st_(st) {}

  bool eval(const Formula& f, ModelEnv& env) {
    switch (f->kind) {
      case FormKind::Falsum:
        return false;
      case FormKind::Eq:
        return term(f->lhs, env).nat == term(f->rhs, env).nat;
      case FormKind::Le:
        return term(f->lhs, env).nat <= term(f->rhs, env).nat;
      case FormKind::St:
        return standard(term(f->lhs, env), f->type);
      case FormKind::And:
        return eval(f->a, env) && eval(f->b, env);
      case FormKind::Or:
        return eval(f->a, env) || eval(f->b, env);
      case FormKind::Implies:
        return !eval(f->a, env) || eval(f->b, env);
      case FormKind::EqT:
        return term(f->lhs, env) == term(f->rhs, env);
      case FormKind::LeT:
        return pointwise_le(term(f->lhs, env), term(f->rhs, env));
      case FormKind::LeqStar:
        return leq_star_model(term(f->lhs, env), term(f->rhs, env), f->type, B_);
      case FormKind::Approx:
        return eval(unfold_equality(f), env);
      case FormKind::BForall:
      case FormKind::BExists: {
        std::uint32_t bound = term(f->lhs, env).nat;
        bool all = f->kind == FormKind::BForall;
        for (std::uint32_t n = 0; n <= bound; ++n) {
          spend();
          if (eval_bound(f, env, TypedElement{base_type(), ModelElement::number(n)}) != all) return !all;
        }
        return all;
      }
      default:
        break;
    }
    // Typed quantifiers.
    bool all = f->kind == FormKind::Forall || f->kind == FormKind::ForallSt || f->kind == FormKind::ForallMonSt;
    bool st_only = f->kind != FormKind::Forall && f->kind != FormKind::Exists;
    bool monotone = f->kind == FormKind::ForallMonSt || f->kind == FormKind::ExistsMonSt;
    for (const ModelElement& e : enumerate_model(f->type, B_)) {
      spend();
      if (st_only && !standard(e, f->type)) continue;
      if (monotone && !leq_star_model(e, e, f->type, B_)) continue;
      if (eval_bound(f, env, TypedElement{f->type, e}) != all) return !all;
    }
    return all;
  }

  // Falsifying choices along the outer universal spine of a false formula.
  void explain(const Formula& f, ModelEnv& env) {
    switch (f->kind) {
      case FormKind::Implies:
        if (eval(f->a, env)) explain(f->b, env);
        return;
      case FormKind::And:
        explain(eval(f->a, env) ? f->b : f->a, env);
        return;
      case FormKind::Forall:
      case FormKind::ForallSt:
      case FormKind::ForallMonSt:
        for (const ModelElement& e : enumerate_model(f->type, B_)) {
          bool st_only = f->kind != FormKind::Forall;
          if (st_only && !standard(e, f->type)) continue;
          if (f->kind == FormKind::ForallMonSt && !leq_star_model(e, e, f->type, B_)) continue;
          TypedElement te{f->type, e};
          auto saved = bind(env, f->var, te);
          if (!eval(f->a, env)) {
            explain(f->a, env);
            return;
          }
          restore(env, f->var, saved);
        }
        return;
      default:
        return;
    }
  }

  std::uint64_t steps() const { return steps_; }

 private:
  void spend() {
    if (++steps_ > budget_) throw OutOfBudget{};
  }

  ModelElement term(const Term& t, const ModelEnv& env) { return eval_finite_model(t, B_, env); }

  bool standard(const ModelElement& e, const Type& type) {
    if (st_.kind == StMode::Kind::All) return true;
    return leq_star_model(e, constant_element(type, st_.k, B_), type, B_);
  }

  static bool pointwise_le(const ModelElement& a, const ModelElement& b) {
    if (a.kind == ModelElement::Kind::Nat) return a.nat <= b.nat;
    for (std::size_t i = 0; i < a.items.size(); ++i)
      if (!pointwise_le(a.items[i], b.items[i])) return false;
    return true;
  }

  static std::optional<TypedElement> bind(ModelEnv& env, const std::string& name, const TypedElement& value) {
    std::optional<TypedElement> saved;
    auto it = env.find(name);
    if (it != env.end()) saved = it->second;
    env.insert_or_assign(name, value);
    return saved;
  }

  static void restore(ModelEnv& env, const std::string& name, const std::optional<TypedElement>& saved) {
    if (saved)
      env.insert_or_assign(name, *saved);
    else
      env.erase(name);
  }

  bool eval_bound(const Formula& f, ModelEnv& env, const TypedElement& value) {
    auto saved = bind(env, f->var, value);
    bool r = eval(f->a, env);
    restore(env, f->var, saved);
    return r;
  }

  std::uint32_t B_;
  std::uint64_t budget_;
  StMode st_;
  std::uint64_t steps_ = 0;
};

}  // namespace

ModelVerdict model_check_instance(const Formula& f, std::uint32_t B, std::uint64_t budget, StMode st) {
  if (!free_vars(f).empty()) throw std::invalid_argument("model check needs a closed formula");
  ModelChecker mc(B, budget, st);
  ModelVerdict v;
  ModelEnv env;
  try {
    bool ok = mc.eval(f, env);
    v.status = ok ? ModelVerdict::Status::Valid : ModelVerdict::Status::Countermodel;
    if (!ok) {
      mc.explain(f, env);
      v.environment = env;
    }
  } catch (const OutOfBudget&) {
    v.status = ModelVerdict::Status::Inconclusive;
    v.detail = "budget of " + std::to_string(budget) + " quantifier instances exceeded";
  } catch (const ModelTooLarge& e) {
    v.status = ModelVerdict::Status::Inconclusive;
    v.detail = e.what();
  }
  v.steps = mc.steps();
  return v;
}

std::string to_string(ModelVerdict::Status s) {
  switch (s) {
    case ModelVerdict::Status::Valid:
      return "valid";
    case ModelVerdict::Status::Countermodel:
      return "countermodel";
    case ModelVerdict::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace nsak
