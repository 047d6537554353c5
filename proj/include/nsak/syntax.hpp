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

// Abstract syntax of finite types, System T terms and formulas of the
// nonstandard language, together with the ASCII parser and printer.
//
// All trees are immutable and shared; every constructor returns a fresh
// shared_ptr to a const node, so values can be passed around freely.

#ifndef NSAK_SYNTAX_HPP_
#define NSAK_SYNTAX_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsak {

//------------------------------------------------------------------------------
// Finite types

enum class TypeKind { Base, Arrow, Product };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
  TypeKind kind;
  Type left;   // domain for Arrow
  Type right;  // codomain for Arrow
};

Type base_type();
Type arrow(Type domain, Type codomain);
Type product(Type left, Type right);
// 0->0 and (0->0)->0.
Type type1();
Type type2();

bool type_equal(const Type& a, const Type& b);
// Arrow nesting level: level(0)=0, level(a->b)=max(level(a)+1, level(b)).
int type_level(const Type& t);

//------------------------------------------------------------------------------
// Terms

enum class TermKind { Var, Lam, App, Zero, Succ, Rec, Pair, Fst, Snd, Num };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  std::string name;    // Var name, Lam binder
  Type type;           // Lam binder type, Rec result type
  Term a;              // Lam body, App function, Pair left
  Term b;              // App argument, Pair right
  std::uint64_t num = 0;  // Num value (always >= 1)
};

Term var(std::string name);
Term lam(std::string binder, Type type, Term body);
Term app(Term fn, Term arg);
Term app(Term fn, std::initializer_list<Term> args);
Term zero();
Term succ_const();
Term rec(Type result);
Term pair(Term left, Term right);
Term fst_const();
Term snd_const();
// numeral(0) is Zero; numerals are never stored as Num(0).
Term numeral(std::uint64_t n);
// S applied to t.
Term succ(Term t);

//------------------------------------------------------------------------------
// Formulas

enum class FormKind {
  Falsum,
  Eq,          // t = s at type 0
  Le,          // t <= s at type 0
  St,          // st[T](t)
  And,
  Or,
  Implies,
  Forall,
  Exists,
  ForallSt,
  ExistsSt,
  ForallMonSt,
  ExistsMonSt,
  BForall,     // forall n <= t. A
  BExists,     // exists n <= t. A
  EqT,         // t =[T] s
  LeT,         // t <=[T] s
  Approx,      // t ~[T] s
  LeqStar,     // t <=*[T] s
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormKind kind;
  Term lhs;          // atoms; bound for bounded quantifiers; St argument
  Term rhs;
  Type type;         // quantifier type, St type, sugar type
  std::string var;   // bound variable
  Formula a;         // body, left operand
  Formula b;         // right operand
};

Formula falsum();
Formula eq(Term lhs, Term rhs);
Formula le(Term lhs, Term rhs);
Formula st(Type type, Term t);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula neg(Formula a);
Formula quant(FormKind kind, std::string var, Type type, Formula body);
Formula forall(std::string var, Type type, Formula body);
Formula exists(std::string var, Type type, Formula body);
Formula forall_st(std::string var, Type type, Formula body);
Formula exists_st(std::string var, Type type, Formula body);
Formula forall_mon_st(std::string var, Type type, Formula body);
Formula exists_mon_st(std::string var, Type type, Formula body);
Formula bounded_forall(std::string var, Term bound, Formula body);
Formula bounded_exists(std::string var, Term bound, Formula body);
Formula eq_at(Type type, Term lhs, Term rhs);
Formula le_at(Type type, Term lhs, Term rhs);
Formula approx(Type type, Term lhs, Term rhs);
Formula leq_star(Type type, Term lhs, Term rhs);

bool is_quantifier(FormKind k);
bool is_typed_quantifier(FormKind k);
bool is_bounded_quantifier(FormKind k);
bool is_binary_connective(FormKind k);
bool is_relation(FormKind k);  // Eq, Le, EqT, LeT, Approx, LeqStar

//------------------------------------------------------------------------------
// Structural equality (names included, no alpha-conversion).

bool term_struct_equal(const Term& a, const Term& b);
bool formula_struct_equal(const Formula& a, const Formula& b);

//------------------------------------------------------------------------------
// Parsing and printing

struct SyntaxError : std::runtime_error {
  SyntaxError(int line, int column, std::string found,
              std::vector<std::string> expected);
  int line;
  int column;
  std::string found;
  std::vector<std::string> expected;
};

// Named closed (or deliberately open) terms substituted for identifiers that
// are not bound at their use site.
using Definitions = std::map<std::string, Term, std::less<>>;

Type parse_type(std::string_view text);
Term parse_term(std::string_view text, const Definitions* defs = nullptr);
Formula parse_formula(std::string_view text, const Definitions* defs = nullptr);

std::string print(const Type& t);
std::string print(const Term& t);
std::string print(const Formula& f);

// Replaces every subterm equal to a definition body by the definition's name.
// Meant for display; the result reparses to the original under `defs`.
Term fold_definitions(const Term& t, const Definitions& defs);
Formula fold_definitions(const Formula& f, const Definitions& defs);

}  // namespace nsak

#endif  // NSAK_SYNTAX_HPP_
