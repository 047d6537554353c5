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

#include <functional>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "nsak/checker.hpp"
#include "nsak/prelude.hpp"

using namespace nsak;

TEST_CASE("infer_type oracles") {
  CHECK(type_equal(infer_type(parse_term("lam f:0->0. f 0")), type2()));
  Context ctx{{"n", base_type()}};
  CHECK(type_equal(infer_type(parse_term("Rec[0] n 0 (lam k:0. lam r:0. S r)"), ctx), base_type()));
  CHECK_THROWS_AS(infer_type(parse_term("lam x:0. x x")), TypeError);
  CHECK_THROWS_AS(infer_type(parse_term("y")), TypeError);
  CHECK(type_equal(infer_type(parse_term("lam p:0*(0->0). snd p (fst p)")),
                   arrow(product(base_type(), type1()), base_type())));
  CHECK_THROWS_AS(infer_type(parse_term("fst")), TypeError);
}

TEST_CASE("prelude terms are closed and typed") {
  for (const auto& [name, t] : prelude()) {
    INFO(name);
    CHECK(free_vars(t).empty());
    CHECK_NOTHROW(infer_type(t));
  }
  CHECK(type_equal(infer_type(prelude_term("bar")), arrow(type1(), type1())));
}

TEST_CASE("is_internal oracles") {
  CHECK(is_internal(parse_formula("forall x:0. x = x")));
  CHECK_FALSE(is_internal(parse_formula("st[0](y)")));
  CHECK_FALSE(is_internal(parse_formula("forall~st x:0->0. x = x")));
  CHECK_FALSE(is_internal(parse_formula("x ~[0->0] y")));
  CHECK(is_internal(parse_formula("x <=*[0->0] y")));
}

TEST_CASE("relativize oracles") {
  CHECK(print(relativize(parse_formula("forall x:0. x = x"))) == "forall-st x:0. x = x");
  CHECK(print(relativize(parse_formula("x = y"))) == "x = y");
  CHECK(print(relativize(parse_formula("forall n <= t. n = n"))) == "forall n <= t. n = n");
  CHECK(print(relativize(parse_formula("x =[0->0] y"))) == "x ~[0->0] y");
}

TEST_CASE("unfold_equality oracles") {
  CHECK(print(unfold_equality(parse_formula("x =[0->0] y"))) == "forall z:0. x z = y z");
  CHECK(print(unfold_equality(parse_formula("x ~[0->0] y"))) == "forall-st z:0. x z = y z");
  CHECK(print(unfold_equality(parse_formula("x =[0] y"))) == "x = y");
  CHECK(print(unfold_equality(parse_formula("x <=[0->0->0] y"))) == "forall z:0. forall z1:0. x z z1 <= y z z1");
  CHECK(is_internal(unfold_equality(parse_formula("x =[(0->0)->0] y"))));
  CHECK_FALSE(is_internal(unfold_equality(parse_formula("x ~[(0->0)->0] y"))));
}

TEST_CASE("leq_star_formula follows the standard clause") {
  Formula f = leq_star_formula(type1(), var("x"), var("y"));
  CHECK(print(f) == "forall u:0. forall v:0. v <= u -> x v <= y u & y v <= y u");
  Formula p = leq_star_formula(type1(), var("x"), var("y"), true);
  CHECK(print(p) == "forall u:0. forall v:0. v <= u -> x u <= y v & y u <= y v");
}

TEST_CASE("free_vars oracles") {
  CHECK(free_vars(parse_term("lam x:0. x")).empty());
  CHECK(free_vars(parse_formula("x = y")) == std::set<std::string>{"x", "y"});
  CHECK(free_vars(parse_formula("forall x:0. x = y")) == std::set<std::string>{"y"});
  CHECK(free_vars(parse_formula("forall n <= n. n = 0")) == std::set<std::string>{"n"});
  auto typed = free_vars_typed(parse_formula("x = y"), {{"x", base_type()}, {"y", base_type()}});
  CHECK(typed.size() == 2);
}

TEST_CASE("substitution avoids capture") {
  Term t = substitute(parse_term("lam y:0. x"), "x", var("y"));
  CHECK(alpha_equal(t, parse_term("lam z:0. y")));
  CHECK_FALSE(alpha_equal(t, parse_term("lam y:0. y")));
  Formula f = substitute(parse_formula("forall y:0. x = y"), "x", var("y"));
  CHECK(alpha_equal(f, parse_formula("forall w:0. y = w")));
  Formula b = substitute(parse_formula("forall n <= x. n = x"), "x", var("n"));
  CHECK(alpha_equal(b, parse_formula("forall m <= n. m = n")));
}

TEST_CASE("alpha equality identifies numerals with successors") {
  CHECK(alpha_equal(numeral(2), parse_term("S (S 0)")));
  CHECK(alpha_equal(parse_term("S 1"), numeral(2)));
  CHECK_FALSE(alpha_equal(numeral(2), parse_term("S 0")));
  CHECK(alpha_equal(parse_term("lam a:0. a"), parse_term("lam b:0. b")));
}

TEST_CASE("desugar removes every defined construct") {
  Formula d = desugar(parse_formula("forall~st x:0->0. exists n <= x 0. x n <=[0] 1 | false"));
  std::function<bool(const Formula&)> core = [&](const Formula& f) -> bool {
    switch (f->kind) {
      case FormKind::Eq: case FormKind::St: return true;
      case FormKind::And: case FormKind::Or: case FormKind::Implies: return core(f->a) && core(f->b);
      case FormKind::Forall: case FormKind::Exists: case FormKind::ForallSt: case FormKind::ExistsSt:
        return core(f->a);
      default: return false;
    }
  };
  CHECK(core(d));
}

TEST_CASE("relativize is idempotent and externalizes quantified formulas") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1500; ++i) {
    Formula f = testing::random_formula(rng, 4);
    Formula r = relativize(f);
    REQUIRE(formula_struct_equal(relativize(r), r));
    bool has_unbounded = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
      if (g->kind == FormKind::Forall || g->kind == FormKind::Exists ||
          (g->kind == FormKind::LeqStar && g->type->kind == TypeKind::Arrow) ||
          (g->kind == FormKind::EqT && g->type->kind == TypeKind::Arrow) ||
          (g->kind == FormKind::LeT && g->type->kind == TypeKind::Arrow))
        has_unbounded = true;
      if (g->a) scan(g->a);
      if (g->b) scan(g->b);
    };
    scan(f);
    if (has_unbounded) REQUIRE_FALSE(is_internal(r));
  }
}

TEST_CASE("infer_type is deterministic on generated closed terms") {
  std::mt19937_64 rng(5);
  int typed = 0;
  for (int i = 0; i < 3000; ++i) {
    Term t = testing::random_term(rng, 4);
    Context ctx{{"x", base_type()}, {"y", base_type()}, {"n", base_type()}, {"f", type1()}, {"g", type1()}};
    try {
      Type a = infer_type(t, ctx);
      Type b = infer_type(t, ctx);
      REQUIRE(type_equal(a, b));
      ++typed;
    } catch (const TypeError&) {
      REQUIRE_THROWS_AS(infer_type(t, ctx), TypeError);
    }
  }
  CHECK(typed > 100);
}
