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
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "nsak/syntax.hpp"

using namespace nsak;

TEST_CASE("types parse to the expected trees") {
  CHECK(type_equal(parse_type("0->0"), arrow(base_type(), base_type())));
  CHECK(type_equal(parse_type("0->0->0"), arrow(base_type(), type1())));
  CHECK(type_equal(parse_type("(0->0)->0"), type2()));
  CHECK(type_equal(parse_type("0*0->0"), arrow(product(base_type(), base_type()), base_type())));
  CHECK(type_level(type2()) == 2);
}

TEST_CASE("terms parse to the expected trees") {
  Term t = parse_term("lam f:0->0. f 0");
  CHECK(term_struct_equal(t, lam("f", type1(), app(var("f"), zero()))));
  CHECK(term_struct_equal(parse_term("f x y"), app(app(var("f"), var("x")), var("y"))));
  CHECK(parse_term("0")->kind == TermKind::Zero);
  CHECK(parse_term("3")->num == 3);
  CHECK(parse_term("Rec[0->0]")->kind == TermKind::Rec);
  CHECK(parse_term("<x, S y>")->kind == TermKind::Pair);
}

TEST_CASE("formulas parse to the expected trees") {
  Formula f = parse_formula("forall-st x:0. x = x");
  CHECK(formula_struct_equal(f, forall_st("x", base_type(), eq(var("x"), var("x")))));
  CHECK(parse_formula("forall~st x:0->0. x = x")->kind == FormKind::ForallMonSt);
  CHECK(parse_formula("forall n <= t. n = n")->kind == FormKind::BForall);
  CHECK(parse_formula("A = B -> C = D -> false")->b->kind == FormKind::Implies);
  CHECK(parse_formula("x = y & y = z | z = x")->kind == FormKind::Or);
  CHECK(parse_formula("(x = y) & st[0](x)")->kind == FormKind::And);
  CHECK(parse_formula("(f x) = y")->kind == FormKind::Eq);
  CHECK(parse_formula("x <=*[0->0] y")->kind == FormKind::LeqStar);
  CHECK(parse_formula("x ~[0->0] y")->kind == FormKind::Approx);
  CHECK(parse_formula("x =[0->0] y")->kind == FormKind::EqT);
  CHECK(parse_formula("x <=[0->0] y")->kind == FormKind::LeT);
  CHECK(parse_formula("x = y # trailing comment")->kind == FormKind::Eq);
}

TEST_CASE("definitions expand only unbound identifiers") {
  Definitions defs{{"one", numeral(1)}};
  CHECK(parse_term("one", &defs)->num == 1);
  Term shadowed = parse_term("lam one:0. one", &defs);
  CHECK(shadowed->a->kind == TermKind::Var);
}

TEST_CASE("syntax errors carry position and expectations") {
  try {
    parse_formula("forall x 0. x = x");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 10);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(parse_type("0->"), SyntaxError);
  CHECK_THROWS_AS(parse_term("lam x. x"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("x = y $"), SyntaxError);
}

TEST_CASE("printer renders canonical text") {
  CHECK(print(type1()) == "0->0");
  CHECK(print(numeral(3)) == "3");
  CHECK(print(forall_mon_st("x", base_type(), eq(var("x"), var("x")))) == "forall~st x:0. x = x");
  CHECK(print(parse_formula("(forall x:0. x = x) -> false")) == "(forall x:0. x = x) -> false");
}

TEST_CASE("round trip on generated types, terms and formulas") {
  std::mt19937_64 rng(20261018);
  for (int i = 0; i < 2000; ++i) {
    Type t = testing::random_type(rng, 4);
    REQUIRE(type_equal(parse_type(print(t)), t));
    Term m = testing::random_term(rng, 5);
    INFO(print(m));
    REQUIRE(term_struct_equal(parse_term(print(m)), m));
    Formula f = testing::random_formula(rng, 4);
    INFO(print(f));
    REQUIRE(formula_struct_equal(parse_formula(print(f)), f));
  }
}

TEST_CASE("distinct generated formulas print distinctly") {
  std::mt19937_64 rng(7);
  std::map<std::string, Formula> seen;
  for (int i = 0; i < 3000; ++i) {
    Formula f = testing::random_formula(rng, 3);
    auto [it, fresh] = seen.emplace(print(f), f);
    if (!fresh) REQUIRE(formula_struct_equal(it->second, f));
  }
}
