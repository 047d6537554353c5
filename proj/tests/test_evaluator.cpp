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

#include "doctest.h"
#include "nsak/checker.hpp"
#include "nsak/evaluator.hpp"
#include "nsak/prelude.hpp"

using namespace nsak;

namespace {

Term P(const char* text) { return parse_term(text, &prelude()); }

// Closed type-0 terms built from monotone pieces, so saturation in the
// finite model only ever caps the true value.
Term random_arith(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0: return zero();
    case 1: return numeral(std::uniform_int_distribution<int>(1, 4)(rng));
    case 2: return succ(random_arith(rng, depth - 1));
    case 3: return app(prelude_term("add"), {random_arith(rng, depth - 1), random_arith(rng, depth - 1)});
    case 4: return app(lam("v", base_type(), app(prelude_term("add"), {var("v"), var("v")})), random_arith(rng, depth - 1));
    default: return app(prelude_term("max0"), {random_arith(rng, depth - 1), random_arith(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("normalize oracles") {
  CHECK(print(normalize(parse_term("Rec[0] 0 b s"))) == "b");
  CHECK(print(normalize(P("add 2 3"))) == "5");
  CHECK(print(normalize(parse_term("(lam x:0. x) 7"))) == "7");
  CHECK(print(normalize(parse_term("fst <3, 4>"))) == "3");
  CHECK(print(normalize(P("lt 2 5"))) == "1");
  CHECK(print(normalize(P("lt 5 2"))) == "0");
  CHECK(print(normalize(parse_term("lam y:0. (lam x:0. lam y:0. x) y"))) == "lam y:0. lam y1:0. y");
  CHECK_THROWS_AS(normalize(P("mul 30 30"), 50), FuelExhausted);
}

TEST_CASE("normalize leaves free variables inert") {
  Term t = normalize(P("lt n (S m)"));
  CHECK(free_vars(t) == std::set<std::string>{"m", "n"});
  CHECK(print(normalize(P("sg (S x)"))) == "1");
}

TEST_CASE("eval_nat oracles") {
  CHECK(eval_nat(numeral(0)) == 0);
  CHECK(eval_nat(parse_term("S (S 0)")) == 2);
  CHECK(eval_nat(P("add 2 3")) == 5);
  CHECK(eval_nat(P("mul 7 6")) == 42);
  CHECK(eval_nat(P("exp2 10")) == 1024);
  CHECK(eval_nat(P("max0 3 9")) == 9);
  CHECK(eval_nat(P("bar (lam i:0. 0) 2")) == 3);
  CHECK(eval_nat(P("bar (lam i:0. 1) 1")) == 2);
  CHECK_THROWS_AS(eval_nat(P("mul 1000 1000"), 100), FuelExhausted);
  CHECK_THROWS_AS(eval_nat(parse_term("x")), EvalError);
}

TEST_CASE("apply_functional oracles") {
  Oracle square = [](std::uint64_t n) { return n * n; };
  CHECK(apply_functional(parse_term("lam f:0->0. f 3"), {square}) == 9);
  Oracle anything = [](std::uint64_t n) { return n + 17; };
  CHECK(apply_functional(parse_term("lam f:0->0. 4"), {anything}) == 4);
  QueryLog log;
  Oracle ones = [](std::uint64_t) { return 1; };
  Term y0 = parse_term(
      "lam f:0->0. sg (Rec[0] (S (S 8)) 1 (lam k:0. lam r:0. Rec[0] (f k) 0 (lam j:0. lam q:0. r)))", &prelude());
  CHECK(apply_functional(y0, {ones}, default_fuel(), &log) == 1);
  CHECK(log.queried[0].size() == 10);
  CHECK(apply_functional(y0, {Oracle([](std::uint64_t n) { return n == 9 ? 0u : 1u; })}) == 0);
  CHECK(apply_functional(y0, {Oracle([](std::uint64_t n) { return n == 10 ? 0u : 1u; })}) == 1);
}

TEST_CASE("numeric results agree between reducers") {
  const char* cases[] = {"add 4 9", "mul 3 5", "exp2 4", "lt 3 3", "sg 0", "eqz 5", "max0 2 7", "bar (lam i:0. i) 3"};
  for (const char* c : cases) {
    INFO(c);
    Term t = P(c);
    CHECK(eval_nat(t) == normalize(t)->num);
  }
}

TEST_CASE("enumerate_model oracles") {
  CHECK(enumerate_model(base_type(), 1).size() == 2);
  CHECK(enumerate_model(type1(), 1).size() == 4);
  CHECK(enumerate_model(type2(), 1).size() == 16);
  CHECK(model_size(type2(), 2) == 7625597484987ull);
  CHECK_THROWS_AS(enumerate_model(type2(), 2), ModelTooLarge);
  const auto& all = enumerate_model(arrow(product(base_type(), base_type()), base_type()), 1);
  std::set<ModelElement> distinct(all.begin(), all.end());
  CHECK(distinct.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(model_index(all[i], arrow(product(base_type(), base_type()), base_type()), 1) == i);
}

TEST_CASE("eval_finite_model oracles") {
  CHECK(eval_finite_model(parse_term("S 3"), 3).nat == 3);
  CHECK(eval_finite_model(P("add 1 1"), 3).nat == 2);
  ModelElement c = eval_finite_model(parse_term("lam x:0. 0"), 2);
  CHECK(print(c) == "[0,0,0]");
  ModelEnv env{{"f", {type1(), ModelElement::table({ModelElement::number(2), ModelElement::number(0),
                                                    ModelElement::number(1)})}}};
  CHECK(eval_finite_model(parse_term("f (f 0)"), 2, env).nat == 1);
  CHECK(print(eval_finite_model(parse_term("lam p:0*0. snd p"), 1)) == "[0,1,0,1]");
}

TEST_CASE("finite model agrees with eval_nat on monotone closed terms") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 400; ++i) {
    Term t = random_arith(rng, 3);
    std::uint64_t v = eval_nat(t);
    for (std::uint32_t B : {1u, 3u, 8u}) {
      INFO(print(t), " B=", B);
      REQUIRE(eval_finite_model(t, B).nat == std::min<std::uint64_t>(v, B));
    }
  }
}

TEST_CASE("normalization preserves types on generated redexes") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Term t = random_arith(rng, 3);
    Term wrapped = app(lam("w", base_type(), app(prelude_term("add"), {var("w"), t})), t);
    REQUIRE(type_equal(infer_type(normalize(wrapped)), infer_type(wrapped)));
    REQUIRE(alpha_equal(normalize(wrapped), normalize(wrapped)));
  }
}
