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

#include <set>

#include "doctest.h"
#include "nsak/prelude.hpp"
#include "nsak/schemas.hpp"

using namespace nsak;

namespace {

Formula F(const char* s) { return parse_formula(s, &prelude()); }

Formula inst(SchemaId id, std::map<std::string, std::string> keys, const Context& ctx = {}) {
  return instantiate(instantiation_from_keys(id, keys, ctx, &prelude()));
}

// Arguments that make every catalog entry instantiable.
std::map<std::string, std::string> sample_keys(SchemaId id) {
  switch (id) {
    case SchemaId::ST_A:
    case SchemaId::ST_B:
    case SchemaId::MAJ:
      return {{"sigma", "0->0"}};
    case SchemaId::ST_C:
      return {{"t", "lam f:0->0. 1"}};
    case SchemaId::ST_D:
      return {{"sigma", "0"}, {"tau", "0->0"}};
    case SchemaId::IA_ST:
      return {{"Phi", "st[0](n)"}};
    case SchemaId::mAC:
    case SchemaId::R:
      return {{"Phi", "st[0](y) & x = y"}, {"rho", "0"}, {"sigma", "0"}};
    case SchemaId::I:
      return {{"phi", "x = y"}, {"rho", "0"}, {"sigma", "0"}};
    case SchemaId::IP:
      return {{"phi", "x = x"}, {"Psi", "st[0](y)"}, {"rho", "0"}, {"sigma", "0"}};
    case SchemaId::M:
      return {{"phi", "x = 0"}, {"psi", "0 = 1"}, {"rho", "0"}};
    case SchemaId::E:
      return {{"T", "(0->0)->0"}};
    case SchemaId::MP:
      return {};
    case SchemaId::PF_TP_E:
    case SchemaId::PF_TP_A:
      return {{"phi", "x = x"}, {"vars", "x:0"}};
    case SchemaId::CONT_C:
    case SchemaId::GAFOT:
    case SchemaId::NEAR_STD:
      return {{"Y", "lam f:0->0. f 0"}};
    case SchemaId::WC_N:
    case SchemaId::WC_N0:
      return {{"A", "alpha 0 = n"}};
    case SchemaId::CT:
      return {{"step", "lam e:0. lam s:0. lam n:0. 0"}};
    case SchemaId::QF_AC:
      return {{"phi", "x = y"}, {"sigma", "0"}, {"tau", "0"}};
    default:
      return {};
  }
}

}  // namespace

TEST_CASE("catalog oracles") {
  CHECK(catalog().size() >= 30);
  std::set<std::string> names;
  for (const auto& e : catalog()) {
    names.insert(e.name);
    CHECK(parse_schema_id(e.name) == e.id);
  }
  CHECK(names.size() == catalog().size());
  const auto& i = schema_info(SchemaId::I);
  CHECK(std::find(i.side_conditions.begin(), i.side_conditions.end(), "internal phi") != i.side_conditions.end());
  const auto& ia = schema_info(SchemaId::IA_ST);
  CHECK(std::find(ia.side_conditions.begin(), ia.side_conditions.end(), "any Phi") != ia.side_conditions.end());
  CHECK_FALSE(parse_schema_id("LEM").has_value());
  CHECK_FALSE(parse_schema_id("EM").has_value());
}

TEST_CASE("every catalog entry instantiates to a closed well-typed formula") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    Formula f = inst(e.id, sample_keys(e.id));
    CHECK(free_vars(f).empty());
    CHECK_NOTHROW(check_formula(f));
    Instantiation rel = instantiation_from_keys(e.id, sample_keys(e.id), {}, &prelude());
    rel.relativized = true;
    Formula r = instantiate(rel);
    CHECK(free_vars(r).empty());
    CHECK_NOTHROW(check_formula(r));
  }
}

TEST_CASE("PF_TP_E oracle") {
  Formula f = inst(SchemaId::PF_TP_E, {{"phi", "x = x"}, {"vars", "x:0"}});
  CHECK(alpha_equal(f, F("(exists x:0. x=x) -> (exists-st x:0. x=x)")));
  CHECK(print(f) == print(F("(exists x:0. x=x) -> (exists-st x:0. x=x)")));
  CHECK_FALSE(is_internal(f));
  Formula two = inst(SchemaId::PF_TP_A, {{"phi", "f x = x"}, {"vars", "f:0->0, x:0"}});
  CHECK(alpha_equal(two, F("(forall-st f:0->0. forall-st x:0. f x = x) -> forall f:0->0. forall x:0. f x = x")));
}

TEST_CASE("side conditions") {
  try {
    inst(SchemaId::I, {{"phi", "st[0](x) & x = y"}, {"rho", "0"}, {"sigma", "0"}});
    FAIL("expected a side-condition error");
  } catch (const SchemaError& e) {
    CHECK(e.condition == "internal phi required");
    CHECK(e.offending.find("st[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(inst(SchemaId::PF_TP_E, {{"phi", "x = c"}, {"vars", "x:0"}}, {{"c", base_type()}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::PF_TP_A, {{"phi", "st[0](x)"}, {"vars", "x:0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::IA_ST, {{"Phi", "n = c"}}, {{"c", base_type()}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::ST_C, {{"t", "x"}}, {{"x", base_type()}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::E, {{"T", "0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::QF_AC, {{"phi", "forall z:0. x = z"}, {"sigma", "0"}, {"tau", "0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::WC_N0, {{"A", "exists z:0. alpha z = n"}}), SchemaError);
  CHECK_NOTHROW(inst(SchemaId::WC_N, {{"A", "exists z:0. alpha z = n"}}));
  CHECK_THROWS_AS(inst(SchemaId::M, {{"phi", "x = 0"}, {"psi", "x = 1"}, {"rho", "0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::MAJ, {{"tau", "0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::I, {{"phi", "x = c"}, {"rho", "0"}, {"sigma", "0"}}), SchemaError);
  CHECK_THROWS_AS(inst(SchemaId::CONT_C, {}), SchemaError);
}

TEST_CASE("parameters are closed universally in order of first occurrence") {
  Context ctx{{"c", base_type()}, {"g", type1()}};
  Formula f = inst(SchemaId::I, {{"phi", "g x = c"}, {"rho", "0"}, {"sigma", "0"}}, ctx);
  REQUIRE(f->kind == FormKind::Forall);
  CHECK(f->var == "g");
  CHECK(f->a->var == "c");
}

TEST_CASE("I expands monotone quantifiers into guarded ones") {
  Formula f = inst(SchemaId::I, {{"phi", "x = y"}, {"rho", "0"}, {"sigma", "0"}});
  Formula golden = F(
      "(forall-st z:0. z <=*[0] z -> exists x:0. forall y:0. y <=*[0] z -> x = y) -> "
      "exists x:0. forall-st y:0. x = y");
  CHECK(alpha_equal(f, golden));
  Formula g = inst(SchemaId::I, {{"phi", "a = y"}, {"rho", "0"}, {"sigma", "0"}, {"x", "a"}, {"z", "w"}});
  CHECK(alpha_equal(f, g));
}

TEST_CASE("E at type two") {
  Formula f = inst(SchemaId::E, {{"T", "(0->0)->0"}});
  CHECK(alpha_equal(f, F("forall phi:(0->0)->0. forall x:0->0. forall y:0->0. x =[0->0] y -> phi x = phi y")));
  Instantiation st = instantiation_from_keys(SchemaId::E, {{"T", "(0->0)->0"}});
  st.relativized = true;
  Formula r = instantiate(st);
  CHECK_FALSE(is_internal(r));
  CHECK(alpha_equal(r, F("forall-st phi:(0->0)->0. forall-st x:0->0. forall-st y:0->0. "
                         "x ~[0->0] y -> phi x = phi y")));
}

TEST_CASE("MP default matrix") {
  Formula f = inst(SchemaId::MP, {});
  CHECK(alpha_equal(f, F("forall f:0->0. (((exists n:0. f n = 0) -> false) -> false) -> exists n:0. f n = 0")));
}

TEST_CASE("instantiate is injective on distinct instantiations") {
  std::vector<Formula> out;
  for (const char* t : {"0", "0->0", "(0->0)->0", "0*0", "0->0->0"}) {
    out.push_back(inst(SchemaId::MAJ, {{"sigma", t}}));
    out.push_back(inst(SchemaId::ST_A, {{"sigma", t}}));
    out.push_back(inst(SchemaId::ST_B, {{"sigma", t}}));
  }
  for (const char* t : {"0->0", "(0->0)->0", "0->0->0", "0*0->0"}) out.push_back(inst(SchemaId::E, {{"T", t}}));
  for (const char* p : {"x = y", "y = x", "S x = y", "x <= y"})
    out.push_back(inst(SchemaId::I, {{"phi", p}, {"rho", "0"}, {"sigma", "0"}}));
  // WC_N0 is WC_N restricted to decidable A, so equal arguments give equal formulas.
  for (const auto& e : catalog())
    if (e.id != SchemaId::MAJ && e.id != SchemaId::ST_A && e.id != SchemaId::ST_B && e.id != SchemaId::E &&
        e.id != SchemaId::I && e.id != SchemaId::WC_N0)
      out.push_back(inst(e.id, sample_keys(e.id)));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      CAPTURE(print(out[i]));
      CHECK_FALSE(alpha_equal(out[i], out[j]));
    }
}

TEST_CASE("folded printing names prelude terms") {
  Formula f = inst(SchemaId::FAN, {});
  std::string text = print(fold_definitions(f, prelude()));
  CHECK(text.find("bar") != std::string::npos);
  CHECK(text.find("Rec") == std::string::npos);
  CHECK(alpha_equal(parse_formula(text, &prelude()), f));
}

TEST_CASE("instantiation_from_keys rejects unknown keys") {
  CHECK_THROWS_AS(instantiation_from_keys(SchemaId::MAJ, {{"rho", "0"}}), SchemaError);
  CHECK_THROWS_AS(instantiation_from_keys(SchemaId::PF_TP_E, {{"vars", "x"}}), SchemaError);
}

TEST_CASE("model_check_instance oracles") {
  auto maj0 = model_check_instance(inst(SchemaId::MAJ, {{"sigma", "0"}}), 2, 100000);
  CHECK(maj0.status == ModelVerdict::Status::Valid);
  auto stb = model_check_instance(inst(SchemaId::ST_B, {{"sigma", "0->0"}}), 2, 1000000, StMode::threshold(1));
  CHECK(stb.status == ModelVerdict::Status::Valid);
  Formula xihu = F(
      "exists-st phi:(0->0)->0. forall f:0->0. "
      "((exists-st n:0. f n = 0) -> phi f = 0) & (phi f = 0 -> exists-st n:0. f n = 0)");
  auto e2 = model_check_instance(xihu, 1, 1000000, StMode::threshold(0));
  CHECK(e2.status == ModelVerdict::Status::Countermodel);
  CHECK(model_check_instance(xihu, 1, 1000000, StMode::all()).status == ModelVerdict::Status::Valid);
  auto tiny = model_check_instance(inst(SchemaId::MAJ, {{"sigma", "0->0"}}), 2, 5);
  CHECK(tiny.status == ModelVerdict::Status::Inconclusive);
  auto huge = model_check_instance(inst(SchemaId::MAJ, {{"sigma", "(0->0)->0"}}), 2, 1000000);
  CHECK(huge.status == ModelVerdict::Status::Inconclusive);
  CHECK_THROWS(model_check_instance(F("x = 0"), 1, 10));
}

TEST_CASE("countermodel environments falsify the body") {
  auto v = model_check_instance(F("forall x:0. forall y:0. x <= y"), 2, 1000);
  REQUIRE(v.status == ModelVerdict::Status::Countermodel);
  REQUIRE(v.environment.count("x"));
  REQUIRE(v.environment.count("y"));
  CHECK(v.environment.at("x").value.nat > v.environment.at("y").value.nat);
}

TEST_CASE("standardness axioms hold in threshold models") {
  for (std::uint32_t k = 0; k <= 2; ++k)
    for (std::string t : {"0", "0->0", "0*0"}) {
      CAPTURE(t);
      CAPTURE(k);
      auto v = model_check_instance(inst(SchemaId::ST_B, {{"sigma", t}}), 2, 10000000, StMode::threshold(k));
      CHECK(v.status == ModelVerdict::Status::Valid);
      auto a = model_check_instance(inst(SchemaId::ST_A, {{"sigma", t}}), 2, 10000000, StMode::threshold(k));
      CHECK(a.status == ModelVerdict::Status::Valid);
    }
}
