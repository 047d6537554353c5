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

#include <map>
#include <set>

#include "doctest.h"
#include "nsak/kernel.hpp"
#include "nsak/prelude.hpp"
#include "nsak/schemas.hpp"

using namespace nsak;

namespace {

CheckResult check_text(const std::string& text, const LemmaTable& lemmas = {}) {
  return check_script(parse_script(text, "<test>"), lemmas);
}

// The library is checked once; every test below reads the same results.
const std::vector<LibraryEntry>& library() {
  static const std::vector<LibraryEntry> entries = check_library(default_library_dir());
  return entries;
}

const LibraryEntry& entry(const std::string& name) {
  for (const auto& e : library())
    if (e.script.name == name) return e;
  FAIL("no script " << name);
  throw std::logic_error("unreachable");
}

LemmaTable library_lemmas() {
  LemmaTable t;
  for (const auto& e : library())
    if (e.script.lemma && e.result.ok()) t.emplace(e.script.name, *e.result.theorem);
  return t;
}

Formula instance(SchemaId id, const std::map<std::string, std::string>& keys, bool relativized) {
  Instantiation inst = instantiation_from_keys(id, keys);
  inst.relativized = relativized;
  return instantiate(inst);
}

}  // namespace

TEST_CASE("identity derivation checks") {
  auto r = check_text(
      "name: id\nkind: lemma\nvar: a:0\ngoal: a = a -> a = a\n"
      "1 | a = a | assume\n"
      "2 | a = a -> a = a | imp_i 1-1\n");
  REQUIRE(r.ok());
  CHECK(r.theorem->sequent.hypotheses.empty());
  CHECK(same_proposition(r.theorem->sequent.conclusion, parse_formula("a = a -> a = a")));
}

TEST_CASE("majorizability axiom as a one-step script") {
  auto r = check_text(
      "name: maj0\nkind: theorem\ntheory: DG\n"
      "1 | forall-st x:0. exists-st y:0. x <=*[0] y | axiom MAJ {sigma=0}\n");
  REQUIRE(r.ok());
  CHECK(r.theorem->theory_used.count(TheoryEntry{SchemaId::MAJ, false}));
}

TEST_CASE("forall_e with a term of the wrong type fails at that step") {
  auto r = check_text(
      "name: bad\nkind: lemma\nvar: f:0->0\n"
      "1 | forall x:0. x = x | assume\n"
      "2 | 0 = 0 | forall_e 1 f\n");
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure->step == 2);
  CHECK(r.failure->rule == "forall_e");
}

TEST_CASE("an open assumption at the last step is rejected") {
  auto r = check_text("name: open\nkind: lemma\nvar: a:0\n1 | a = 0 | assume\n");
  CHECK_FALSE(r.ok());
}

TEST_CASE("the classical excluded middle is not an axiom id") {
  auto r = check_text(
      "name: lem\nkind: theorem\ntheory: DG\nvar: a:0\n"
      "1 | a = 0 | (a = 0 -> false) | axiom LEM {phi=a = 0}\n");
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure->step == 1);
  CHECK_THROWS(parse_script("name: t\nkind: theorem\ntheory: DG, LEM\n", "<test>"));
}

TEST_CASE("an axiom outside the declared theory is rejected") {
  auto r = check_text(
      "name: wkl\nkind: theorem\ntheory: DG\n"
      "1 | forall-st x:0. exists-st y:0. x <=*[0] y | axiom PI01_TRANS\n");
  CHECK_FALSE(r.ok());
}

TEST_CASE("eval_leaf oracles") {
  CHECK(eval_leaf(parse_formula("forall n <= 3. n = n"), 1000));
  CHECK_FALSE(eval_leaf(parse_formula("0 = S 0"), 1000));
  CHECK(eval_leaf(parse_formula("forall n <= 8. (lam g:0->0. lam i:0. sg (g i)) (lam i:0. 1) n = 1", &prelude()), 100000));
  CHECK(eval_leaf(parse_formula("exists n <= 5. lt n 3 = 0", &prelude()), 1000));
  CHECK(eval_leaf(parse_formula("0 <=*[0] 0"), 64));
  CHECK_THROWS_AS(eval_leaf(parse_formula("forall n:0. n = n"), 1000), LeafError);
  CHECK_THROWS_AS(eval_leaf(parse_formula("forall n <= 100000. n = n"), 50), LeafError);
  CHECK_THROWS_AS(eval_leaf(parse_formula("st[0](0)"), 50), LeafError);
}

TEST_CASE("eval_leaf inside a script records the leaf") {
  auto r = check_text("name: leaf\nkind: lemma\n1 | forall n <= 4. lt n 5 = 1 | eval_leaf 1000\n");
  REQUIRE(r.ok());
  REQUIRE(r.theorem->leaves.size() == 1);
  CHECK(r.theorem->leaves[0].budget == 1000);
  CHECK_FALSE(check_text("name: leaf\nkind: lemma\n1 | 0 = S 0 | eval_leaf 1000\n").ok());
}

TEST_CASE("the library checks green") {
  std::set<std::string> theorems;
  for (const auto& e : library()) {
    INFO(e.script.name << ": " << (e.result.failure ? e.result.failure->describe() : "ok"));
    CHECK(e.result.ok());
    if (!e.script.lemma) theorems.insert(e.script.name);
  }
  CHECK(theorems == std::set<std::string>{"L1", "L2", "L3", "L4", "L5", "L6", "L7"});
}

TEST_CASE("every single-step mutation of the core scripts is rejected") {
  LemmaTable lemmas = library_lemmas();
  std::size_t total = 0;
  for (const char* name : {"L2", "L3", "L5"}) {
    const auto& e = entry(name);
    for (const auto& m : mutations(e.script)) {
      ++total;
      INFO(name << " step " << m.step << ": " << m.mutated);
      CHECK_FALSE(check_script(apply_mutation(e.script, m), lemmas).ok());
    }
  }
  CHECK(total >= 20);
}

TEST_CASE("leaves re-evaluate true at double budget") {
  std::size_t leaves = 0;
  for (const auto& e : library()) {
    if (!e.result.ok()) continue;
    for (const auto& leaf : e.result.theorem->leaves) {
      ++leaves;
      CHECK(eval_leaf(leaf.formula, 2 * leaf.budget));
    }
  }
  CHECK(leaves > 0);
}

TEST_CASE("no script proving false uses DG alone") {
  for (const auto& e : library()) {
    if (!e.result.ok() || !same_proposition(e.result.theorem->sequent.conclusion, falsum())) continue;
    bool extra = false;
    for (const auto& t : e.result.theorem->theory_used) extra = extra || t.relativized || !schema_info(t.id).in_dg;
    INFO(e.script.name);
    CHECK(extra);
  }
}

TEST_CASE("checking is deterministic") {
  LemmaTable lemmas = library_lemmas();
  for (const auto& e : library()) {
    auto a = check_script(e.script, lemmas), b = check_script(e.script, lemmas);
    REQUIRE(a.ok() == b.ok());
    if (a.ok()) {
      CHECK(print(a.theorem->sequent.conclusion) == print(b.theorem->sequent.conclusion));
      CHECK(a.theorem->theory_used == b.theorem->theory_used);
    }
  }
}

TEST_CASE("the weak Koenig script proves the relativized schema without transfer") {
  const auto& e = entry("L5");
  REQUIRE(e.result.ok());
  CHECK(same_proposition(e.result.theorem->sequent.conclusion, instance(SchemaId::WKL, {}, true)));
  for (const auto& t : e.script.theory) CHECK_FALSE(schema_info(t.id).transfer);
}

TEST_CASE("the extensionality script proves the relativized schema at type two") {
  const auto& e = entry("L1");
  REQUIRE(e.result.ok());
  CHECK(same_proposition(e.result.theorem->sequent.conclusion, instance(SchemaId::E, {{"T", "(0->0)->0"}}, true)));
}

TEST_CASE("the transfer script concludes the existential dual") {
  const auto& e = entry("L4");
  REQUIRE(e.result.ok());
  auto used = e.result.theorem->theory_used;
  CHECK(used.count(TheoryEntry{SchemaId::M, false}));
  CHECK(used.count(TheoryEntry{SchemaId::PI01_TRANS, false}));
}
