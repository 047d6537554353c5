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

// Intuitionistic natural deduction over the nonstandard formula language.
//
// A script is a numbered list of steps `i | formula | justification`. Every
// step carries the set of open assumptions it depends on (Lemmon style), so
// imp_i, exists_e and or_e discharge by naming the assumption step. Formulas
// are compared in canonical form: sugar removed, st-quantifiers spelled out
// as guarded plain quantifiers, terms normalized, bound names ignored.
//
// Script text:
//
//   name: L2
//   kind: theorem                 (or lemma; lemmas may be cited with `use`)
//   theory: DG, E^st              (DG expands to the base axioms)
//   var: N:0, Y:(0->0)->0         (typed free variables and eigenvariables)
//   def Y0 := lam f:0->0. ...     (abbreviation, may mention variables)
//   goal: false                   (optional; must match the last step)
//   # comment
//   1 | forall n <= 3. n = n | eval_leaf 1000

#ifndef NSAK_KERNEL_HPP_
#define NSAK_KERNEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsak/checker.hpp"
#include "nsak/schemas.hpp"
#include "nsak/syntax.hpp"

namespace nsak {

struct TheoryEntry {
  SchemaId id = SchemaId::MAJ;
  bool relativized = false;
  bool operator<(const TheoryEntry& o) const {
    return id != o.id ? id < o.id : relativized < o.relativized;
  }
  bool operator==(const TheoryEntry& o) const { return id == o.id && relativized == o.relativized; }
};

std::string to_string(const TheoryEntry& e);
// "DG" yields every base axiom; otherwise one catalog name, optionally with ^st.
std::vector<TheoryEntry> parse_theory_item(const std::string& item);

struct ScriptStep {
  int index = 0;
  int line = 0;
  std::string formula_text;
  std::string justification;
  Formula formula;
};

struct ProofScript {
  std::string name;
  bool lemma = false;
  std::set<TheoryEntry> theory;
  Context vars;
  Definitions defs;  // prelude plus script definitions
  std::optional<Formula> goal;
  std::vector<ScriptStep> steps;
  std::string path;
};

struct ScriptParseError : std::runtime_error {
  ScriptParseError(int line, const std::string& msg);
  int line;
};

ProofScript parse_script(const std::string& text, const std::string& path = "");
ProofScript load_script(const std::string& path);

struct Sequent {
  std::vector<Formula> hypotheses;
  Formula conclusion;
};

struct LeafFact {
  int step = 0;
  Formula formula;
  std::uint64_t budget = 0;
};

struct CheckedTheorem {
  std::string name;
  bool lemma = false;
  Sequent sequent;
  std::set<TheoryEntry> theory_used;
  std::vector<LeafFact> leaves;
  std::vector<std::string> lemmas_used;
};

struct CheckFailure {
  int step = 0;  // 0: script-level failure
  std::string rule;
  std::string reason;
  std::string describe() const;
};

struct CheckResult {
  std::optional<CheckedTheorem> theorem;
  std::optional<CheckFailure> failure;
  bool ok() const { return theorem.has_value(); }
};

// Already checked lemmas, by name.
using LemmaTable = std::map<std::string, CheckedTheorem>;

CheckResult check_script(const ProofScript& script, const LemmaTable& lemmas = {});

struct LeafError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truth of a closed internal formula whose quantifiers are all bounded.
// `budget` caps reduction steps plus bounded-quantifier instances. Throws
// LeafError for unbounded quantifiers, open formulas, st, higher-type
// relations or an exhausted budget.
bool eval_leaf(const Formula& f, std::uint64_t budget);

// Canonical form used for every comparison the kernel makes.
Formula canonical(const Formula& f);
bool same_proposition(const Formula& a, const Formula& b);
// Sugar removed and st-quantifiers spelled out, terms left as written.
Formula core_form(const Formula& f);
// Normal form of a term under the kernel's fuel; the term itself if that runs out.
Term canonical_term(const Term& t);

//------------------------------------------------------------------------------
// Libraries

struct LibraryEntry {
  ProofScript script;
  CheckResult result;
  double seconds = 0;
};

// Loads every *.nd file under `dir` (lemmas/ first), checks them in
// dependency order and returns the results sorted by script name within
// lemmas and theorems.
std::vector<LibraryEntry> check_library(const std::string& dir);

// Directory of the shipped library: NSAK_LIBRARY if set, else the build-time
// location.
std::string default_library_dir();

//------------------------------------------------------------------------------
// Mutation testing

struct Mutation {
  int step = 0;
  std::string kind;
  std::string original;
  std::string mutated;
};

// Single-justification mutations of `script`: a rule swapped for another,
// a cited step replaced by an earlier one stating something different, a
// witness term perturbed, an axiom swapped for one outside the theory.
std::vector<Mutation> mutations(const ProofScript& script);
ProofScript apply_mutation(const ProofScript& script, const Mutation& m);

}  // namespace nsak

#endif  // NSAK_KERNEL_HPP_
