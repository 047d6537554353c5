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

// Typing, classification and the syntactic transformations shared by the
// schemas and the proof kernel: substitution, alpha-equivalence,
// relativization and desugaring into the core language.

#ifndef NSAK_CHECKER_HPP_
#define NSAK_CHECKER_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "nsak/syntax.hpp"

namespace nsak {

using Context = std::map<std::string, Type, std::less<>>;

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unique type of `t`; throws TypeError with the offending subterm.
Type infer_type(const Term& t, const Context& ctx = {});

// Throws TypeError unless every atom, st-predicate and sugar node is typed
// consistently. Free variables must be declared in `ctx`.
void check_formula(const Formula& f, const Context& ctx = {});

bool is_internal(const Formula& f);

// Every unbounded Forall/Exists becomes its st-variant. Sugar nodes follow
// their unfolding: =_T becomes ~_T, <=_T and <=*_T are unfolded first.
Formula relativize(const Formula& f);

// Unfolds one top-level =_T, <=_T or ~_T node. Base-type nodes become atoms.
Formula unfold_equality(const Formula& f);

// x <=*_T y as an internal formula. `printed_clause` selects the literal
// argument placement (x u <=* y v) instead of the standard one.
Formula leq_star_formula(const Type& type, const Term& x, const Term& y, bool printed_clause = false);

// Removes every defined construct: monotone and bounded quantifiers, sugar
// relations, <= (as lt a (S b) = 1) and false (as 0 = 1).
Formula desugar(const Formula& f);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);
// Free variables typed through `ctx`; undeclared variables raise TypeError.
std::map<std::string, Type> free_vars_typed(const Formula& f, const Context& ctx);

// A name starting with `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding substitution of `value` for free occurrences of `name`.
Term substitute(const Term& t, const std::string& name, const Term& value);
Formula substitute(const Formula& f, const std::string& name, const Term& value);

// Alpha-equivalence; Num(k) is identified with S^k 0.
bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const Formula& a, const Formula& b);

}  // namespace nsak

#endif  // NSAK_CHECKER_HPP_
