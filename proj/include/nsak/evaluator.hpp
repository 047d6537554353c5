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

// Three ways of running T terms:
//
//   normalize       symbolic leftmost-outermost reduction, free variables inert
//   eval_nat        strict evaluation of closed terms to machine naturals,
//                   optionally against host-function oracles
//   eval_finite_model
//                   the full type structure over {0..B} with saturating S

#ifndef NSAK_EVALUATOR_HPP_
#define NSAK_EVALUATOR_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nsak/syntax.hpp"

namespace nsak {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FuelExhausted : EvalError {
  explicit FuelExhausted(std::uint64_t steps);
  std::uint64_t steps;
};

// 10^6 unless NSAK_FUEL holds a positive integer.
std::uint64_t default_fuel();

//------------------------------------------------------------------------------
// Symbolic reduction

// Normal form under beta, recursor and projection rules. Closed numerals are
// returned as Num literals. Throws FuelExhausted.
Term normalize(const Term& t, std::uint64_t fuel = default_fuel());

//------------------------------------------------------------------------------
// Strict evaluation

using Oracle = std::function<std::uint64_t(std::uint64_t)>;
// A natural number or a type-1 oracle.
using Argument = std::variant<std::uint64_t, Oracle>;

// Points queried per oracle argument during one call.
struct QueryLog {
  std::vector<std::set<std::uint64_t>> queried;
};

std::uint64_t eval_nat(const Term& t, std::uint64_t fuel = default_fuel());

// Applies a closed term of type s1->...->sk->0 to the arguments. Oracles are
// memoized within the call; `log` receives the support of each oracle.
std::uint64_t apply_functional(const Term& t, const std::vector<Argument>& args,
                               std::uint64_t fuel = default_fuel(), QueryLog* log = nullptr);

//------------------------------------------------------------------------------
// Finite models

struct ModelElement {
  enum class Kind { Nat, Table, Pair };
  Kind kind = Kind::Nat;
  std::uint32_t nat = 0;
  std::vector<ModelElement> items;  // table entries or the two pair components

  static ModelElement number(std::uint32_t n);
  static ModelElement table(std::vector<ModelElement> entries);
  static ModelElement pair(ModelElement l, ModelElement r);
  bool operator==(const ModelElement& other) const;
  bool operator<(const ModelElement& other) const;
};

struct ModelTooLarge : EvalError {
  using EvalError::EvalError;
};

// 1 << 20 unless NSAK_MODEL_CAP overrides it.
std::uint64_t default_model_cap();

// Number of elements, saturating at UINT64_MAX.
std::uint64_t model_size(const Type& type, std::uint32_t B);

// All elements in index order. Throws ModelTooLarge above `cap`.
const std::vector<ModelElement>& enumerate_model(const Type& type, std::uint32_t B,
                                                 std::uint64_t cap = default_model_cap());

// Position of `e` in enumerate_model(type, B) (mixed radix, first entry least
// significant).
std::uint64_t model_index(const ModelElement& e, const Type& type, std::uint32_t B);
ModelElement model_element(std::uint64_t index, const Type& type, std::uint32_t B);

// Table application.
const ModelElement& model_apply(const ModelElement& f, const ModelElement& arg, const Type& fn_type,
                                std::uint32_t B);

struct TypedElement {
  Type type;
  ModelElement value;
};
using ModelEnv = std::map<std::string, TypedElement, std::less<>>;

ModelElement eval_finite_model(const Term& t, std::uint32_t B, const ModelEnv& env = {});

std::string print(const ModelElement& e);

}  // namespace nsak

#endif  // NSAK_EVALUATOR_HPP_
