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

// Strong majorizability x <=* y.
//
// Standard clause at rho->sigma, for all u and all v <=* u:
//   x v <=* y u  and  y v <=* y u.
// The printed clause (selectable for comparison) reads x u <=* y v and
// y u <=* y v instead.

#ifndef NSAK_MAJORIZABILITY_HPP_
#define NSAK_MAJORIZABILITY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nsak/checker.hpp"
#include "nsak/evaluator.hpp"

namespace nsak {

enum class Clause { Standard, Printed };

bool leq_star_model(const ModelElement& x, const ModelElement& y, const Type& type, std::uint32_t B,
                    Clause clause = Clause::Standard);

// Independent of leq_star_model: at arrow types only the single clause
// x v <=* x u for v <=* u is checked.
bool is_monotone_model(const ModelElement& x, const Type& type, std::uint32_t B);

// For y not monotone at an arrow type: indices (u, v) of domain elements with
// v <=* u and y v not <=* y u. Such a pair refutes x <=* y for every x.
std::optional<std::pair<std::uint64_t, std::uint64_t>> monotonicity_violation(const ModelElement& y,
                                                                              const Type& type,
                                                                              std::uint32_t B);

// The pointwise-maximum element (constant B at every level).
ModelElement top_element(const Type& type, std::uint32_t B);
// The element of the {0..B} model that is constantly `value` at every level.
ModelElement constant_element(const Type& type, std::uint32_t value, std::uint32_t B);

//------------------------------------------------------------------------------
// Sampled verdicts over the naturals

using Functional = std::function<std::uint64_t(const Oracle&)>;
// A number (type 0), a sequence (type 1) or a type-2 functional.
using SampleObject = std::variant<std::uint64_t, Oracle, Functional>;

struct MajVerdict {
  enum class Status { Holds, Fails, HoldsOnSamples } status = Status::HoldsOnSamples;
  std::uint64_t count = 0;
  // Counterexample arguments: numbers at type 1, sequence prefixes at type 2
  // (each extended by its last value).
  std::vector<std::uint64_t> u, v;
  std::string describe() const;
};

// Pairs are tried small-first (u-major order) before random ones.
MajVerdict leq_star_sampled(const SampleObject& x, const SampleObject& y, const Type& type,
                            std::uint64_t n_samples = 1000, std::uint64_t seed = 1);

//------------------------------------------------------------------------------
// Syntactic majorants

// max_T as a closed term of type T->T->T.
Term max_term(const Type& type);

// Howard-style majorant of a closed term.
Term majorant(const Term& t);

//------------------------------------------------------------------------------
// Exhaustive model suite

struct SuiteResult {
  std::string property;  // reflexivity-iff-monotone, majorized-implies-monotone, maj, transitivity
  std::string type;
  std::uint32_t B = 0;
  std::string mode;      // exhaustive, certificate, sampled
  std::uint64_t checked = 0;
  bool ok = true;
  std::string detail;
};

// 0, 0->0, 0->0->0, (0->0)->0, 0*0, 0*0->0, 0->0*0.
std::vector<Type> suite_types();

// Runs one named property. Types beyond the size guard are checked on a seeded
// sample of `samples` elements.
SuiteResult run_property(const std::string& property, const Type& type, std::uint32_t B, std::uint64_t seed = 1,
                         std::uint64_t samples = 20000);

std::vector<SuiteResult> run_model_suite(const std::vector<std::uint32_t>& Bs, std::uint64_t seed = 1);

// Certificate for majorant(t): t <=* t* and t* monotone at each B <= B_max.
bool certify_majorant(const Term& t, std::uint32_t B_max = 2);

}  // namespace nsak

#endif  // NSAK_MAJORIZABILITY_HPP_
