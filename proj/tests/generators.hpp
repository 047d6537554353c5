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

// Random structural generators shared by the property tests.

#ifndef NSAK_TESTS_GENERATORS_HPP_
#define NSAK_TESTS_GENERATORS_HPP_

#include <random>
#include <string>

#include "nsak/syntax.hpp"

namespace nsak::testing {

inline Type random_type(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 2);
  switch (pick(rng)) {
    case 1: return arrow(random_type(rng, depth - 1), random_type(rng, depth - 1));
    case 2: return product(random_type(rng, depth - 1), random_type(rng, depth - 1));
    default: return base_type();
  }
}

// Untyped but syntactically arbitrary terms.
inline Term random_term(std::mt19937_64& rng, int depth) {
  static const char* kNames[] = {"x", "y", "f", "g", "n"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 6 : 10);
  std::uniform_int_distribution<int> name(0, 4);
  switch (pick(rng)) {
    case 0: case 1: return var(kNames[name(rng)]);
    case 2: return zero();
    case 3: return succ_const();
    case 4: return numeral(std::uniform_int_distribution<int>(1, 20)(rng));
    case 5: return fst_const();
    case 6: return snd_const();
    case 7: return lam(kNames[name(rng)], random_type(rng, 2), random_term(rng, depth - 1));
    case 8: case 9: return app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default:
      if (depth % 2) return rec(random_type(rng, 1));
      return pair(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

inline Formula random_formula(std::mt19937_64& rng, int depth) {
  static const FormKind kQuants[] = {FormKind::Forall, FormKind::Exists, FormKind::ForallSt,
                                     FormKind::ExistsSt, FormKind::ForallMonSt, FormKind::ExistsMonSt};
  static const char* kNames[] = {"x", "y", "n"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 5 : 13);
  std::uniform_int_distribution<int> name(0, 2);
  switch (pick(rng)) {
    case 0: return falsum();
    case 1: return eq(random_term(rng, 2), random_term(rng, 2));
    case 2: return le(random_term(rng, 2), random_term(rng, 2));
    case 3: return st(random_type(rng, 2), random_term(rng, 2));
    case 4: return eq_at(random_type(rng, 2), random_term(rng, 1), random_term(rng, 1));
    case 5: return leq_star(random_type(rng, 2), random_term(rng, 1), random_term(rng, 1));
    case 6: return conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 7: return disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 8: case 9: return implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 10: case 11:
      return quant(kQuants[std::uniform_int_distribution<int>(0, 5)(rng)], kNames[name(rng)], random_type(rng, 2),
                   random_formula(rng, depth - 1));
    case 12: return bounded_forall(kNames[name(rng)], random_term(rng, 1), random_formula(rng, depth - 1));
    default: return bounded_exists(kNames[name(rng)], random_term(rng, 1), random_formula(rng, depth - 1));
  }
}

}  // namespace nsak::testing

#endif  // NSAK_TESTS_GENERATORS_HPP_
