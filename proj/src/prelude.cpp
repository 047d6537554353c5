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

#include "nsak/prelude.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace nsak {
namespace {

// Order matters: later entries may use earlier names.
const std::pair<const char*, const char*> kSource[] = {
    {"lt",
     "lam n:0. lam m:0. Rec[0->0] m (lam x:0. 0) "
     "(lam k:0. lam r:0->0. lam x:0. Rec[0] x 1 (lam j:0. lam q:0. r j)) n"},
    {"sg", "lam x:0. Rec[0] x 0 (lam k:0. lam r:0. 1)"},
    {"eqz", "lam x:0. Rec[0] x 1 (lam k:0. lam r:0. 0)"},
    {"one1", "lam n:0. 1"},
    {"one2", "lam f:0->0. 1"},
    {"bin", "lam f:0->0. lam k:0. sg (f k)"},
    {"add", "lam a:0. lam b:0. Rec[0] b a (lam k:0. lam r:0. S r)"},
    {"mul", "lam a:0. lam b:0. Rec[0] b 0 (lam k:0. lam r:0. add r a)"},
    {"exp2", "lam a:0. Rec[0] a 1 (lam k:0. lam r:0. add r r)"},
    {"bar",
     "lam f:0->0. lam m:0. Rec[0] m 0 (lam k:0. lam r:0. mul (exp2 (f k)) (S (add r r)))"},
    {"max0",
     "lam a:0. Rec[0->0] a (lam y:0. y) "
     "(lam k:0. lam r:0->0. lam y:0. Rec[0] y (S k) (lam j:0. lam q:0. S (r j)))"},
    {"pred", "lam n:0. Rec[0] n 0 (lam k:0. lam r:0. k)"},
    {"leq", "lam a:0. lam b:0. lt a (S b)"},
    // Floor of n/2 and the parity of n, carried together.
    {"halves",
     "lam n:0. Rec[0*0] n <0, 0> "
     "(lam k:0. lam r:0*0. Rec[0*0] (snd r) <fst r, 1> (lam j:0. lam q:0*0. <S (fst r), 0>))"},
    {"half", "lam n:0. fst (halves n)"},
    {"par", "lam n:0. snd (halves n)"},
    // Exponent of 2 in c (0 for c = 0).
    {"v2",
     "lam c:0. snd (Rec[0*0] c <c, 0> (lam k:0. lam r:0*0. "
     "Rec[0*0] (par (fst r)) (Rec[0*0] (fst r) r (lam j:0. lam q:0*0. <half (fst r), S (snd r)>)) "
     "(lam j:0. lam q:0*0. r)))"},
    {"shr", "lam c:0. lam a:0. Rec[0] a c (lam k:0. lam r:0. half r)"},
    // Sequence codes: snoc c a is the code of s*<a> when c codes s.
    {"snoc", "lam c:0. lam a:0. mul (exp2 a) (S (add c c))"},
    {"last", "lam c:0. v2 c"},
    {"init", "lam c:0. half (pred (shr c (v2 c)))"},
    // Rationals: qcode s p d stands for (-1)^sg(s) * p/(d+1).
    {"qcode", "lam s:0. lam p:0. lam d:0. snoc (snoc (snoc 0 s) p) d"},
    {"qden", "lam q:0. S (last q)"},
    {"qnum", "lam q:0. last (init q)"},
    {"qsgn", "lam q:0. sg (last (init (init q)))"},
    {"qle",
     "lam x:0. lam y:0. Rec[0] (qsgn x) "
     "(Rec[0] (qsgn y) (leq (mul (qnum x) (qden y)) (mul (qnum y) (qden x))) "
     "(lam k:0. lam r:0. mul (eqz (qnum x)) (eqz (qnum y)))) "
     "(lam k:0. lam r:0. Rec[0] (qsgn y) 1 "
     "(lam j:0. lam q:0. leq (mul (qnum y) (qden x)) (mul (qnum x) (qden y))))"},
};

Definitions build() {
  Definitions defs;
  for (const auto& [name, text] : kSource) defs.emplace(name, parse_term(text, &defs));
  return defs;
}

}  // namespace

const Definitions& prelude() {
  static const Definitions defs = build();
  return defs;
}

Term prelude_term(std::string_view name) {
  auto it = prelude().find(name);
  if (it == prelude().end()) throw std::out_of_range("unknown prelude term: " + std::string(name));
  return it->second;
}

}  // namespace nsak
