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

// Closed T terms used throughout: arithmetic, comparisons and the helpers
// the proof library refers to by name.
//
//   lt a b   = 1 if a < b else 0
//   sg x     = 0 if x = 0 else 1
//   eqz x    = 1 if x = 0 else 0
//   bin f k  = sg (f k)
//   bar f m  = code of <f 0, ..., f (m-1)>
//   qcode s p d = code of the rational (-1)^sg(s) * p/(d+1); qle compares two

#ifndef NSAK_PRELUDE_HPP_
#define NSAK_PRELUDE_HPP_

#include <string_view>

#include "nsak/syntax.hpp"

namespace nsak {

const Definitions& prelude();
Term prelude_term(std::string_view name);

}  // namespace nsak

#endif  // NSAK_PRELUDE_HPP_
