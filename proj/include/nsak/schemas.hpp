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

// The axiom schemas and named principles, their instantiation with side
// conditions, and a finite-model check for closed instances.
//
// Instances are built from positional arguments. Formula arguments mention
// the schema's displayed variables by their binder names (defaults listed in
// the catalog, overridable per instantiation). Remaining free variables are
// parameters: they must be typed in the instantiation context and are closed
// by plain universal quantifiers, except where the schema forbids them.

#ifndef NSAK_SCHEMAS_HPP_
#define NSAK_SCHEMAS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsak/checker.hpp"
#include "nsak/evaluator.hpp"
#include "nsak/syntax.hpp"

namespace nsak {

enum class SchemaId {
  ST_A, ST_B, ST_C, ST_D, IA_ST,
  mAC, R, I, IP, M, MAJ, E,
  MP, PF_TP_E, PF_TP_A, PI01_TRANS, E2_EXISTS, TJ_ST,
  ACA0, WT, FAN, WKL, UWKL, HBU_C, MUC, SE,
  CONT_C, BCT_C, WC_N, WC_N0, CCT_C, KS0, CT, QF_AC,
  SIMPLER, GAFOT, NEAR_STD,
};

struct SchemaInfo {
  SchemaId id;
  std::string name;
  std::string description;
  std::vector<std::string> side_conditions;
  std::vector<std::string> formula_params;
  std::vector<std::string> type_params;
  std::vector<std::string> term_params;
  std::vector<std::string> binders;  // default names of the displayed variables
  bool in_dg = false;                // part of the base system
  bool transfer = false;             // a fragment of Transfer
};

const std::vector<SchemaInfo>& catalog();
const SchemaInfo& schema_info(SchemaId id);
std::string to_string(SchemaId id);
// Accepts the catalog names; nullopt for anything else.
std::optional<SchemaId> parse_schema_id(std::string_view name);

struct Instantiation {
  SchemaId schema = SchemaId::MAJ;
  std::vector<Formula> formula_args;
  std::vector<Type> type_args;
  std::vector<Term> term_args;
  std::vector<std::string> binders;  // empty: catalog defaults
  Context context;                   // types of parameters
  bool relativized = false;          // return the ^st form
};

struct SchemaError : std::invalid_argument {
  SchemaError(std::string condition, std::string offending);
  std::string condition;
  std::string offending;
};

// The closed instance with monotone quantifiers expanded into <=*-guarded
// standard quantifiers. Relations such as =[T] and <=*[T] stay as sugar.
Formula instantiate(const Instantiation& inst);

// Builds an instantiation from `key=value` text, the form used by proof
// scripts and the command line. Keys are the catalog parameter names
// (formulas, types and terms) and binder names (`x=n` renames binder x);
// PF_TP_E and PF_TP_A take `vars=x:T, y:U`.
Instantiation instantiation_from_keys(SchemaId id, const std::map<std::string, std::string>& keys,
                                      const Context& context = {}, const Definitions* defs = nullptr);

//------------------------------------------------------------------------------
// Finite-model check

struct StMode {
  enum class Kind { All, Threshold } kind = Kind::All;
  std::uint32_t k = 0;
  static StMode all() { return {}; }
  static StMode threshold(std::uint32_t k) { return {Kind::Threshold, k}; }
};

struct ModelVerdict {
  enum class Status { Valid, Countermodel, Inconclusive } status = Status::Inconclusive;
  ModelEnv environment;  // falsifying choices along the outer universal spine
  std::uint64_t steps = 0;
  std::string detail;
};

// Classical truth of a closed formula over the full type structure on
// {0..B} with saturating successor. st holds of everything, or of the
// elements <=*-below the constant-k element. Each quantifier instance costs
// one step; running out of `budget` or enumerating a type beyond the model
// cap is inconclusive.
ModelVerdict model_check_instance(const Formula& f, std::uint32_t B, std::uint64_t budget,
                                  StMode st = StMode::all());

std::string to_string(ModelVerdict::Status s);

}  // namespace nsak

#endif  // NSAK_SCHEMAS_HPP_
