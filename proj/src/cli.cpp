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

#include "nsak/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "nsak/checker.hpp"
#include "nsak/evaluator.hpp"
#include "nsak/kernel.hpp"
#include "nsak/majorizability.hpp"
#include "nsak/prelude.hpp"
#include "nsak/schemas.hpp"

namespace nsak {

void Reporter::emit(const std::string& kind, const Fields& fields, const std::string& human) {
  if (format_ == OutputFormat::Human) {
    out_ << human << '\n';
    return;
  }
  out_ << "record=" << kind;
  for (const auto& [k, v] : fields) {
    out_ << ' ' << k << '=';
    if (v.find_first_of(" \t\"") != std::string::npos || v.empty())
      out_ << std::quoted(v);
    else
      out_ << v;
  }
  out_ << '\n';
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A file name or, failing that, the text itself.
std::string file_or_text(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) {
    std::string s = read_file(arg);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  }
  return arg;
}

Context parse_vars(const std::vector<std::string>& items) {
  Context ctx;
  for (const auto& item : items) {
    auto c = item.find(':');
    if (c == std::string::npos) throw std::invalid_argument("--var needs name:type, got " + item);
    ctx[item.substr(0, c)] = parse_type(item.substr(c + 1));
  }
  return ctx;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

struct Cli {
  RunConfig cfg;
  std::string format = "human";
  std::ostream& out;
  std::ostream& err;

  Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  // parse
  std::string parse_input;
  bool parse_term_flag = false;
  bool parse_type_flag = false;
  std::vector<std::string> vars;

  // check / prove
  std::vector<std::string> check_files;
  std::string library;
  std::string prove_dir;
  bool prove_mutations = false;

  // eval
  std::string eval_input;
  bool eval_leaf_flag = false;

  // maj
  std::string maj_type = "0->0";
  std::string maj_property;
  std::string maj_majorant;
  bool maj_suite = false;

  // axiom
  std::string axiom_id;
  std::string axiom_phi, axiom_psi, axiom_type, axiom_type2;
  std::vector<std::string> axiom_keys;
  bool axiom_st = false;
  bool axiom_raw = false;

  // model
  std::string model_input;
  std::uint64_t model_budget = 2000000;
  int model_threshold = -1;

  // demo
  std::string demo_name;

  Reporter rep() { return Reporter(out, cfg.format); }

  int do_parse() {
    Reporter r = rep();
    std::string text = file_or_text(parse_input);
    Context ctx = parse_vars(vars);
    Definitions defs = prelude();
    if (parse_type_flag) {
      Type t = parse_type(text);
      r.emit("parse", {{"kind", "type"}, {"printed", print(t)}, {"level", std::to_string(type_level(t))}},
             print(t) + "    level " + std::to_string(type_level(t)));
    } else if (parse_term_flag) {
      Term t = parse_term(text, &defs);
      Type ty = infer_type(t, ctx);
      r.emit("parse", {{"kind", "term"}, {"printed", print(t)}, {"type", print(ty)}},
             print(t) + " : " + print(ty));
    } else {
      Formula f = parse_formula(text, &defs);
      check_formula(f, ctx);
      r.emit("parse", {{"kind", "formula"}, {"printed", print(f)}, {"internal", yes(is_internal(f))}},
             print(f) + "\n  internal: " + yes(is_internal(f)));
    }
    return 0;
  }

  LemmaTable library_lemmas(const std::string& dir) {
    LemmaTable t;
    for (const auto& e : check_library(dir))
      if (e.script.lemma && e.result.ok()) t.emplace(e.script.name, *e.result.theorem);
    return t;
  }

  int do_check() {
    Reporter r = rep();
    LemmaTable lemmas = library_lemmas(library.empty() ? default_library_dir() : library);
    int status = 0;
    for (const auto& path : check_files) {
      ProofScript s;
      try {
        s = load_script(path);
      } catch (const std::exception& e) {
        r.emit("check", {{"script", path}, {"verdict", "FAIL"}, {"reason", e.what()}},
               "FAIL " + path + ": " + e.what());
        status = 1;
        continue;
      }
      CheckResult res = check_script(s, lemmas);
      if (res.ok()) {
        std::string th;
        for (const auto& e : res.theorem->theory_used) th += (th.empty() ? "" : ",") + to_string(e);
        r.emit("check",
               {{"script", s.name},
                {"verdict", "PASS"},
                {"steps", std::to_string(s.steps.size())},
                {"theory", th},
                {"conclusion", print(fold_definitions(res.theorem->sequent.conclusion, s.defs))}},
               "PASS " + s.name + "  " + print(fold_definitions(res.theorem->sequent.conclusion, s.defs)) +
                   "\n  theory used: " + (th.empty() ? "(logic only)" : th));
      } else {
        r.emit("check", {{"script", s.name}, {"verdict", "FAIL"}, {"reason", res.failure->describe()}},
               "FAIL " + s.name + ": " + res.failure->describe());
        status = 1;
      }
    }
    return status;
  }

  int do_prove() {
    Reporter r = rep();
    std::string dir = prove_dir.empty() ? default_library_dir() : prove_dir;
    auto t0 = std::chrono::steady_clock::now();
    auto entries = check_library(dir);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int status = 0;
    std::size_t lemma_total = 0, lemma_ok = 0;
    LemmaTable lemmas;
    for (const auto& e : entries) {
      if (e.script.lemma) {
        ++lemma_total;
        if (e.result.ok()) {
          ++lemma_ok;
          lemmas.emplace(e.script.name, *e.result.theorem);
        } else {
          r.emit("lemma", {{"script", e.script.name}, {"verdict", "FAIL"}, {"reason", e.result.failure->describe()}},
                 "FAIL lemma " + e.script.name + ": " + e.result.failure->describe());
          status = 1;
        }
        continue;
      }
      if (e.result.ok()) {
        std::string th;
        for (const auto& t : e.result.theorem->theory_used) th += (th.empty() ? "" : ",") + to_string(t);
        std::string concl = print(fold_definitions(e.result.theorem->sequent.conclusion, e.script.defs));
        r.emit("prove", {{"script", e.script.name}, {"verdict", "PASS"}, {"theory", th}, {"conclusion", concl}},
               "PASS " + e.script.name + "  [" + th + "]  " + concl);
      } else {
        r.emit("prove", {{"script", e.script.name}, {"verdict", "FAIL"}, {"reason", e.result.failure->describe()}},
               "FAIL " + e.script.name + ": " + e.result.failure->describe());
        status = 1;
      }
    }
    std::ostringstream h;
    h << "lemmas: " << lemma_ok << "/" << lemma_total << " checked";
    if (cfg.format == OutputFormat::Human) h << "  (" << std::fixed << std::setprecision(2) << secs << " s total)";
    r.emit("lemmas", {{"checked", std::to_string(lemma_ok)}, {"total", std::to_string(lemma_total)}}, h.str());

    if (prove_mutations) {
      std::size_t total = 0, rejected = 0;
      for (const auto& e : entries) {
        if (e.script.lemma || !e.result.ok()) continue;
        for (const auto& m : mutations(e.script)) {
          ++total;
          bool rej = !check_script(apply_mutation(e.script, m), lemmas).ok();
          if (rej) ++rejected;
          else status = 1;
          r.emit("mutation",
                 {{"script", e.script.name},
                  {"step", std::to_string(m.step)},
                  {"kind", m.kind},
                  {"mutated", m.mutated},
                  {"verdict", rej ? "REJECTED" : "ACCEPTED"}},
                 std::string(rej ? "rejected " : "ACCEPTED ") + e.script.name + " step " + std::to_string(m.step) +
                     " [" + m.kind + "] " + m.mutated);
        }
      }
      r.emit("mutations", {{"rejected", std::to_string(rejected)}, {"total", std::to_string(total)}},
             "mutations rejected: " + std::to_string(rejected) + "/" + std::to_string(total));
    }
    return status;
  }

  int do_eval() {
    Reporter r = rep();
    std::string text = file_or_text(eval_input);
    Definitions defs = prelude();
    if (eval_leaf_flag) {
      Formula f = parse_formula(text, &defs);
      bool v = eval_leaf(f, cfg.fuel);
      r.emit("eval", {{"formula", print(f)}, {"value", v ? "true" : "false"}}, v ? "true" : "false");
      return 0;
    }
    Term t = parse_term(text, &defs);
    Type ty = infer_type(t);
    Term n = normalize(t, cfg.fuel);
    r.emit("eval", {{"type", print(ty)}, {"normal", print(n)}}, print(n) + " : " + print(ty));
    return 0;
  }

  int do_maj() {
    Reporter r = rep();
    int status = 0;
    if (!maj_majorant.empty()) {
      Definitions defs = prelude();
      Term t = parse_term(file_or_text(maj_majorant), &defs);
      Term m = majorant(t);
      bool ok = certify_majorant(t, cfg.B);
      r.emit("majorant", {{"term", print(t)}, {"majorant", print(m)}, {"certified", ok ? "PASS" : "FAIL"}},
             print(m) + "\n  certificate up to B=" + std::to_string(cfg.B) + ": " + (ok ? "PASS" : "FAIL"));
      return ok ? 0 : 1;
    }
    std::vector<SuiteResult> results;
    if (maj_suite) {
      std::vector<std::uint32_t> Bs;
      for (std::uint32_t b = 1; b <= cfg.B; ++b) Bs.push_back(b);
      results = run_model_suite(Bs, cfg.seed);
    } else {
      if (maj_property.empty()) throw CLI::ValidationError("maj", "give --exhaustive PROPERTY, --suite or --majorant");
      results.push_back(run_property(maj_property, parse_type(maj_type), cfg.B, cfg.seed, cfg.samples * 20));
    }
    for (const auto& s : results) {
      if (!s.ok) status = 1;
      r.emit("maj",
             {{"property", s.property},
              {"type", s.type},
              {"B", std::to_string(s.B)},
              {"mode", s.mode},
              {"checked", std::to_string(s.checked)},
              {"verdict", s.ok ? "PASS" : "FAIL"},
              {"detail", s.detail}},
             std::string(s.ok ? "PASS " : "FAIL ") + s.property + " at " + s.type + ", B=" + std::to_string(s.B) +
                 " (" + s.mode + ", " + std::to_string(s.checked) + " checked)" +
                 (s.detail.empty() ? "" : ": " + s.detail));
    }
    return status;
  }

  int do_axiom_list() {
    Reporter r = rep();
    for (const auto& info : catalog())
      r.emit("axiom", {{"id", to_string(info.id)}, {"in_dg", yes(info.in_dg)}, {"transfer", yes(info.transfer)}},
             to_string(info.id) + (info.in_dg ? "  [DG]" : "") + (info.transfer ? "  [transfer]" : "") + "  " +
                 info.description);
    return 0;
  }

  int do_axiom_inst() {
    Reporter r = rep();
    auto id = parse_schema_id(axiom_id);
    if (!id) throw CLI::ValidationError("axiom inst", "unknown schema " + axiom_id);
    // --phi/--psi and --type/--type2 fill the schema's parameters in catalog order.
    const SchemaInfo& info = schema_info(*id);
    std::map<std::string, std::string> keys;
    auto positional = [&](const std::string& value, const std::vector<std::string>& params, std::size_t i,
                          const char* flag) {
      if (value.empty()) return;
      if (i >= params.size()) throw CLI::ValidationError(flag, axiom_id + " has no such parameter");
      keys[params[i]] = value;
    };
    positional(axiom_phi.empty() ? "" : file_or_text(axiom_phi), info.formula_params, 0, "--phi");
    positional(axiom_psi.empty() ? "" : file_or_text(axiom_psi), info.formula_params, 1, "--psi");
    positional(axiom_type, info.type_params, 0, "--type");
    positional(axiom_type2, info.type_params, 1, "--type2");
    for (const auto& kv : axiom_keys) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--key", "expected key=value, got " + kv);
      keys[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    Definitions defs = prelude();
    Instantiation in = instantiation_from_keys(*id, keys, parse_vars(vars), &defs);
    in.relativized = axiom_st;
    Formula f = instantiate(in);
    std::string shown = print(axiom_raw ? f : fold_definitions(f, defs));
    r.emit("axiom", {{"id", to_string(*id) + (axiom_st ? "^st" : "")}, {"formula", shown}}, shown);
    return 0;
  }

  int do_model() {
    Reporter r = rep();
    Definitions defs = prelude();
    Formula f = parse_formula(file_or_text(model_input), &defs);
    StMode mode = model_threshold < 0 ? StMode::all() : StMode::threshold(static_cast<std::uint32_t>(model_threshold));
    ModelVerdict v = model_check_instance(f, cfg.B, model_budget, mode);
    r.emit("model",
           {{"B", std::to_string(cfg.B)},
            {"status", to_string(v.status)},
            {"steps", std::to_string(v.steps)},
            {"detail", v.detail}},
           to_string(v.status) + " at B=" + std::to_string(cfg.B) + " after " + std::to_string(v.steps) + " steps" +
               (v.detail.empty() ? "" : "\n  " + v.detail));
    return v.status == ModelVerdict::Status::Countermodel ? 1 : 0;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli c(out, err);
  CLI::App app{"nsak: kernel and lab for nonstandard arithmetic in all finite types"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--fuel", c.cfg.fuel, "evaluator fuel (reduction steps)")->envname("NSAK_FUEL");
  app.add_option("--B", c.cfg.B, "finite-model bound")->envname("NSAK_B");
  app.add_option("--N", c.cfg.N, "scale parameter standing in for a nonstandard number")->envname("NSAK_N");
  app.add_option("--samples", c.cfg.samples, "sample count for randomized checks")->envname("NSAK_SAMPLES");
  app.add_option("--seed", c.cfg.seed, "seed for every randomized check")->envname("NSAK_SEED");
  app.add_option("--cap-exp", c.cfg.cap_exp, "exponent cap for 2^N guard indices")->envname("NSAK_CAP_EXP");
  app.add_option("--format", c.format, "human or line-record")
      ->envname("NSAK_FORMAT")
      ->check(CLI::IsMember({"human", "line-record"}));

  auto* parse = app.add_subcommand("parse", "parse and type-check a formula, term or type");
  parse->add_option("input", c.parse_input, "text or file")->required();
  parse->add_flag("--term", c.parse_term_flag, "input is a term");
  parse->add_flag("--type", c.parse_type_flag, "input is a type");
  parse->add_option("--var", c.vars, "free variable name:type");

  auto* check = app.add_subcommand("check", "check proof scripts");
  check->add_option("files", c.check_files, "script files")->required();
  check->add_option("--library", c.library, "library whose lemmas may be cited")->envname("NSAK_LIBRARY");

  auto* eval = app.add_subcommand("eval", "normalize a closed term or decide a leaf formula");
  eval->add_option("input", c.eval_input, "text or file")->required();
  eval->add_flag("--leaf", c.eval_leaf_flag, "input is a bounded formula; --fuel is the leaf budget");

  auto* maj = app.add_subcommand("maj", "majorizability in the finite model");
  maj->add_option("--type", c.maj_type, "type to check");
  maj->add_option("--exhaustive", c.maj_property,
                  "reflexivity-iff-monotone, majorized-implies-monotone, maj or transitivity");
  maj->add_flag("--suite", c.maj_suite, "every property at every suite type, B = 1..--B");
  maj->add_option("--majorant", c.maj_majorant, "print and certify the majorant of a closed term");

  auto* axiom = app.add_subcommand("axiom", "the schema catalog");
  axiom->require_subcommand(1);
  axiom->add_subcommand("list", "list schemas");
  auto* inst = axiom->add_subcommand("inst", "instantiate a schema");
  inst->add_option("id", c.axiom_id, "schema name")->required();
  inst->add_option("--phi", c.axiom_phi, "formula parameter (text or file)");
  inst->add_option("--psi", c.axiom_psi, "second formula parameter");
  inst->add_option("--type", c.axiom_type, "type parameter");
  inst->add_option("--type2", c.axiom_type2, "second type parameter");
  inst->add_option("--key", c.axiom_keys, "further parameter key=value");
  inst->add_option("--var", c.vars, "parameter name:type");
  inst->add_flag("--st", c.axiom_st, "relativized form");
  inst->add_flag("--raw", c.axiom_raw, "do not fold prelude names");

  auto* prove = app.add_subcommand("prove", "check a proof library");
  prove->add_option("dir", c.prove_dir, "library directory");
  prove->add_flag("--mutations", c.prove_mutations, "also run the mutation suite on the theorems");

  auto* demo = app.add_subcommand("demo", "run a witness construction and report its bounds");
  std::string names;
  for (const auto& n : demo_names()) names += (names.empty() ? "" : ", ") + n;
  demo->add_option("name", c.demo_name, names)->required()->check(CLI::IsMember(demo_names()));

  auto* model = app.add_subcommand("model", "truth of a closed formula in the finite model");
  model->add_option("input", c.model_input, "formula text or file")->required();
  model->add_option("--budget", c.model_budget, "quantifier-instance budget");
  model->add_option("--threshold", c.model_threshold, "st holds below the constant-k element");

  app.add_subcommand("selftest", "deterministic battery of every property check");

  std::vector<std::string> argv_store = {"nsak"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  c.cfg.format = c.format == "line-record" ? OutputFormat::LineRecord : OutputFormat::Human;

  try {
    if (parse->parsed()) return c.do_parse();
    if (check->parsed()) return c.do_check();
    if (eval->parsed()) return c.do_eval();
    if (maj->parsed()) return c.do_maj();
    if (axiom->parsed()) return inst->parsed() ? c.do_axiom_inst() : c.do_axiom_list();
    if (prove->parsed()) return c.do_prove();
    if (model->parsed()) return c.do_model();
    Reporter r(out, c.cfg.format);
    if (demo->parsed()) return run_demo(c.demo_name, c.cfg, r);
    return run_selftest(c.cfg, r);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nsak
