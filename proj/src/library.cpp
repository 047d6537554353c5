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

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "nsak/kernel.hpp"

#ifndef NSAK_LIBRARY_DIR
#define NSAK_LIBRARY_DIR "library"
#endif

namespace nsak {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> nd_files(const fs::path& dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".nd") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::set<std::string> cited_lemmas(const ProofScript& s) {
  std::set<std::string> out;
  for (const auto& step : s.steps) {
    auto w = words(step.justification);
    if (w.size() >= 2 && w[0] == "use") out.insert(w[1]);
  }
  return out;
}

}  // namespace

std::string default_library_dir() {
  if (const char* env = std::getenv("NSAK_LIBRARY"); env && *env) return env;
  return NSAK_LIBRARY_DIR;
}

std::vector<LibraryEntry> check_library(const std::string& dir) {
  std::vector<LibraryEntry> pending;
  std::vector<LibraryEntry> done;
  auto files = nd_files(fs::path(dir) / "lemmas");
  for (const auto& f : nd_files(dir)) files.push_back(f);
  for (const auto& path : files) {
    LibraryEntry e;
    try {
      e.script = load_script(path);
    } catch (const std::exception& ex) {
      e.script.name = fs::path(path).stem().string();
      e.script.path = path;
      e.result.failure = CheckFailure{0, "parse", ex.what()};
      done.push_back(std::move(e));
      continue;
    }
    pending.push_back(std::move(e));
  }

  // Check in dependency order; a script citing a lemma waits for it.
  LemmaTable lemmas;
  std::set<std::string> settled;
  while (!pending.empty()) {
    auto ready = std::find_if(pending.begin(), pending.end(), [&](const LibraryEntry& e) {
      for (const auto& n : cited_lemmas(e.script))
        if (!settled.count(n)) return false;
      return true;
    });
    if (ready == pending.end()) {
      // Unknown or cyclic citations: check what is left and let `use` fail.
      ready = pending.begin();
    }
    LibraryEntry e = std::move(*ready);
    pending.erase(ready);
    auto t0 = std::chrono::steady_clock::now();
    e.result = check_script(e.script, lemmas);
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.result.ok() && e.script.lemma) lemmas.emplace(e.script.name, *e.result.theorem);
    settled.insert(e.script.name);
    done.push_back(std::move(e));
  }

  std::stable_sort(done.begin(), done.end(), [](const LibraryEntry& a, const LibraryEntry& b) {
    if (a.script.lemma != b.script.lemma) return a.script.lemma;
    return a.script.name < b.script.name;
  });
  return done;
}

//------------------------------------------------------------------------------
// Mutations

namespace {

// Rules whose replacement takes the same argument shape.
const std::map<std::string, std::string>& swaps() {
  static const std::map<std::string, std::string> m = {
      {"mp", "and_i"},         {"and_i", "mp"},        {"and_e", "or_i"},     {"or_i", "and_e"},
      {"unfold", "eq_sym"},    {"eq_sym", "unfold"},   {"falsum_e", "unfold"}, {"forall_e", "exists_i"},
      {"exists_i", "forall_e"}, {"ind", "ia_st"},       {"ia_st", "ind"},      {"eq_subst", "mp"},
  };
  return m;
}

bool numeric(const std::string& w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string join_words(const std::vector<std::string>& w, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < w.size(); ++i) out += (out.empty() ? "" : " ") + w[i];
  return out;
}

}  // namespace

std::vector<Mutation> mutations(const ProofScript& script) {
  std::vector<Mutation> out;
  std::map<int, Formula> canon;
  for (const auto& s : script.steps) canon[s.index] = canonical(s.formula);

  for (const auto& step : script.steps) {
    auto w = words(step.justification);
    if (w.empty()) continue;
    const std::string& rule = w[0];
    auto add = [&](const std::string& kind, const std::string& text) {
      out.push_back(Mutation{step.index, kind, step.justification, text});
    };

    if (auto it = swaps().find(rule); it != swaps().end()) {
      auto m = w;
      m[0] = it->second;
      add("rule", join_words(m));
    }

    // First cited step replaced by the nearest earlier step saying something else.
    if (w.size() >= 2 && numeric(w[1]) && rule != "use" && rule != "eval_leaf") {
      int ref = std::stoi(w[1]);
      if (canon.count(ref))
        for (int k = step.index - 1; k >= 1; --k) {
          if (k == ref || !canon.count(k) || alpha_equal(canon[k], canon[ref])) continue;
          auto m = w;
          m[1] = std::to_string(k);
          add("reference", join_words(m));
          break;
        }
    }

    // Witness perturbed to its successor, where the variable actually occurs.
    if ((rule == "forall_e" || rule == "exists_i") && w.size() >= 3 && numeric(w[1])) {
      int ref = std::stoi(w[1]);
      const Formula& q = rule == "forall_e" ? canon[ref] : canon[step.index];
      std::string t = join_words(w, 2);
      if (q && (q->kind == FormKind::Forall || q->kind == FormKind::Exists) &&
          q->type->kind == TypeKind::Base && free_vars(q->a).count(q->var)) {
        // Skip equivalent mutants: instances that normalize to the same formula.
        try {
          Term orig = parse_term(t, &script.defs);
          Formula a = canonical(substitute(q->a, q->var, orig));
          Formula b = canonical(substitute(q->a, q->var, succ(orig)));
          if (!alpha_equal(a, b)) add("term", rule + " " + w[1] + " S (" + t + ")");
        } catch (const std::exception&) {
        }
      }
    }

    if (rule == "axiom" && w.size() >= 2) {
      for (const auto& info : catalog()) {
        if (script.theory.count(TheoryEntry{info.id, false})) continue;
        auto m = w;
        m[1] = to_string(info.id);
        add("axiom", join_words(m));
        break;
      }
    }
  }
  return out;
}

ProofScript apply_mutation(const ProofScript& script, const Mutation& m) {
  ProofScript s = script;
  for (auto& step : s.steps)
    if (step.index == m.step) step.justification = m.mutated;
  return s;
}

}  // namespace nsak
