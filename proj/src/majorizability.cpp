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

#include "nsak/majorizability.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <tuple>

#include "nsak/prelude.hpp"

namespace nsak {
namespace {

// Domains larger than this are not tabulated.
constexpr std::uint64_t kMaxDomain = 4096;

struct DomainRelation {
  const std::vector<ModelElement>* elements;
  std::vector<std::uint8_t> leq;  // leq[v * n + u] == (v <=* u)
  std::size_t n;
};

std::shared_ptr<const DomainRelation> domain_relation(const Type& type, std::uint32_t B, Clause clause);

bool leq_impl(const ModelElement& x, const ModelElement& y, const Type& type, std::uint32_t B, Clause clause) {
  switch (type->kind) {
    case TypeKind::Base:
      return x.nat <= y.nat;
    case TypeKind::Product:
      return leq_impl(x.items[0], y.items[0], type->left, B, clause) &&
             leq_impl(x.items[1], y.items[1], type->right, B, clause);
    case TypeKind::Arrow: {
      auto rel = domain_relation(type->left, B, clause);
      std::size_t n = rel->n;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if (!rel->leq[v * n + u]) continue;
          if (clause == Clause::Standard) {
            if (!leq_impl(y.items[v], y.items[u], type->right, B, clause)) return false;
            if (!leq_impl(x.items[v], y.items[u], type->right, B, clause)) return false;
          } else {
            if (!leq_impl(y.items[u], y.items[v], type->right, B, clause)) return false;
            if (!leq_impl(x.items[u], y.items[v], type->right, B, clause)) return false;
          }
        }
      }
      return true;
    }
  }
  return false;
}

std::shared_ptr<const DomainRelation> domain_relation(const Type& type, std::uint32_t B, Clause clause) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::uint32_t, int>, std::shared_ptr<const DomainRelation>> cache;
  auto key = std::make_tuple(print(type), B, static_cast<int>(clause));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (model_size(type, B) > kMaxDomain)
    throw ModelTooLarge("domain " + print(type) + " at B=" + std::to_string(B) + " is too large to tabulate");
  auto rel = std::make_shared<DomainRelation>();
  rel->elements = &enumerate_model(type, B);
  rel->n = rel->elements->size();
  rel->leq.assign(rel->n * rel->n, 0);
  for (std::size_t v = 0; v < rel->n; ++v)
    for (std::size_t u = 0; u < rel->n; ++u)
      rel->leq[v * rel->n + u] = leq_impl((*rel->elements)[v], (*rel->elements)[u], type, B, clause);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, rel).first->second;
}

}  // namespace

bool leq_star_model(const ModelElement& x, const ModelElement& y, const Type& type, std::uint32_t B, Clause clause) {
  return leq_impl(x, y, type, B, clause);
}

bool is_monotone_model(const ModelElement& x, const Type& type, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base:
      return true;
    case TypeKind::Product:
      return is_monotone_model(x.items[0], type->left, B) && is_monotone_model(x.items[1], type->right, B);
    case TypeKind::Arrow:
      return !monotonicity_violation(x, type, B).has_value();
  }
  return false;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> monotonicity_violation(const ModelElement& y,
                                                                              const Type& type,
                                                                              std::uint32_t B) {
  if (type->kind != TypeKind::Arrow) return std::nullopt;
  auto rel = domain_relation(type->left, B, Clause::Standard);
  std::size_t n = rel->n;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (rel->leq[v * n + u] && !leq_impl(y.items[v], y.items[u], type->right, B, Clause::Standard))
        return std::make_pair(static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v));
  return std::nullopt;
}

ModelElement top_element(const Type& type, std::uint32_t B) { return constant_element(type, B, B); }

ModelElement constant_element(const Type& type, std::uint32_t value, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base:
      return ModelElement::number(std::min(value, B));
    case TypeKind::Product:
      return ModelElement::pair(constant_element(type->left, value, B), constant_element(type->right, value, B));
    case TypeKind::Arrow:
      return ModelElement::table(
          std::vector<ModelElement>(model_size(type->left, B), constant_element(type->right, value, B)));
  }
  return {};
}

//------------------------------------------------------------------------------
// Sampling

std::string MajVerdict::describe() const {
  std::ostringstream os;
  auto list = [&](const std::vector<std::uint64_t>& xs) {
    os << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    os << "]";
  };
  switch (status) {
    case Status::Holds:
      os << "holds";
      break;
    case Status::Fails:
      os << "fails u=";
      if (u.size() == 1) os << u[0]; else list(u);
      os << " v=";
      if (v.size() == 1) os << v[0]; else list(v);
      break;
    case Status::HoldsOnSamples:
      os << "holds_on_samples count=" << count;
      break;
  }
  return os.str();
}

namespace {

Oracle from_prefix(std::vector<std::uint64_t> prefix) {
  return [prefix = std::move(prefix)](std::uint64_t n) {
    return n < prefix.size() ? prefix[n] : prefix.back();
  };
}

}  // namespace

MajVerdict leq_star_sampled(const SampleObject& x, const SampleObject& y, const Type& type, std::uint64_t n_samples,
                            std::uint64_t seed) {
  MajVerdict verdict;
  if (type->kind == TypeKind::Base) {
    std::uint64_t a = std::get<std::uint64_t>(x), b = std::get<std::uint64_t>(y);
    verdict.status = a <= b ? MajVerdict::Status::Holds : MajVerdict::Status::Fails;
    verdict.count = 1;
    return verdict;
  }
  std::mt19937_64 rng(seed);
  if (type_equal(type, type1())) {
    const Oracle& fx = std::get<Oracle>(x);
    const Oracle& fy = std::get<Oracle>(y);
    auto test = [&](std::uint64_t u, std::uint64_t v) {
      ++verdict.count;
      if (fy(v) <= fy(u) && fx(v) <= fy(u)) return true;
      verdict.status = MajVerdict::Status::Fails;
      verdict.u = {u};
      verdict.v = {v};
      return false;
    };
    std::uint64_t budget = n_samples / 2;
    for (std::uint64_t u = 0; verdict.count < budget; ++u)
      for (std::uint64_t v = 0; v <= u && verdict.count < budget; ++v)
        if (!test(u, v)) return verdict;
    std::uniform_int_distribution<std::uint64_t> big(0, 1u << 16);
    while (verdict.count < n_samples) {
      std::uint64_t u = big(rng);
      std::uint64_t v = std::uniform_int_distribution<std::uint64_t>(0, u)(rng);
      if (!test(u, v)) return verdict;
    }
    return verdict;
  }
  if (type_equal(type, type2())) {
    const Functional& gx = std::get<Functional>(x);
    const Functional& gy = std::get<Functional>(y);
    constexpr std::size_t kLen = 8;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
      std::vector<std::uint64_t> pu(kLen), pv(kLen);
      if (i < 4) {
        pu.assign(kLen, i);
        pv.assign(kLen, i == 0 ? 0 : i - 1);
      } else {
        std::uint64_t level = 0;
        for (std::size_t k = 0; k < kLen; ++k) {
          level += std::uniform_int_distribution<std::uint64_t>(0, 3)(rng);
          pu[k] = level;
          pv[k] = std::uniform_int_distribution<std::uint64_t>(0, level)(rng);
        }
      }
      Oracle u = from_prefix(pu), v = from_prefix(pv);
      ++verdict.count;
      std::uint64_t yu = gy(u);
      if (!(gy(v) <= yu && gx(v) <= yu)) {
        verdict.status = MajVerdict::Status::Fails;
        verdict.u = pu;
        verdict.v = pv;
        return verdict;
      }
    }
    return verdict;
  }
  throw std::invalid_argument("sampled majorizability supports types 0, 0->0 and (0->0)->0 only");
}

//------------------------------------------------------------------------------
// Majorants

Term max_term(const Type& type) {
  switch (type->kind) {
    case TypeKind::Base:
      return prelude_term("max0");
    case TypeKind::Arrow:
      return lam("a", type, lam("b", type, lam("z", type->left,
                 app(max_term(type->right), {app(var("a"), var("z")), app(var("b"), var("z"))}))));
    case TypeKind::Product: {
      Term l = app(max_term(type->left), {app(fst_const(), var("a")), app(fst_const(), var("b"))});
      Term r = app(max_term(type->right), {app(snd_const(), var("a")), app(snd_const(), var("b"))});
      return lam("a", type, lam("b", type, pair(l, r)));
    }
  }
  return nullptr;
}

Term majorant(const Term& t) {
  switch (t->kind) {
    case TermKind::Lam:
      return lam(t->name, t->type, majorant(t->a));
    case TermKind::App:
      return app(majorant(t->a), majorant(t->b));
    case TermKind::Pair:
      return pair(majorant(t->a), majorant(t->b));
    case TermKind::Rec: {
      const Type& r = t->type;
      Type step = arrow(base_type(), arrow(r, r));
      Term bumped = lam("k", base_type(), lam("r", r,
                        app(max_term(r), {var("r"), app(var("s"), {var("k"), var("r")})})));
      return lam("n", base_type(), lam("b", r, lam("s", step, app(rec(r), {var("n"), var("b"), bumped}))));
    }
    default:
      return t;
  }
}

bool certify_majorant(const Term& t, std::uint32_t B_max) {
  Type type = infer_type(t);
  Term star = majorant(t);
  if (!type_equal(infer_type(star), type)) return false;
  int checked = 0;
  for (std::uint32_t B = 1; B <= B_max; ++B) {
    try {
      ModelElement a = eval_finite_model(t, B);
      ModelElement b = eval_finite_model(star, B);
      if (!leq_star_model(a, b, type, B) || !is_monotone_model(b, type, B)) return false;
      ++checked;
    } catch (const ModelTooLarge&) {
      continue;
    }
  }
  return checked > 0;
}

//------------------------------------------------------------------------------
// Suite

std::vector<Type> suite_types() {
  Type o = base_type();
  Type oo = product(o, o);
  return {o, type1(), arrow(o, type1()), type2(), oo, arrow(oo, o), arrow(o, oo)};
}

namespace {

// Elements to inspect: everything when the model fits, else constants, the
// top element and a seeded uniform sample.
std::vector<ModelElement> population(const Type& type, std::uint32_t B, std::uint64_t seed, std::uint64_t samples,
                                     bool& sampled) {
  std::uint64_t size = model_size(type, B);
  if (size <= default_model_cap()) {
    sampled = false;
    return enumerate_model(type, B);
  }
  sampled = true;
  std::vector<ModelElement> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
  for (std::uint32_t c = 0; c <= B; ++c) {
    // Constant elements: every leaf equal to c.
    std::function<ModelElement(const Type&)> constant = [&](const Type& t) -> ModelElement {
      switch (t->kind) {
        case TypeKind::Base: return ModelElement::number(c);
        case TypeKind::Product: return ModelElement::pair(constant(t->left), constant(t->right));
        case TypeKind::Arrow:
          return ModelElement::table(std::vector<ModelElement>(model_size(t->left, B), constant(t->right)));
      }
      return {};
    };
    out.push_back(constant(type));
  }
  while (out.size() < samples) out.push_back(model_element(pick(rng), type, B));
  return out;
}

// Refutes x <=* y for all x, or returns false when y is monotone.
bool refutes_everything(const ModelElement& y, const Type& type, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base:
      return false;
    case TypeKind::Product:
      return refutes_everything(y.items[0], type->left, B) || refutes_everything(y.items[1], type->right, B);
    case TypeKind::Arrow: {
      auto hit = monotonicity_violation(y, type, B);
      if (!hit) return false;
      // Re-check the certificate against the definition.
      auto rel = domain_relation(type->left, B, Clause::Standard);
      std::size_t n = rel->n;
      return rel->leq[hit->second * n + hit->first] &&
             !leq_star_model(y.items[hit->second], y.items[hit->first], type->right, B);
    }
  }
  return false;
}

}  // namespace

SuiteResult run_property(const std::string& property, const Type& type, std::uint32_t B, std::uint64_t seed,
                         std::uint64_t samples) {
  SuiteResult r;
  r.property = property;
  r.type = print(type);
  r.B = B;
  bool sampled = false;
  std::vector<ModelElement> elems = population(type, B, seed, samples, sampled);
  r.mode = sampled ? "sampled" : "exhaustive";
  auto fail = [&](const std::string& what) {
    r.ok = false;
    r.detail = what;
  };
  if (property == "reflexivity-iff-monotone") {
    for (const auto& x : elems) {
      ++r.checked;
      if (leq_star_model(x, x, type, B) != is_monotone_model(x, type, B)) return fail("at " + print(x)), r;
    }
  } else if (property == "maj") {
    ModelElement top = top_element(type, B);
    for (const auto& x : elems) {
      ++r.checked;
      if (!leq_star_model(x, top, type, B)) return fail("no majorant for " + print(x)), r;
    }
  } else if (property == "majorized-implies-monotone") {
    constexpr std::uint64_t kPairCap = 1u << 22;
    if (!sampled && elems.size() * elems.size() <= kPairCap) {
      for (const auto& y : elems) {
        bool mono = is_monotone_model(y, type, B);
        for (const auto& x : elems) {
          ++r.checked;
          if (!mono && leq_star_model(x, y, type, B)) return fail(print(x) + " <=* non-monotone " + print(y)), r;
        }
      }
    } else {
      if (!sampled) r.mode = "certificate";
      for (const auto& y : elems) {
        ++r.checked;
        if (!is_monotone_model(y, type, B) && !refutes_everything(y, type, B))
          return fail("no refutation certificate for " + print(y)), r;
      }
    }
  } else if (property == "transitivity") {
    std::uint64_t n = elems.size();
    std::mt19937_64 rng(seed);
    bool exhaustive = !sampled && n * n * n <= (1u << 24);
    if (!exhaustive) r.mode = "sampled";
    std::uint64_t trials = exhaustive ? n * n * n : std::min<std::uint64_t>(samples, 200000);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t i = 0; i < trials; ++i) {
      std::uint64_t a = exhaustive ? i / (n * n) : pick(rng);
      std::uint64_t b = exhaustive ? (i / n) % n : pick(rng);
      std::uint64_t c = exhaustive ? i % n : pick(rng);
      ++r.checked;
      if (leq_star_model(elems[a], elems[b], type, B) && leq_star_model(elems[b], elems[c], type, B) &&
          !leq_star_model(elems[a], elems[c], type, B))
        return fail("not transitive at " + print(elems[a]) + ", " + print(elems[b]) + ", " + print(elems[c])), r;
    }
  } else {
    throw std::invalid_argument("unknown property '" + property + "'");
  }
  return r;
}

std::vector<SuiteResult> run_model_suite(const std::vector<std::uint32_t>& Bs, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (std::uint32_t B : Bs)
    for (const Type& t : suite_types())
      for (const char* p : {"reflexivity-iff-monotone", "majorized-implies-monotone", "maj"})
        out.push_back(run_property(p, t, B, seed));
  return out;
}

}  // namespace nsak
