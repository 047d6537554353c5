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

#include "nsak/evaluator.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "nsak/checker.hpp"

namespace nsak {

FuelExhausted::FuelExhausted(std::uint64_t steps_)
    : EvalError("fuel exhausted after " + std::to_string(steps_) + " steps"), steps(steps_) {}

namespace {

std::uint64_t env_number(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) return fallback;
  return v;
}

}  // namespace

std::uint64_t default_fuel() { return env_number("NSAK_FUEL", 1000000); }
std::uint64_t default_model_cap() { return env_number("NSAK_MODEL_CAP", 1u << 20); }

//------------------------------------------------------------------------------
// Symbolic reduction

namespace {

class Reducer {
 public:
  explicit Reducer(std::uint64_t fuel) : fuel_(fuel) {}

  Term nf(const Term& t) {
    Term w = whnf(t);
    std::vector<Term> args;
    Term head = spine(w, args);
    switch (head->kind) {
      case TermKind::Lam:
        head = lam(head->name, head->type, nf(head->a));
        break;
      case TermKind::Pair:
        head = pair(nf(head->a), nf(head->b));
        break;
      default:
        break;
    }
    for (auto& a : args) head = app(head, nf(a));
    return head;
  }

  Term whnf(Term t) {
    while (true) {
      std::vector<Term> args;
      Term head = spine(t, args);
      Term next;
      switch (head->kind) {
        case TermKind::Lam:
          if (args.empty()) return t;
          tick();
          next = rebuild(substitute(head->a, head->name, args[0]), args, 1);
          break;
        case TermKind::Rec: {
          if (args.size() < 3) return t;
          Term n = whnf(args[0]);
          Term pred;
          if (n->kind == TermKind::Zero) {
            tick();
            next = rebuild(args[1], args, 3);
            break;
          }
          if (n->kind == TermKind::Num) {
            pred = numeral(n->num - 1);
          } else if (n->kind == TermKind::App && n->a->kind == TermKind::Succ) {
            pred = n->b;
          } else {
            args[0] = n;
            return rebuild(head, args, 0);
          }
          tick();
          Term inner = app(app(app(head, pred), args[1]), args[2]);
          next = rebuild(app(app(args[2], pred), inner), args, 3);
          break;
        }
        case TermKind::Fst:
        case TermKind::Snd: {
          if (args.empty()) return t;
          Term p = whnf(args[0]);
          if (p->kind != TermKind::Pair) {
            args[0] = p;
            return rebuild(head, args, 0);
          }
          tick();
          next = rebuild(head->kind == TermKind::Fst ? p->a : p->b, args, 1);
          break;
        }
        case TermKind::Succ: {
          if (args.size() != 1) return t;
          Term n = whnf(args[0]);
          if (n->kind == TermKind::Zero) return numeral(1);
          if (n->kind == TermKind::Num) return numeral(n->num + 1);
          return app(head, n);
        }
        default:
          return t;
      }
      t = next;
    }
  }

 private:
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;

  void tick() {
    if (++used_ > fuel_) throw FuelExhausted(used_ - 1);
  }

  static Term spine(Term t, std::vector<Term>& args) {
    while (t->kind == TermKind::App) {
      args.push_back(t->b);
      t = t->a;
    }
    std::reverse(args.begin(), args.end());
    return t;
  }

  static Term rebuild(Term head, const std::vector<Term>& args, std::size_t from) {
    for (std::size_t i = from; i < args.size(); ++i) head = app(head, args[i]);
    return head;
  }
};

}  // namespace

Term normalize(const Term& t, std::uint64_t fuel) { return Reducer(fuel).nf(t); }

//------------------------------------------------------------------------------
// Strict evaluation

namespace {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Env {
  std::string name;
  ValuePtr value;
  std::shared_ptr<const Env> next;
};
using EnvPtr = std::shared_ptr<const Env>;

struct Value {
  enum class Kind { Nat, Closure, Builtin, Pair } kind;
  std::uint64_t nat = 0;
  Term body;  // closure: the lambda
  EnvPtr env;
  std::function<ValuePtr(const ValuePtr&)> fn;
  ValuePtr left, right;
};

ValuePtr make_nat(std::uint64_t n) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Nat;
  v->nat = n;
  return v;
}

ValuePtr make_builtin(std::function<ValuePtr(const ValuePtr&)> fn) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Builtin;
  v->fn = std::move(fn);
  return v;
}

class Machine {
 public:
  explicit Machine(std::uint64_t fuel) : fuel_(fuel) {}

  ValuePtr eval(const Term& t, const EnvPtr& env) {
    switch (t->kind) {
      case TermKind::Var:
        for (const Env* e = env.get(); e; e = e->next.get())
          if (e->name == t->name) return e->value;
        throw EvalError("free variable '" + t->name + "' in evaluated term");
      case TermKind::Lam: {
        auto v = std::make_shared<Value>();
        v->kind = Value::Kind::Closure;
        v->body = t;
        v->env = env;
        return v;
      }
      case TermKind::App: {
        ValuePtr f = eval(t->a, env);
        ValuePtr x = eval(t->b, env);
        return apply(f, x);
      }
      case TermKind::Zero:
        return make_nat(0);
      case TermKind::Num:
        return make_nat(t->num);
      case TermKind::Succ:
        return make_builtin([](const ValuePtr& x) {
          std::uint64_t n = nat_of(x);
          if (n == std::numeric_limits<std::uint64_t>::max()) throw EvalError("numeral overflow");
          return make_nat(n + 1);
        });
      case TermKind::Rec:
        return make_builtin([this](const ValuePtr& n) {
          return make_builtin([this, n](const ValuePtr& b) {
            return make_builtin([this, n, b](const ValuePtr& s) {
              ValuePtr r = b;
              std::uint64_t count = nat_of(n);
              for (std::uint64_t k = 0; k < count; ++k) r = apply(apply(s, make_nat(k)), r);
              return r;
            });
          });
        });
      case TermKind::Pair: {
        auto v = std::make_shared<Value>();
        v->kind = Value::Kind::Pair;
        v->left = eval(t->a, env);
        v->right = eval(t->b, env);
        return v;
      }
      case TermKind::Fst:
      case TermKind::Snd: {
        bool first = t->kind == TermKind::Fst;
        return make_builtin([first](const ValuePtr& p) {
          if (p->kind != Value::Kind::Pair) throw EvalError("projection of a non-pair");
          return first ? p->left : p->right;
        });
      }
    }
    throw EvalError("unknown term");
  }

  ValuePtr apply(const ValuePtr& f, const ValuePtr& x) {
    tick();
    if (f->kind == Value::Kind::Builtin) return f->fn(x);
    if (f->kind != Value::Kind::Closure) throw EvalError("applying a non-function");
    auto env = std::make_shared<Env>(Env{f->body->name, x, f->env});
    return eval(f->body->a, env);
  }

  static std::uint64_t nat_of(const ValuePtr& v) {
    if (v->kind != Value::Kind::Nat) throw EvalError("expected a natural number");
    return v->nat;
  }

 private:
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;

  void tick() {
    if (++used_ > fuel_) throw FuelExhausted(used_ - 1);
  }
};

}  // namespace

std::uint64_t eval_nat(const Term& t, std::uint64_t fuel) {
  Machine m(fuel);
  return Machine::nat_of(m.eval(t, nullptr));
}

std::uint64_t apply_functional(const Term& t, const std::vector<Argument>& args, std::uint64_t fuel,
                               QueryLog* log) {
  Machine m(fuel);
  ValuePtr f = m.eval(t, nullptr);
  if (log) log->queried.assign(args.size(), {});
  for (std::size_t i = 0; i < args.size(); ++i) {
    ValuePtr arg;
    if (const auto* n = std::get_if<std::uint64_t>(&args[i])) {
      arg = make_nat(*n);
    } else {
      auto memo = std::make_shared<std::unordered_map<std::uint64_t, std::uint64_t>>();
      Oracle oracle = std::get<Oracle>(args[i]);
      std::set<std::uint64_t>* support = log ? &log->queried[i] : nullptr;
      arg = make_builtin([memo, oracle, support](const ValuePtr& x) {
        std::uint64_t q = Machine::nat_of(x);
        if (support) support->insert(q);
        auto it = memo->find(q);
        if (it == memo->end()) it = memo->emplace(q, oracle(q)).first;
        return make_nat(it->second);
      });
    }
    f = m.apply(f, arg);
  }
  return Machine::nat_of(f);
}

//------------------------------------------------------------------------------
// Finite models

ModelElement ModelElement::number(std::uint32_t n) {
  ModelElement e;
  e.kind = Kind::Nat;
  e.nat = n;
  return e;
}

ModelElement ModelElement::table(std::vector<ModelElement> entries) {
  ModelElement e;
  e.kind = Kind::Table;
  e.items = std::move(entries);
  return e;
}

ModelElement ModelElement::pair(ModelElement l, ModelElement r) {
  ModelElement e;
  e.kind = Kind::Pair;
  e.items = {std::move(l), std::move(r)};
  return e;
}

bool ModelElement::operator==(const ModelElement& o) const {
  return kind == o.kind && nat == o.nat && items == o.items;
}

bool ModelElement::operator<(const ModelElement& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (nat != o.nat) return nat < o.nat;
  return items < o.items;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return r;
}

}  // namespace

std::uint64_t model_size(const Type& type, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base: return static_cast<std::uint64_t>(B) + 1;
    case TypeKind::Arrow: return sat_pow(model_size(type->right, B), model_size(type->left, B));
    case TypeKind::Product: return sat_mul(model_size(type->left, B), model_size(type->right, B));
  }
  return 0;
}

ModelElement model_element(std::uint64_t index, const Type& type, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base:
      return ModelElement::number(static_cast<std::uint32_t>(index));
    case TypeKind::Arrow: {
      std::uint64_t dom = model_size(type->left, B);
      std::uint64_t cod = model_size(type->right, B);
      std::vector<ModelElement> entries;
      entries.reserve(dom);
      for (std::uint64_t j = 0; j < dom; ++j) {
        entries.push_back(model_element(index % cod, type->right, B));
        index /= cod;
      }
      return ModelElement::table(std::move(entries));
    }
    case TypeKind::Product: {
      std::uint64_t r = model_size(type->right, B);
      return ModelElement::pair(model_element(index / r, type->left, B), model_element(index % r, type->right, B));
    }
  }
  return {};
}

std::uint64_t model_index(const ModelElement& e, const Type& type, std::uint32_t B) {
  switch (type->kind) {
    case TypeKind::Base:
      return e.nat;
    case TypeKind::Arrow: {
      std::uint64_t cod = model_size(type->right, B);
      std::uint64_t index = 0;
      for (std::size_t j = e.items.size(); j-- > 0;) index = index * cod + model_index(e.items[j], type->right, B);
      return index;
    }
    case TypeKind::Product:
      return model_index(e.items[0], type->left, B) * model_size(type->right, B) +
             model_index(e.items[1], type->right, B);
  }
  return 0;
}

const std::vector<ModelElement>& enumerate_model(const Type& type, std::uint32_t B, std::uint64_t cap) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::uint32_t>, std::vector<ModelElement>> cache;
  std::uint64_t size = model_size(type, B);
  if (size > cap)
    throw ModelTooLarge("model of type " + print(type) + " at B=" + std::to_string(B) + " exceeds the size guard " +
                        std::to_string(cap));
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(print(type), B);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<ModelElement> all;
  all.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) all.push_back(model_element(i, type, B));
  return cache.emplace(key, std::move(all)).first->second;
}

const ModelElement& model_apply(const ModelElement& f, const ModelElement& arg, const Type& fn_type,
                                std::uint32_t B) {
  return f.items.at(model_index(arg, fn_type->left, B));
}

namespace {

struct Sem;
using SemPtr = std::shared_ptr<const Sem>;

struct Sem {
  enum class Kind { Nat, Fun, Pair } kind;
  std::uint32_t nat = 0;
  std::function<SemPtr(const SemPtr&)> fn;
  SemPtr left, right;
};

SemPtr sem_nat(std::uint32_t n) {
  auto s = std::make_shared<Sem>();
  s->kind = Sem::Kind::Nat;
  s->nat = n;
  return s;
}

SemPtr sem_fun(std::function<SemPtr(const SemPtr&)> fn) {
  auto s = std::make_shared<Sem>();
  s->kind = Sem::Kind::Fun;
  s->fn = std::move(fn);
  return s;
}

SemPtr sem_pair(SemPtr l, SemPtr r) {
  auto s = std::make_shared<Sem>();
  s->kind = Sem::Kind::Pair;
  s->left = std::move(l);
  s->right = std::move(r);
  return s;
}

struct SemEnv {
  std::string name;
  SemPtr value;
  std::shared_ptr<const SemEnv> next;
};
using SemEnvPtr = std::shared_ptr<const SemEnv>;

class ModelEvaluator {
 public:
  explicit ModelEvaluator(std::uint32_t B) : B_(B) {}

  SemPtr reflect(const ModelElement& e, const Type& type) {
    switch (type->kind) {
      case TypeKind::Base:
        return sem_nat(e.nat);
      case TypeKind::Product:
        return sem_pair(reflect(e.items[0], type->left), reflect(e.items[1], type->right));
      case TypeKind::Arrow: {
        auto table = std::make_shared<ModelElement>(e);
        return sem_fun([this, table, type](const SemPtr& x) {
          ModelElement arg = reify(x, type->left);
          return reflect(model_apply(*table, arg, type, B_), type->right);
        });
      }
    }
    return nullptr;
  }

  ModelElement reify(const SemPtr& s, const Type& type) {
    switch (type->kind) {
      case TypeKind::Base:
        return ModelElement::number(s->nat);
      case TypeKind::Product:
        return ModelElement::pair(reify(s->left, type->left), reify(s->right, type->right));
      case TypeKind::Arrow: {
        const auto& dom = enumerate_model(type->left, B_);
        std::vector<ModelElement> entries;
        entries.reserve(dom.size());
        for (const auto& d : dom) entries.push_back(reify(s->fn(reflect(d, type->left)), type->right));
        return ModelElement::table(std::move(entries));
      }
    }
    return {};
  }

  SemPtr eval(const Term& t, const SemEnvPtr& env) {
    switch (t->kind) {
      case TermKind::Var:
        for (const SemEnv* e = env.get(); e; e = e->next.get())
          if (e->name == t->name) return e->value;
        throw EvalError("free variable '" + t->name + "' not in model environment");
      case TermKind::Lam: {
        Term body = t->a;
        std::string name = t->name;
        return sem_fun([this, body, name, env](const SemPtr& x) {
          return eval(body, std::make_shared<SemEnv>(SemEnv{name, x, env}));
        });
      }
      case TermKind::App:
        return eval(t->a, env)->fn(eval(t->b, env));
      case TermKind::Zero:
        return sem_nat(0);
      case TermKind::Num:
        return sem_nat(static_cast<std::uint32_t>(std::min<std::uint64_t>(t->num, B_)));
      case TermKind::Succ:
        return sem_fun([this](const SemPtr& x) { return sem_nat(std::min(x->nat + 1, B_)); });
      case TermKind::Rec:
        return sem_fun([](const SemPtr& n) {
          return sem_fun([n](const SemPtr& b) {
            return sem_fun([n, b](const SemPtr& s) {
              SemPtr r = b;
              for (std::uint32_t k = 0; k < n->nat; ++k) r = s->fn(sem_nat(k))->fn(r);
              return r;
            });
          });
        });
      case TermKind::Pair:
        return sem_pair(eval(t->a, env), eval(t->b, env));
      case TermKind::Fst:
        return sem_fun([](const SemPtr& p) { return p->left; });
      case TermKind::Snd:
        return sem_fun([](const SemPtr& p) { return p->right; });
    }
    throw EvalError("unknown term");
  }

 private:
  std::uint32_t B_;
};

}  // namespace

ModelElement eval_finite_model(const Term& t, std::uint32_t B, const ModelEnv& env) {
  Context ctx;
  for (const auto& [name, te] : env) ctx.emplace(name, te.type);
  Type type = infer_type(t, ctx);
  ModelEvaluator ev(B);
  SemEnvPtr senv;
  for (const auto& [name, te] : env) senv = std::make_shared<SemEnv>(SemEnv{name, ev.reflect(te.value, te.type), senv});
  return ev.reify(ev.eval(t, senv), type);
}

std::string print(const ModelElement& e) {
  std::ostringstream os;
  switch (e.kind) {
    case ModelElement::Kind::Nat:
      os << e.nat;
      break;
    case ModelElement::Kind::Table:
      os << "[";
      for (std::size_t i = 0; i < e.items.size(); ++i) os << (i ? "," : "") << print(e.items[i]);
      os << "]";
      break;
    case ModelElement::Kind::Pair:
      os << "<" << print(e.items[0]) << "," << print(e.items[1]) << ">";
      break;
  }
  return os.str();
}

}  // namespace nsak
