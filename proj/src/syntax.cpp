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

#include "nsak/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace nsak {

//------------------------------------------------------------------------------
// Constructors

Type base_type() {
  static const Type kBase = std::make_shared<const TypeNode>(TypeNode{TypeKind::Base, nullptr, nullptr});
  return kBase;
}
Type arrow(Type domain, Type codomain) {
  return std::make_shared<const TypeNode>(TypeNode{TypeKind::Arrow, std::move(domain), std::move(codomain)});
}
Type product(Type left, Type right) {
  return std::make_shared<const TypeNode>(TypeNode{TypeKind::Product, std::move(left), std::move(right)});
}
Type type1() { return arrow(base_type(), base_type()); }
Type type2() { return arrow(type1(), base_type()); }

bool type_equal(const Type& a, const Type& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == TypeKind::Base) return true;
  return type_equal(a->left, b->left) && type_equal(a->right, b->right);
}

int type_level(const Type& t) {
  switch (t->kind) {
    case TypeKind::Base: return 0;
    case TypeKind::Arrow: return std::max(type_level(t->left) + 1, type_level(t->right));
    case TypeKind::Product: return std::max(type_level(t->left), type_level(t->right));
  }
  return 0;
}

namespace {
Term make_term(TermNode node) { return std::make_shared<const TermNode>(std::move(node)); }
Formula make_formula(FormulaNode node) { return std::make_shared<const FormulaNode>(std::move(node)); }
}  // namespace

Term var(std::string name) { return make_term({TermKind::Var, std::move(name), nullptr, nullptr, nullptr}); }
Term lam(std::string binder, Type type, Term body) {
  return make_term({TermKind::Lam, std::move(binder), std::move(type), std::move(body), nullptr});
}
Term app(Term fn, Term arg) { return make_term({TermKind::App, {}, nullptr, std::move(fn), std::move(arg)}); }
Term app(Term fn, std::initializer_list<Term> args) {
  for (const auto& a : args) fn = app(fn, a);
  return fn;
}
Term zero() {
  static const Term kZero = make_term({TermKind::Zero, {}, nullptr, nullptr, nullptr});
  return kZero;
}
Term succ_const() {
  static const Term kSucc = make_term({TermKind::Succ, {}, nullptr, nullptr, nullptr});
  return kSucc;
}
Term rec(Type result) { return make_term({TermKind::Rec, {}, std::move(result), nullptr, nullptr}); }
Term pair(Term left, Term right) {
  return make_term({TermKind::Pair, {}, nullptr, std::move(left), std::move(right)});
}
Term fst_const() {
  static const Term kFst = make_term({TermKind::Fst, {}, nullptr, nullptr, nullptr});
  return kFst;
}
Term snd_const() {
  static const Term kSnd = make_term({TermKind::Snd, {}, nullptr, nullptr, nullptr});
  return kSnd;
}
Term numeral(std::uint64_t n) {
  if (n == 0) return zero();
  TermNode node{TermKind::Num, {}, nullptr, nullptr, nullptr};
  node.num = n;
  return make_term(std::move(node));
}
Term succ(Term t) { return app(succ_const(), std::move(t)); }

Formula falsum() {
  static const Formula kFalse = make_formula({FormKind::Falsum, nullptr, nullptr, nullptr, {}, nullptr, nullptr});
  return kFalse;
}
Formula eq(Term lhs, Term rhs) {
  return make_formula({FormKind::Eq, std::move(lhs), std::move(rhs), nullptr, {}, nullptr, nullptr});
}
Formula le(Term lhs, Term rhs) {
  return make_formula({FormKind::Le, std::move(lhs), std::move(rhs), nullptr, {}, nullptr, nullptr});
}
Formula st(Type type, Term t) {
  return make_formula({FormKind::St, std::move(t), nullptr, std::move(type), {}, nullptr, nullptr});
}
Formula conj(Formula a, Formula b) {
  return make_formula({FormKind::And, nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
Formula disj(Formula a, Formula b) {
  return make_formula({FormKind::Or, nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
Formula implies(Formula a, Formula b) {
  return make_formula({FormKind::Implies, nullptr, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
Formula neg(Formula a) { return implies(std::move(a), falsum()); }
Formula quant(FormKind kind, std::string v, Type type, Formula body) {
  return make_formula({kind, nullptr, nullptr, std::move(type), std::move(v), std::move(body), nullptr});
}
Formula forall(std::string v, Type t, Formula body) { return quant(FormKind::Forall, std::move(v), std::move(t), std::move(body)); }
Formula exists(std::string v, Type t, Formula body) { return quant(FormKind::Exists, std::move(v), std::move(t), std::move(body)); }
Formula forall_st(std::string v, Type t, Formula body) {
  return quant(FormKind::ForallSt, std::move(v), std::move(t), std::move(body));
}
Formula exists_st(std::string v, Type t, Formula body) {
  return quant(FormKind::ExistsSt, std::move(v), std::move(t), std::move(body));
}
Formula forall_mon_st(std::string v, Type t, Formula body) {
  return quant(FormKind::ForallMonSt, std::move(v), std::move(t), std::move(body));
}
Formula exists_mon_st(std::string v, Type t, Formula body) {
  return quant(FormKind::ExistsMonSt, std::move(v), std::move(t), std::move(body));
}
Formula bounded_forall(std::string v, Term bound, Formula body) {
  return make_formula({FormKind::BForall, std::move(bound), nullptr, base_type(), std::move(v), std::move(body), nullptr});
}
Formula bounded_exists(std::string v, Term bound, Formula body) {
  return make_formula({FormKind::BExists, std::move(bound), nullptr, base_type(), std::move(v), std::move(body), nullptr});
}
Formula eq_at(Type type, Term lhs, Term rhs) {
  return make_formula({FormKind::EqT, std::move(lhs), std::move(rhs), std::move(type), {}, nullptr, nullptr});
}
Formula le_at(Type type, Term lhs, Term rhs) {
  return make_formula({FormKind::LeT, std::move(lhs), std::move(rhs), std::move(type), {}, nullptr, nullptr});
}
Formula approx(Type type, Term lhs, Term rhs) {
  return make_formula({FormKind::Approx, std::move(lhs), std::move(rhs), std::move(type), {}, nullptr, nullptr});
}
Formula leq_star(Type type, Term lhs, Term rhs) {
  return make_formula({FormKind::LeqStar, std::move(lhs), std::move(rhs), std::move(type), {}, nullptr, nullptr});
}

bool is_typed_quantifier(FormKind k) {
  switch (k) {
    case FormKind::Forall: case FormKind::Exists: case FormKind::ForallSt: case FormKind::ExistsSt:
    case FormKind::ForallMonSt: case FormKind::ExistsMonSt:
      return true;
    default:
      return false;
  }
}
bool is_bounded_quantifier(FormKind k) { return k == FormKind::BForall || k == FormKind::BExists; }
bool is_quantifier(FormKind k) { return is_typed_quantifier(k) || is_bounded_quantifier(k); }
bool is_binary_connective(FormKind k) {
  return k == FormKind::And || k == FormKind::Or || k == FormKind::Implies;
}
bool is_relation(FormKind k) {
  switch (k) {
    case FormKind::Eq: case FormKind::Le: case FormKind::EqT: case FormKind::LeT:
    case FormKind::Approx: case FormKind::LeqStar:
      return true;
    default:
      return false;
  }
}

bool term_struct_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: return a->name == b->name;
    case TermKind::Lam:
      return a->name == b->name && type_equal(a->type, b->type) && term_struct_equal(a->a, b->a);
    case TermKind::App:
    case TermKind::Pair:
      return term_struct_equal(a->a, b->a) && term_struct_equal(a->b, b->b);
    case TermKind::Rec: return type_equal(a->type, b->type);
    case TermKind::Num: return a->num == b->num;
    default: return true;
  }
}

bool formula_struct_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  auto same_term = [](const Term& x, const Term& y) { return (!x && !y) || (x && y && term_struct_equal(x, y)); };
  auto same_type = [](const Type& x, const Type& y) { return (!x && !y) || (x && y && type_equal(x, y)); };
  auto same_form = [](const Formula& x, const Formula& y) { return (!x && !y) || (x && y && formula_struct_equal(x, y)); };
  return a->var == b->var && same_term(a->lhs, b->lhs) && same_term(a->rhs, b->rhs) &&
         same_type(a->type, b->type) && same_form(a->a, b->a) && same_form(a->b, b->b);
}

//------------------------------------------------------------------------------
// Errors

namespace {
std::string describe_error(int line, int column, const std::string& found,
                           const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "syntax error at " << line << ":" << column << ": found '" << found << "'";
  if (!expected.empty()) {
    os << ", expected one of:";
    for (const auto& e : expected) os << " " << e;
  }
  return os.str();
}
}  // namespace

SyntaxError::SyntaxError(int line_, int column_, std::string found_, std::vector<std::string> expected_)
    : std::runtime_error(describe_error(line_, column_, found_, expected_)),
      line(line_),
      column(column_),
      found(std::move(found_)),
      expected(std::move(expected_)) {}

//------------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* kSymbols[] = {"<=*", "->", "<=", "~", "<", ">", "=", "*", "(", ")", "[",
                                   "]",   ":",  ".",  ",", "&", "|"};
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if ((word == "forall" || word == "exists") && j + 2 < text.size() + 0 &&
          (text.substr(j, 3) == "-st" || text.substr(j, 3) == "~st") &&
          (j + 3 >= text.size() || !ident_char(text[j + 3]))) {
        word += std::string(text.substr(j, 3));
        j += 3;
      }
      advance(j - i);
      out.push_back({Tok::Ident, std::move(word), l, cl});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* s : kSymbols) {
      std::string_view sv(s);
      if (text.substr(i, sv.size()) == sv) {
        out.push_back({Tok::Sym, std::string(sv), l, cl});
        advance(sv.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(l, cl, std::string(1, c), {"token"});
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "lam", "S", "Rec", "fst", "snd", "false", "st", "forall", "exists",
      "forall-st", "exists-st", "forall~st", "exists~st"};
  return kw;
}

//------------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const Definitions* defs) : toks_(lex(text)), defs_(defs) {}

  Type type_top() {
    Type t = type();
    expect_end();
    return t;
  }
  Term term_top() {
    Term t = term();
    expect_end();
    return t;
  }
  Formula formula_top() {
    Formula f = formula();
    expect_end();
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Definitions* defs_;
  std::vector<std::string> bound_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_word(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().line, peek().column, peek().text, std::move(expected));
  }
  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail({"'" + std::string(s) + "'"});
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"<end of input>"});
  }
  std::string ident() {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail({"identifier"});
    return toks_[pos_++].text;
  }

  // type := prod ("->" type)?
  Type type() {
    Type left = type_product();
    if (is_sym("->")) {
      ++pos_;
      return arrow(left, type());
    }
    return left;
  }
  // prod := atom ("*" prod)?
  Type type_product() {
    Type left = type_atom();
    if (is_sym("*")) {
      ++pos_;
      return product(left, type_product());
    }
    return left;
  }
  Type type_atom() {
    if (peek().kind == Tok::Number && peek().text == "0") {
      ++pos_;
      return base_type();
    }
    if (is_sym("(")) {
      ++pos_;
      Type t = type();
      expect_sym(")");
      return t;
    }
    fail({"'0'", "'('"});
  }

  bool term_atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Sym) return t.text == "(" || t.text == "<";
    if (t.kind == Tok::Ident) {
      if (t.text == "lam" || t.text == "S" || t.text == "Rec" || t.text == "fst" || t.text == "snd") return true;
      return !keywords().count(t.text);
    }
    return false;
  }

  // term := "lam" x ":" type "." term | atom atom*
  Term term() {
    if (is_word("lam")) return lambda();
    if (!term_atom_start()) fail({"term"});
    Term t = term_atom();
    while (true) {
      if (is_word("lam")) {
        t = app(t, lambda());
        break;
      }
      if (!term_atom_start()) break;
      t = app(t, term_atom());
    }
    return t;
  }

  Term lambda() {
    ++pos_;  // lam
    std::string x = ident();
    expect_sym(":");
    Type ty = type();
    expect_sym(".");
    bound_.push_back(x);
    Term body = term();
    bound_.pop_back();
    return lam(x, ty, body);
  }

  Term term_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) fail({"numeral within 64 bits"});
      ++pos_;
      return numeral(v);
    }
    if (is_sym("(")) {
      ++pos_;
      Term inner = term();
      expect_sym(")");
      return inner;
    }
    if (is_sym("<")) {
      ++pos_;
      Term l = term();
      expect_sym(",");
      Term r = term();
      expect_sym(">");
      return pair(l, r);
    }
    if (is_word("S")) {
      ++pos_;
      return succ_const();
    }
    if (is_word("fst")) {
      ++pos_;
      return fst_const();
    }
    if (is_word("snd")) {
      ++pos_;
      return snd_const();
    }
    if (is_word("Rec")) {
      ++pos_;
      expect_sym("[");
      Type ty = type();
      expect_sym("]");
      return rec(ty);
    }
    std::string name = ident();
    return resolve(name);
  }

  Term resolve(const std::string& name) {
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end() || !defs_) return var(name);
    auto it = defs_->find(name);
    if (it == defs_->end()) return var(name);
    return it->second;
  }

  // formula := disj ("->" formula)?
  Formula formula() {
    Formula left = disjunction();
    if (is_sym("->")) {
      ++pos_;
      return implies(left, formula());
    }
    return left;
  }
  Formula disjunction() {
    Formula left = conjunction();
    while (is_sym("|")) {
      ++pos_;
      left = disj(left, conjunction());
    }
    return left;
  }
  Formula conjunction() {
    Formula left = unary();
    while (is_sym("&")) {
      ++pos_;
      left = conj(left, unary());
    }
    return left;
  }

  Formula unary() {
    static const std::map<std::string, FormKind, std::less<>> kQuant = {
        {"forall", FormKind::Forall},         {"exists", FormKind::Exists},
        {"forall-st", FormKind::ForallSt},    {"exists-st", FormKind::ExistsSt},
        {"forall~st", FormKind::ForallMonSt}, {"exists~st", FormKind::ExistsMonSt}};
    if (peek().kind == Tok::Ident) {
      auto q = kQuant.find(peek().text);
      if (q != kQuant.end()) {
        ++pos_;
        std::string x = ident();
        if (is_sym("<=") && (q->second == FormKind::Forall || q->second == FormKind::Exists)) {
          ++pos_;
          Term bound = term();
          expect_sym(".");
          bound_.push_back(x);
          Formula body = formula();
          bound_.pop_back();
          return q->second == FormKind::Forall ? bounded_forall(x, bound, body) : bounded_exists(x, bound, body);
        }
        if (!is_sym(":")) fail({"':'", "'<='"});
        ++pos_;
        Type ty = type();
        expect_sym(".");
        bound_.push_back(x);
        Formula body = formula();
        bound_.pop_back();
        return quant(q->second, x, ty, body);
      }
    }
    return atom();
  }

  Formula atom() {
    if (is_word("false")) {
      ++pos_;
      return falsum();
    }
    if (is_word("st")) {
      ++pos_;
      expect_sym("[");
      Type ty = type();
      expect_sym("]");
      expect_sym("(");
      Term t = term();
      expect_sym(")");
      return st(ty, t);
    }
    if (is_sym("(")) {
      std::size_t save = pos_;
      try {
        return relation();
      } catch (const SyntaxError& first) {
        pos_ = save;
        ++pos_;
        Formula inner = formula();
        expect_sym(")");
        return inner;
      }
    }
    return relation();
  }

  Formula relation() {
    Term lhs = term();
    if (is_sym("=")) {
      ++pos_;
      if (is_sym("[")) {
        Type ty = bracket_type();
        return eq_at(ty, lhs, term());
      }
      return eq(lhs, term());
    }
    if (is_sym("<=")) {
      ++pos_;
      if (is_sym("[")) {
        Type ty = bracket_type();
        return le_at(ty, lhs, term());
      }
      return le(lhs, term());
    }
    if (is_sym("<=*")) {
      ++pos_;
      Type ty = bracket_type();
      return leq_star(ty, lhs, term());
    }
    if (is_sym("~")) {
      ++pos_;
      Type ty = bracket_type();
      return approx(ty, lhs, term());
    }
    fail({"'='", "'<='", "'<=*['", "'~['"});
  }

  Type bracket_type() {
    expect_sym("[");
    Type ty = type();
    expect_sym("]");
    return ty;
  }
};

//------------------------------------------------------------------------------
// Printer

void print_type(std::ostream& os, const Type& t) {
  switch (t->kind) {
    case TypeKind::Base:
      os << "0";
      return;
    case TypeKind::Arrow:
      if (t->left->kind == TypeKind::Arrow) {
        os << "(";
        print_type(os, t->left);
        os << ")";
      } else {
        print_type(os, t->left);
      }
      os << "->";
      print_type(os, t->right);
      return;
    case TypeKind::Product: {
      bool lp = t->left->kind != TypeKind::Base;
      bool rp = t->right->kind == TypeKind::Arrow;
      if (lp) os << "(";
      print_type(os, t->left);
      if (lp) os << ")";
      os << "*";
      if (rp) os << "(";
      print_type(os, t->right);
      if (rp) os << ")";
      return;
    }
  }
}

void print_term(std::ostream& os, const Term& t);

void print_term_arg(std::ostream& os, const Term& t) {
  if (t->kind == TermKind::App || t->kind == TermKind::Lam) {
    os << "(";
    print_term(os, t);
    os << ")";
  } else {
    print_term(os, t);
  }
}

void print_term(std::ostream& os, const Term& t) {
  switch (t->kind) {
    case TermKind::Var: os << t->name; return;
    case TermKind::Lam:
      os << "lam " << t->name << ":";
      print_type(os, t->type);
      os << ". ";
      print_term(os, t->a);
      return;
    case TermKind::App:
      if (t->a->kind == TermKind::Lam) {
        os << "(";
        print_term(os, t->a);
        os << ")";
      } else {
        print_term(os, t->a);
      }
      os << " ";
      print_term_arg(os, t->b);
      return;
    case TermKind::Zero: os << "0"; return;
    case TermKind::Succ: os << "S"; return;
    case TermKind::Rec:
      os << "Rec[";
      print_type(os, t->type);
      os << "]";
      return;
    case TermKind::Pair:
      os << "<";
      print_term(os, t->a);
      os << ", ";
      print_term(os, t->b);
      os << ">";
      return;
    case TermKind::Fst: os << "fst"; return;
    case TermKind::Snd: os << "snd"; return;
    case TermKind::Num: os << t->num; return;
  }
}

// `tail` is true when nothing follows the printed formula, so a trailing
// quantifier needs no parentheses.
void print_formula(std::ostream& os, const Formula& f, bool tail);

void print_operand(std::ostream& os, const Formula& f, bool parens, bool tail) {
  if (parens) os << "(";
  print_formula(os, f, parens || tail);
  if (parens) os << ")";
}

void print_formula(std::ostream& os, const Formula& f, bool tail) {
  auto rel = [&](const char* op, bool typed) {
    print_term(os, f->lhs);
    os << " " << op;
    if (typed) {
      os << "[";
      print_type(os, f->type);
      os << "]";
    }
    os << " ";
    print_term(os, f->rhs);
  };
  switch (f->kind) {
    case FormKind::Falsum: os << "false"; return;
    case FormKind::Eq: rel("=", false); return;
    case FormKind::Le: rel("<=", false); return;
    case FormKind::EqT: rel("=", true); return;
    case FormKind::LeT: rel("<=", true); return;
    case FormKind::Approx: rel("~", true); return;
    case FormKind::LeqStar: rel("<=*", true); return;
    case FormKind::St:
      os << "st[";
      print_type(os, f->type);
      os << "](";
      print_term(os, f->lhs);
      os << ")";
      return;
    case FormKind::And:
    case FormKind::Or: {
      const char* op = f->kind == FormKind::And ? " & " : " | ";
      auto needs = [&](const Formula& c, bool right) {
        if (is_quantifier(c->kind)) return true;
        if (c->kind == FormKind::Implies) return true;
        if (f->kind == FormKind::And && c->kind == FormKind::Or) return true;
        if (right && c->kind == f->kind) return true;
        return false;
      };
      bool lp = needs(f->a, false);
      print_operand(os, f->a, lp, false);
      os << op;
      bool rp = needs(f->b, true) && !(is_quantifier(f->b->kind) && tail);
      print_operand(os, f->b, rp, tail);
      return;
    }
    case FormKind::Implies: {
      bool lp = f->a->kind == FormKind::Implies || is_quantifier(f->a->kind);
      print_operand(os, f->a, lp, false);
      os << " -> ";
      bool rp = is_quantifier(f->b->kind) && !tail;
      print_operand(os, f->b, rp, tail);
      return;
    }
    case FormKind::BForall:
    case FormKind::BExists:
      os << (f->kind == FormKind::BForall ? "forall " : "exists ") << f->var << " <= ";
      print_term(os, f->lhs);
      os << ". ";
      print_formula(os, f->a, true);
      return;
    default: {
      static const std::map<FormKind, const char*> kNames = {
          {FormKind::Forall, "forall"},         {FormKind::Exists, "exists"},
          {FormKind::ForallSt, "forall-st"},    {FormKind::ExistsSt, "exists-st"},
          {FormKind::ForallMonSt, "forall~st"}, {FormKind::ExistsMonSt, "exists~st"}};
      os << kNames.at(f->kind) << " " << f->var << ":";
      print_type(os, f->type);
      os << ". ";
      print_formula(os, f->a, true);
      return;
    }
  }
}

}  // namespace

Type parse_type(std::string_view text) { return Parser(text, nullptr).type_top(); }
Term parse_term(std::string_view text, const Definitions* defs) { return Parser(text, defs).term_top(); }
Formula parse_formula(std::string_view text, const Definitions* defs) {
  return Parser(text, defs).formula_top();
}

std::string print(const Type& t) {
  std::ostringstream os;
  print_type(os, t);
  return os.str();
}
std::string print(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}
std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, true);
  return os.str();
}

Term fold_definitions(const Term& t, const Definitions& defs) {
  if (t->kind != TermKind::Var)
    for (const auto& [name, body] : defs)
      if (term_struct_equal(t, body)) return var(name);
  switch (t->kind) {
    case TermKind::Lam:
      return lam(t->name, t->type, fold_definitions(t->a, defs));
    case TermKind::App:
      return app(fold_definitions(t->a, defs), fold_definitions(t->b, defs));
    case TermKind::Pair:
      return pair(fold_definitions(t->a, defs), fold_definitions(t->b, defs));
    default:
      return t;
  }
}

Formula fold_definitions(const Formula& f, const Definitions& defs) {
  FormulaNode n = *f;
  if (n.lhs) n.lhs = fold_definitions(n.lhs, defs);
  if (n.rhs) n.rhs = fold_definitions(n.rhs, defs);
  if (n.a) n.a = fold_definitions(n.a, defs);
  if (n.b) n.b = fold_definitions(n.b, defs);
  return std::make_shared<const FormulaNode>(std::move(n));
}

}  // namespace nsak
