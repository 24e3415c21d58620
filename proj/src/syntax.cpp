// Copyright 2026 The qlam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlam/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <optional>

#include "qlam/quantum.hpp"

namespace qlam {

namespace {

std::vector<VarName> merge(const std::vector<VarName>& x, const std::vector<VarName>& y) {
  std::vector<VarName> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

std::vector<VarName> without(std::vector<VarName> x, const VarName& a, const VarName& b = {}) {
  std::erase_if(x, [&](const VarName& v) { return v == a || (!b.empty() && v == b); });
  return x;
}

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

Term leaf(TermKind k) {
  Term t;
  t.kind = k;
  return t;
}

}  // namespace

bool Term::has_free(std::string_view x) const {
  return std::binary_search(free.begin(), free.end(), x, [](const auto& l, const auto& r) {
    return std::string_view(l) < std::string_view(r);
  });
}

TermPtr var(VarName x) {
  Term t = leaf(TermKind::Var);
  t.free = {x};
  t.name = std::move(x);
  return make(std::move(t));
}

TermPtr app(TermPtr m, TermPtr n) {
  Term t = leaf(TermKind::App);
  t.free = merge(m->free, n->free);
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}

TermPtr lam(VarName x, TermPtr body) {
  Term t = leaf(TermKind::Lam);
  t.free = without(body->free, x);
  t.name = std::move(x);
  t.a = std::move(body);
  return make(std::move(t));
}

TermPtr cond(TermPtr p, TermPtr m, TermPtr n) {
  Term t = leaf(TermKind::If);
  t.free = merge(p->free, merge(m->free, n->free));
  t.a = std::move(p);
  t.b = std::move(m);
  t.c = std::move(n);
  return make(std::move(t));
}

TermPtr bit(int b) {
  Term t = leaf(TermKind::Bit);
  t.value = b ? 1 : 0;
  return make(std::move(t));
}

TermPtr meas() { return make(leaf(TermKind::Meas)); }
TermPtr new_() { return make(leaf(TermKind::New)); }
TermPtr star() { return make(leaf(TermKind::Star)); }

TermPtr gate(std::string name, int arity) {
  Term t = leaf(TermKind::Gate);
  t.name = std::move(name);
  t.value = arity;
  return make(std::move(t));
}

TermPtr pair(TermPtr m, TermPtr n) {
  Term t = leaf(TermKind::Pair);
  t.free = merge(m->free, n->free);
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}

TermPtr let_pair(VarName x, VarName y, TermPtr m, TermPtr n) {
  Term t = leaf(TermKind::LetPair);
  t.free = merge(m->free, without(n->free, x, y));
  t.name = std::move(x);
  t.name2 = std::move(y);
  t.a = std::move(m);
  t.b = std::move(n);
  return make(std::move(t));
}

TermPtr tuple(const std::vector<TermPtr>& items) {
  if (items.size() < 2) throw std::invalid_argument("tuple needs at least two components");
  TermPtr acc = items.back();
  for (auto it = std::next(items.rbegin()); it != items.rend(); ++it) acc = pair(*it, acc);
  return acc;
}

bool is_register_name(std::string_view x) {
  if (x.size() < 2 || x[0] != 'p') return false;
  if (x.size() > 2 && x[1] == '0') return false;
  return std::all_of(x.begin() + 1, x.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

VarName register_name(std::size_t index) { return "p" + std::to_string(index); }

std::set<VarName> free_vars(const TermPtr& m) { return {m->free.begin(), m->free.end()}; }

bool is_value(const TermPtr& m) {
  switch (m->kind) {
    case TermKind::Var:
    case TermKind::Lam:
    case TermKind::Bit:
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Gate:
    case TermKind::Star:
      return true;
    case TermKind::Pair:
      return is_value(m->a) && is_value(m->b);
    default:
      return false;
  }
}

namespace {

// Bound variables are compared by binding depth; free ones by name.
struct AlphaScope {
  std::vector<std::pair<VarName, VarName>> stack;

  int depth_of(const VarName& x, bool left) const {
    for (std::size_t i = stack.size(); i-- > 0;) {
      if ((left ? stack[i].first : stack[i].second) == x) return static_cast<int>(i);
    }
    return -1;
  }
};

bool alpha_rec(const TermPtr& x, const TermPtr& y, AlphaScope& s) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TermKind::Var: {
      int dx = s.depth_of(x->name, true), dy = s.depth_of(y->name, false);
      if (dx != dy) return false;
      return dx >= 0 || x->name == y->name;
    }
    case TermKind::Bit:
      return x->value == y->value;
    case TermKind::Gate:
      return x->name == y->name && x->value == y->value;
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Star:
      return true;
    case TermKind::App:
    case TermKind::Pair:
      return alpha_rec(x->a, y->a, s) && alpha_rec(x->b, y->b, s);
    case TermKind::If:
      return alpha_rec(x->a, y->a, s) && alpha_rec(x->b, y->b, s) && alpha_rec(x->c, y->c, s);
    case TermKind::Lam: {
      s.stack.emplace_back(x->name, y->name);
      bool ok = alpha_rec(x->a, y->a, s);
      s.stack.pop_back();
      return ok;
    }
    case TermKind::LetPair: {
      if (!alpha_rec(x->a, y->a, s)) return false;
      s.stack.emplace_back(x->name, y->name);
      s.stack.emplace_back(x->name2, y->name2);
      bool ok = alpha_rec(x->b, y->b, s);
      s.stack.resize(s.stack.size() - 2);
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const TermPtr& x, const TermPtr& y) {
  AlphaScope s;
  return alpha_rec(x, y, s);
}

VarName fresh_name(const VarName& base, const std::set<VarName>& avoid) {
  // Strip an existing `_k` suffix so repeated renaming does not grow names.
  VarName stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<long>(us) + 1, stem.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    stem.erase(us);
  if (stem.empty()) stem = "v";
  if (!avoid.count(stem) && !is_register_name(stem) && stem != base) return stem;
  for (std::size_t k = 1;; ++k) {
    VarName cand = stem + "_" + std::to_string(k);
    if (!avoid.count(cand) && cand != base) return cand;
  }
}

namespace {

TermPtr subst_rec(const TermPtr& m, const std::map<VarName, TermPtr>& sigma);

// Free variables of the substituted images that could be captured.
std::set<VarName> image_free(const TermPtr& body, const std::map<VarName, TermPtr>& sigma) {
  std::set<VarName> out;
  for (const auto& [x, v] : sigma)
    if (body->has_free(x)) out.insert(v->free.begin(), v->free.end());
  return out;
}

std::map<VarName, TermPtr> restrict_to(const std::map<VarName, TermPtr>& sigma, const TermPtr& m,
                                       const std::vector<VarName>& bound) {
  std::map<VarName, TermPtr> out;
  for (const auto& [x, v] : sigma) {
    if (std::find(bound.begin(), bound.end(), x) != bound.end()) continue;
    if (m->has_free(x)) out.emplace(x, v);
  }
  return out;
}

// Renames `binder` if it would capture; returns the (possibly new) binder and
// extends sigma with the renaming.
VarName avoid_capture(const VarName& binder, const TermPtr& body, std::map<VarName, TermPtr>& sigma,
                      std::set<VarName>& avoid) {
  if (!avoid.count(binder)) return binder;
  std::set<VarName> all = avoid;
  all.insert(body->free.begin(), body->free.end());
  for (const auto& [x, v] : sigma) all.insert(x);
  VarName fresh = fresh_name(binder, all);
  sigma[binder] = var(fresh);
  avoid.insert(fresh);
  return fresh;
}

TermPtr subst_rec(const TermPtr& m, const std::map<VarName, TermPtr>& sigma) {
  if (sigma.empty()) return m;
  switch (m->kind) {
    case TermKind::Var: {
      auto it = sigma.find(m->name);
      return it == sigma.end() ? m : it->second;
    }
    case TermKind::Bit:
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Gate:
    case TermKind::Star:
      return m;
    case TermKind::App:
      return app(subst_rec(m->a, restrict_to(sigma, m->a, {})), subst_rec(m->b, restrict_to(sigma, m->b, {})));
    case TermKind::Pair:
      return pair(subst_rec(m->a, restrict_to(sigma, m->a, {})), subst_rec(m->b, restrict_to(sigma, m->b, {})));
    case TermKind::If:
      return cond(subst_rec(m->a, restrict_to(sigma, m->a, {})), subst_rec(m->b, restrict_to(sigma, m->b, {})),
                  subst_rec(m->c, restrict_to(sigma, m->c, {})));
    case TermKind::Lam: {
      auto inner = restrict_to(sigma, m->a, {m->name});
      if (inner.empty()) return m;
      auto avoid = image_free(m->a, inner);
      VarName x = avoid_capture(m->name, m->a, inner, avoid);
      return lam(x, subst_rec(m->a, inner));
    }
    case TermKind::LetPair: {
      TermPtr head = subst_rec(m->a, restrict_to(sigma, m->a, {}));
      auto inner = restrict_to(sigma, m->b, {m->name, m->name2});
      if (inner.empty()) return let_pair(m->name, m->name2, head, m->b);
      auto avoid = image_free(m->b, inner);
      VarName x = avoid_capture(m->name, m->b, inner, avoid);
      avoid.insert(x);
      VarName y = avoid_capture(m->name2, m->b, inner, avoid);
      return let_pair(x, y, head, subst_rec(m->b, inner));
    }
  }
  return m;
}

}  // namespace

TermPtr substitute(const TermPtr& m, const std::map<VarName, TermPtr>& sigma) {
  return subst_rec(m, restrict_to(sigma, m, {}));
}

TermPtr substitute(const TermPtr& m, const VarName& x, const TermPtr& v) { return substitute(m, {{x, v}}); }

TermPtr rename_free(const TermPtr& m, const std::map<VarName, VarName>& renaming) {
  std::map<VarName, TermPtr> sigma;
  for (const auto& [from, to] : renaming)
    if (from != to) sigma.emplace(from, var(to));
  return substitute(m, sigma);
}

namespace {

TermPtr normalize_rec(const TermPtr& m, std::map<VarName, VarName>& env, std::size_t& counter) {
  auto bind = [&](const VarName& x) {
    VarName canon = "%" + std::to_string(counter++);
    auto prev = env.find(x);
    std::optional<VarName> saved;
    if (prev != env.end()) saved = prev->second;
    env[x] = canon;
    return std::pair{canon, saved};
  };
  auto unbind = [&](const VarName& x, const std::optional<VarName>& saved) {
    if (saved) env[x] = *saved;
    else env.erase(x);
  };
  switch (m->kind) {
    case TermKind::Var: {
      auto it = env.find(m->name);
      return it == env.end() ? m : var(it->second);
    }
    case TermKind::Bit:
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Gate:
    case TermKind::Star:
      return m;
    case TermKind::App: {
      auto f = normalize_rec(m->a, env, counter);
      return app(f, normalize_rec(m->b, env, counter));
    }
    case TermKind::Pair: {
      auto f = normalize_rec(m->a, env, counter);
      return pair(f, normalize_rec(m->b, env, counter));
    }
    case TermKind::If: {
      auto p = normalize_rec(m->a, env, counter);
      auto t = normalize_rec(m->b, env, counter);
      return cond(p, t, normalize_rec(m->c, env, counter));
    }
    case TermKind::Lam: {
      auto [canon, saved] = bind(m->name);
      auto body = normalize_rec(m->a, env, counter);
      unbind(m->name, saved);
      return lam(canon, body);
    }
    case TermKind::LetPair: {
      auto head = normalize_rec(m->a, env, counter);
      auto [cx, sx] = bind(m->name);
      auto [cy, sy] = bind(m->name2);
      auto body = normalize_rec(m->b, env, counter);
      unbind(m->name2, sy);
      unbind(m->name, sx);
      return let_pair(cx, cy, head, body);
    }
  }
  return m;
}

}  // namespace

TermPtr alpha_normalize(const TermPtr& m) {
  std::map<VarName, VarName> env;
  std::size_t counter = 0;
  return normalize_rec(m, env, counter);
}

std::size_t term_size(const TermPtr& m) {
  if (!m) return 0;
  return 1 + term_size(m->a) + term_size(m->b) + term_size(m->c);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool is_binder_form(const TermPtr& m) {
  return m->kind == TermKind::Lam || m->kind == TermKind::If || m->kind == TermKind::LetPair;
}

void print(const TermPtr& m, std::string& out);

void print_atom(const TermPtr& m, std::string& out) {
  if (m->kind == TermKind::App || is_binder_form(m)) {
    out += '(';
    print(m, out);
    out += ')';
  } else {
    print(m, out);
  }
}

void print(const TermPtr& m, std::string& out) {
  switch (m->kind) {
    case TermKind::Var:
    case TermKind::Gate:
      out += m->name;
      return;
    case TermKind::Bit:
      out += m->value ? '1' : '0';
      return;
    case TermKind::Meas:
      out += "meas";
      return;
    case TermKind::New:
      out += "new";
      return;
    case TermKind::Star:
      out += '*';
      return;
    case TermKind::App:
      if (is_binder_form(m->a)) print_atom(m->a, out);
      else print(m->a, out);
      out += ' ';
      print_atom(m->b, out);
      return;
    case TermKind::Lam:
      out += '\\';
      out += m->name;
      out += '.';
      print(m->a, out);
      return;
    case TermKind::If:
      out += "if ";
      print(m->a, out);
      out += " then ";
      print(m->b, out);
      out += " else ";
      print(m->c, out);
      return;
    case TermKind::Pair: {
      out += '<';
      print(m->a, out);
      TermPtr rest = m->b;
      while (rest->kind == TermKind::Pair) {
        out += ", ";
        print(rest->a, out);
        rest = rest->b;
      }
      out += ", ";
      print(rest, out);
      out += '>';
      return;
    }
    case TermKind::LetPair:
      out += "let <" + m->name + ", " + m->name2 + "> = ";
      print(m->a, out);
      out += " in ";
      print(m->b, out);
      return;
  }
}

}  // namespace

std::string pretty(const TermPtr& m) {
  std::string out;
  print(m, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(const std::string& what, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

enum class Tok { Ident, Bit, Lambda, Dot, LParen, RParen, LAngle, RAngle, Comma, Star, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (ch == '0' || ch == '1') {
      if (i + 1 < src.size() && std::isalnum(static_cast<unsigned char>(src[i + 1])))
        throw ParseError("malformed bit literal", l, c);
      out.push_back({Tok::Bit, std::string(1, ch), l, c});
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "\xCE\xBB") {  // UTF-8 lambda
      out.push_back({Tok::Lambda, "\\", l, c});
      advance(2);
      continue;
    }
    Tok k;
    switch (ch) {
      case '\\': k = Tok::Lambda; break;
      case '.': k = Tok::Dot; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case ',': k = Tok::Comma; break;
      case '*': k = Tok::Star; break;
      case '=': k = Tok::Equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
    out.push_back({k, std::string(1, ch), l, c});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "if" || s == "then" || s == "else" || s == "let" || s == "in" || s == "meas" || s == "new";
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const GateTable& gates, ParseOptions opts)
      : toks_(std::move(toks)), gates_(gates), opts_(opts) {}

  TermPtr program() {
    if (peek().kind == Tok::End) throw error("empty program");
    TermPtr t = term();
    if (peek().kind != Tok::End) throw error("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  ParseError error(const std::string& msg) const { return ParseError(msg, peek().line, peek().column); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw error(std::string("expected ") + what);
    ++pos_;
  }
  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) throw error(std::string("expected '") + kw + "'");
    ++pos_;
  }

  VarName binder() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) throw error("expected a variable name");
    if (is_register_name(t.text)) throw error("'" + t.text + "' is a reserved register name and cannot be bound");
    ++pos_;
    return t.text;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
        return !is_keyword(peek().text) || peek().text == "meas" || peek().text == "new";
      case Tok::Bit:
      case Tok::LParen:
      case Tok::LAngle:
      case Tok::Star:
        return true;
      default:
        return false;
    }
  }

  bool starts_binder_form() const {
    return peek().kind == Tok::Lambda || at_keyword("if") || at_keyword("let");
  }

  TermPtr term() {
    if (peek().kind == Tok::Lambda) return lambda();
    if (at_keyword("if")) return if_term();
    if (at_keyword("let")) return let_term();
    return application();
  }

  TermPtr application() {
    if (!starts_atom()) throw error(peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    TermPtr t = atom();
    while (true) {
      if (starts_atom()) {
        t = app(t, atom());
      } else if (starts_binder_form()) {
        // A trailing lambda/if/let extends as far right as possible.
        t = app(t, term());
        break;
      } else {
        break;
      }
    }
    return t;
  }

  TermPtr lambda() {
    expect(Tok::Lambda, "'\\'");
    struct Param {
      VarName name;
      std::optional<std::pair<VarName, VarName>> pattern;
    };
    std::vector<Param> params;
    while (peek().kind != Tok::Dot) {
      if (peek().kind == Tok::LAngle) {
        ++pos_;
        VarName x = binder();
        expect(Tok::Comma, "','");
        VarName y = binder();
        if (x == y) throw error("pattern binds '" + x + "' twice");
        expect(Tok::RAngle, "'>'");
        params.push_back({"", std::pair{x, y}});
      } else {
        params.push_back({binder(), std::nullopt});
      }
    }
    if (params.empty()) throw error("lambda needs a parameter");
    expect(Tok::Dot, "'.'");
    std::size_t pushed = 0;
    for (const auto& p : params) {
      if (p.pattern) {
        scope_.push_back(p.pattern->first);
        scope_.push_back(p.pattern->second);
        pushed += 2;
      } else {
        scope_.push_back(p.name);
        ++pushed;
      }
    }
    TermPtr body = term();
    scope_.resize(scope_.size() - pushed);
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      if (it->pattern) {
        std::set<VarName> avoid(body->free.begin(), body->free.end());
        avoid.insert(it->pattern->first);
        avoid.insert(it->pattern->second);
        VarName z = fresh_name("z", avoid);
        body = lam(z, let_pair(it->pattern->first, it->pattern->second, var(z), body));
      } else {
        body = lam(it->name, body);
      }
    }
    return body;
  }

  TermPtr if_term() {
    expect_keyword("if");
    TermPtr p = term();
    expect_keyword("then");
    TermPtr m = term();
    expect_keyword("else");
    TermPtr n = term();
    return cond(p, m, n);
  }

  TermPtr let_term() {
    expect_keyword("let");
    if (peek().kind == Tok::LAngle) {
      ++pos_;
      VarName x = binder();
      expect(Tok::Comma, "','");
      VarName y = binder();
      if (x == y) throw error("let binds '" + x + "' twice");
      expect(Tok::RAngle, "'>'");
      expect(Tok::Equals, "'='");
      TermPtr m = term();
      expect_keyword("in");
      scope_.push_back(x);
      scope_.push_back(y);
      TermPtr n = term();
      scope_.resize(scope_.size() - 2);
      return let_pair(x, y, m, n);
    }
    VarName f = binder();
    expect(Tok::Equals, "'='");
    TermPtr m = term();
    expect_keyword("in");
    scope_.push_back(f);
    TermPtr n = term();
    scope_.pop_back();
    return app(lam(f, n), m);
  }

  TermPtr atom() {
    const Token t = next();
    switch (t.kind) {
      case Tok::Bit:
        return bit(t.text == "1");
      case Tok::Star:
        return star();
      case Tok::LParen: {
        TermPtr inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::LAngle: {
        std::vector<TermPtr> items{term()};
        while (peek().kind == Tok::Comma) {
          ++pos_;
          items.push_back(term());
        }
        expect(Tok::RAngle, "'>' or ','");
        if (items.size() < 2) throw ParseError("a tuple needs at least two components", t.line, t.column);
        return tuple(items);
      }
      case Tok::Ident:
        return identifier(t);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
    }
  }

  TermPtr identifier(const Token& t) {
    if (t.text == "meas") return meas();
    if (t.text == "new") return new_();
    if (std::find(scope_.begin(), scope_.end(), t.text) != scope_.end()) return var(t.text);
    if (const Gate* g = gates_.find(t.text)) return gate(g->name, g->arity);
    if (is_register_name(t.text)) {
      if (!opts_.allow_registers)
        throw ParseError("'" + t.text + "' is a reserved register name", t.line, t.column);
      return var(t.text);
    }
    if (std::isupper(static_cast<unsigned char>(t.text[0])) && !opts_.allow_free_capitalized)
      throw ParseError("unknown gate '" + t.text + "'", t.line, t.column);
    return var(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const GateTable& gates_;
  ParseOptions opts_;
  std::vector<VarName> scope_;
};

}  // namespace

TermPtr parse(std::string_view source, const GateTable& gates, ParseOptions options) {
  Parser p(lex(source), gates, options);
  return p.program();
}

}  // namespace qlam
