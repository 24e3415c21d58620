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

#include "qlam/types.hpp"

#include <algorithm>
#include <cctype>

namespace qlam {

bool operator==(const QType& a, const QType& b) {
  if (a.bangs != b.bangs || a.head != b.head || a.name != b.name) return false;
  if (a.head == Head::Arrow || a.head == Head::Tensor) return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  return true;
}

bool operator==(const IType& a, const IType& b) {
  if (a.head != b.head || a.name != b.name) return false;
  if (a.head == Head::Arrow || a.head == Head::Tensor) return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
  return true;
}

namespace ty {

QType constant(std::string name, unsigned bangs) {
  return QType{bangs, Head::Const, std::move(name), nullptr, nullptr};
}
QType variable(std::string name, unsigned bangs) {
  return QType{bangs, Head::Var, std::move(name), nullptr, nullptr};
}
QType arrow(QType a, QType b, unsigned bangs) {
  return QType{bangs, Head::Arrow, {}, std::make_shared<const QType>(std::move(a)),
               std::make_shared<const QType>(std::move(b))};
}
QType tensor(QType a, QType b, unsigned bangs) {
  return QType{bangs, Head::Tensor, {}, std::make_shared<const QType>(std::move(a)),
               std::make_shared<const QType>(std::move(b))};
}
QType top(unsigned bangs) { return QType{bangs, Head::Top, {}, nullptr, nullptr}; }

QType qbits(int k) {
  QType acc = qbit();
  for (int i = 1; i < k; ++i) acc = tensor(qbit(), acc);
  return acc;
}

IType iconstant(std::string name) { return IType{Head::Const, std::move(name), nullptr, nullptr}; }
IType ivariable(std::string name) { return IType{Head::Var, std::move(name), nullptr, nullptr}; }
IType iarrow(IType a, IType b) {
  return IType{Head::Arrow, {}, std::make_shared<const IType>(std::move(a)), std::make_shared<const IType>(std::move(b))};
}
IType iproduct(IType a, IType b) {
  return IType{Head::Tensor, {}, std::make_shared<const IType>(std::move(a)), std::make_shared<const IType>(std::move(b))};
}
IType itop() { return IType{Head::Top, {}, nullptr, nullptr}; }

}  // namespace ty

QType add_bangs(QType a, unsigned n) {
  a.bangs += n;
  return a;
}

QType with_bangs(QType a, unsigned n) {
  a.bangs = n;
  return a;
}

bool subtype(const QType& a, const QType& b) {
  // (m = 0) or (n >= 1) at every node.
  if (b.bangs != 0 && a.bangs == 0) return false;
  if (a.head != b.head) return false;
  switch (a.head) {
    case Head::Const:
    case Head::Var:
      return a.name == b.name;
    case Head::Top:
      return true;
    case Head::Arrow:
      return subtype(*b.lhs, *a.lhs) && subtype(*a.rhs, *b.rhs);
    case Head::Tensor:
      return subtype(*a.lhs, *b.lhs) && subtype(*a.rhs, *b.rhs);
  }
  return false;
}

bool type_equiv(const QType& a, const QType& b) { return subtype(a, b) && subtype(b, a); }

IType skeleton(const QType& a) {
  switch (a.head) {
    case Head::Const: return ty::iconstant(a.name);
    case Head::Var: return ty::ivariable(a.name);
    case Head::Top: return ty::itop();
    case Head::Arrow: return ty::iarrow(skeleton(*a.lhs), skeleton(*a.rhs));
    case Head::Tensor: return ty::iproduct(skeleton(*a.lhs), skeleton(*a.rhs));
  }
  return ty::itop();
}

QType lift(const IType& u) {
  switch (u.head) {
    case Head::Const: return ty::constant(u.name);
    case Head::Var: return ty::variable(u.name);
    case Head::Top: return ty::top();
    case Head::Arrow: return ty::arrow(lift(*u.lhs), lift(*u.rhs));
    case Head::Tensor: return ty::tensor(lift(*u.lhs), lift(*u.rhs));
  }
  return ty::top();
}

QType decorate(const IType& u, const QType& a) {
  if (a.bangs > 0) return with_bangs(decorate(u, with_bangs(a, 0)), a.bangs);
  if (u.head == Head::Arrow && a.head == Head::Arrow)
    return ty::arrow(decorate(*u.lhs, *a.lhs), decorate(*u.rhs, *a.rhs));
  if (u.head == Head::Tensor && a.head == Head::Tensor)
    return ty::tensor(decorate(*u.lhs, *a.lhs), decorate(*u.rhs, *a.rhs));
  return lift(u);
}

QType single_bang(const QType& a) {
  QType out = a;
  out.bangs = a.bangs > 0 ? 1 : 0;
  if (a.head == Head::Arrow || a.head == Head::Tensor) {
    out.lhs = std::make_shared<const QType>(single_bang(*a.lhs));
    out.rhs = std::make_shared<const QType>(single_bang(*a.rhs));
  }
  return out;
}

void collect_variables(const QType& a, std::set<std::string>& out) {
  if (a.head == Head::Var) out.insert(a.name);
  if (a.lhs) collect_variables(*a.lhs, out);
  if (a.rhs) collect_variables(*a.rhs, out);
}

void collect_variables(const IType& u, std::set<std::string>& out) {
  if (u.head == Head::Var) out.insert(u.name);
  if (u.lhs) collect_variables(*u.lhs, out);
  if (u.rhs) collect_variables(*u.rhs, out);
}

QType constant_type(const Term& c) {
  switch (c.kind) {
    case TermKind::Bit: return ty::bit(1);
    case TermKind::New: return ty::arrow(ty::bit(), ty::qbit(), 1);
    case TermKind::Meas: return ty::arrow(ty::qbit(), ty::bit(1), 1);
    case TermKind::Gate: return ty::arrow(ty::qbits(c.value), ty::qbits(c.value), 1);
    default: throw std::invalid_argument("constant_type: not a constant");
  }
}

std::size_t position_count(const IType& u) {
  std::size_t n = 1;
  if (u.lhs) n += position_count(*u.lhs);
  if (u.rhs) n += position_count(*u.rhs);
  return n;
}

std::vector<QType> single_bang_decorations(const IType& u) {
  std::vector<QType> inner;
  switch (u.head) {
    case Head::Const:
    case Head::Var:
    case Head::Top:
      inner.push_back(lift(u));
      break;
    case Head::Arrow:
    case Head::Tensor: {
      auto ls = single_bang_decorations(*u.lhs);
      auto rs = single_bang_decorations(*u.rhs);
      inner.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) inner.push_back(u.head == Head::Arrow ? ty::arrow(l, r) : ty::tensor(l, r));
      break;
    }
  }
  std::vector<QType> out;
  out.reserve(inner.size() * 2);
  for (const auto& t : inner) {
    out.push_back(t);
    out.push_back(with_bangs(t, 1));
  }
  return out;
}

namespace {

QType meet(const QType& a, const QType& b);

QType join_rec(const QType& a, const QType& b) {
  QType out = a;
  out.bangs = (a.bangs > 0 && b.bangs > 0) ? 1 : 0;
  if (a.head == Head::Arrow) {
    out.lhs = std::make_shared<const QType>(meet(*a.lhs, *b.lhs));
    out.rhs = std::make_shared<const QType>(join_rec(*a.rhs, *b.rhs));
  } else if (a.head == Head::Tensor) {
    out.lhs = std::make_shared<const QType>(join_rec(*a.lhs, *b.lhs));
    out.rhs = std::make_shared<const QType>(join_rec(*a.rhs, *b.rhs));
  }
  return out;
}

QType meet(const QType& a, const QType& b) {
  QType out = a;
  out.bangs = (a.bangs > 0 || b.bangs > 0) ? 1 : 0;
  if (a.head == Head::Arrow) {
    out.lhs = std::make_shared<const QType>(join_rec(*a.lhs, *b.lhs));
    out.rhs = std::make_shared<const QType>(meet(*a.rhs, *b.rhs));
  } else if (a.head == Head::Tensor) {
    out.lhs = std::make_shared<const QType>(meet(*a.lhs, *b.lhs));
    out.rhs = std::make_shared<const QType>(meet(*a.rhs, *b.rhs));
  }
  return out;
}

}  // namespace

QType join(const QType& a, const QType& b) {
  if (!(skeleton(a) == skeleton(b))) throw std::invalid_argument("join: skeletons differ");
  return join_rec(single_bang(a), single_bang(b));
}

std::vector<QType> minimal_elements(std::vector<QType> types) {
  std::vector<QType> out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < types.size() && !dominated; ++j) {
      if (i == j) continue;
      if (subtype(types[j], types[i])) {
        // Among mutually equivalent entries keep the first one.
        dominated = !subtype(types[i], types[j]) || j < i;
      }
    }
    if (!dominated) out.push_back(types[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace {

// Precedence: 0 = arrow, 1 = tensor operand, 2 = atom.
void print(const QType& a, int prec, std::string& out) {
  const bool compound = a.head == Head::Arrow || a.head == Head::Tensor;
  for (unsigned i = 0; i < a.bangs; ++i) out += '!';
  const bool parens = compound && (a.bangs > 0 || (a.head == Head::Arrow && prec > 0) || (a.head == Head::Tensor && prec > 1));
  if (parens) out += '(';
  switch (a.head) {
    case Head::Const:
    case Head::Var:
      out += a.name;
      break;
    case Head::Top:
      out += 'T';
      break;
    case Head::Arrow:
      print(*a.lhs, 1, out);
      out += " -o ";
      print(*a.rhs, 0, out);
      break;
    case Head::Tensor:
      print(*a.lhs, 2, out);
      out += " (*) ";
      print(*a.rhs, 1, out);
      break;
  }
  if (parens) out += ')';
}

void print(const IType& u, int prec, std::string& out) {
  const bool parens = (u.head == Head::Arrow && prec > 0) || (u.head == Head::Tensor && prec > 1);
  if (parens) out += '(';
  switch (u.head) {
    case Head::Const:
    case Head::Var:
      out += u.name;
      break;
    case Head::Top:
      out += 'T';
      break;
    case Head::Arrow:
      print(*u.lhs, 1, out);
      out += " -> ";
      print(*u.rhs, 0, out);
      break;
    case Head::Tensor:
      print(*u.lhs, 2, out);
      out += " * ";
      print(*u.rhs, 1, out);
      break;
  }
  if (parens) out += ')';
}

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  QType parse() {
    QType t = arrow();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(s_.substr(i_, 1)) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw TypeParseError("type syntax error at offset " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  QType arrow() {
    QType l = tensor();
    if (eat("-o")) return ty::arrow(std::move(l), arrow());
    return l;
  }
  QType tensor() {
    QType l = prefix();
    if (eat("(*)")) return ty::tensor(std::move(l), tensor());
    return l;
  }
  QType prefix() {
    if (eat("!")) return add_bangs(prefix(), 1);
    return atom();
  }
  QType atom() {
    skip();
    if (s_.substr(i_, 3) != "(*)" && eat("(")) {
      QType t = arrow();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\'')) ++j;
    if (j == i_) fail(i_ == s_.size() ? "unexpected end of type" : "expected a type");
    std::string name(s_.substr(i_, j - i_));
    i_ = j;
    if (name == "T") return ty::top();
    if (std::isupper(static_cast<unsigned char>(name[0]))) return ty::variable(name);
    return ty::constant(name);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string to_string(const QType& a) {
  std::string out;
  print(a, 0, out);
  return out;
}

std::string to_string(const IType& u) {
  std::string out;
  print(u, 0, out);
  return out;
}

QType parse_type(std::string_view text) { return TypeParser(text).parse(); }

}  // namespace qlam
