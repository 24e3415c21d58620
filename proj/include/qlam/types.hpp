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

#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlam/syntax.hpp"

namespace qlam {

enum class Head { Const, Var, Arrow, Tensor, Top };

/// A linear type in bang-normalized form: `bangs` outer exponentials applied
/// to a head. Children are shared and immutable.
struct QType {
  unsigned bangs = 0;
  Head head = Head::Top;
  std::string name;  // constant or variable name
  std::shared_ptr<const QType> lhs, rhs;

  const QType& left() const { return *lhs; }
  const QType& right() const { return *rhs; }

  friend bool operator==(const QType& a, const QType& b);
};

/// An intuitionistic type: the same heads, no exponentials.
struct IType {
  Head head = Head::Top;
  std::string name;
  std::shared_ptr<const IType> lhs, rhs;

  const IType& left() const { return *lhs; }
  const IType& right() const { return *rhs; }

  friend bool operator==(const IType& a, const IType& b);
};

namespace ty {

QType constant(std::string name, unsigned bangs = 0);
QType variable(std::string name, unsigned bangs = 0);
QType arrow(QType a, QType b, unsigned bangs = 0);
QType tensor(QType a, QType b, unsigned bangs = 0);
QType top(unsigned bangs = 0);
inline QType bit(unsigned bangs = 0) { return constant("bit", bangs); }
inline QType qbit(unsigned bangs = 0) { return constant("qbit", bangs); }
/// qbit (x) (qbit (x) ...), k >= 1 factors.
QType qbits(int k);

IType iconstant(std::string name);
IType ivariable(std::string name);
IType iarrow(IType a, IType b);
IType iproduct(IType a, IType b);
IType itop();

}  // namespace ty

/// !^n A.
QType add_bangs(QType a, unsigned n);
QType with_bangs(QType a, unsigned n);

/// Decides A <: B with the reversible, bang-counting rule set.
bool subtype(const QType& a, const QType& b);
bool type_equiv(const QType& a, const QType& b);

IType skeleton(const QType& a);
QType lift(const IType& u);
/// U decorated along A.
QType decorate(const IType& u, const QType& a);

/// Collapses repeated exponentials (every bang count becomes 0 or 1); the
/// result is equivalent to the input.
QType single_bang(const QType& a);

/// Type-variable names occurring in a type.
void collect_variables(const QType& a, std::set<std::string>& out);
void collect_variables(const IType& u, std::set<std::string>& out);

/// The type A_c of a constant term (0, 1, new, meas, gate).
QType constant_type(const Term& c);

/// Number of type positions (nodes) in the type tree.
std::size_t position_count(const IType& u);
/// Every single-bang decoration of `u` (2^positions of them).
std::vector<QType> single_bang_decorations(const IType& u);

/// Least upper bound of two single-bang decorations of the same skeleton.
QType join(const QType& a, const QType& b);

/// Minimal elements under <:, duplicates removed.
std::vector<QType> minimal_elements(std::vector<QType> types);

std::string to_string(const QType& a);
std::string to_string(const IType& u);

struct TypeParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Concrete syntax: bit, qbit, T (top), other lowercase names are constants,
/// capitalized names are type variables; `!A`, `A (*) B`, `A -o B`.
QType parse_type(std::string_view text);

}  // namespace qlam
