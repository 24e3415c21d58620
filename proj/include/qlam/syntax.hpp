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

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlam {

class GateTable;

using VarName = std::string;

enum class TermKind { Var, App, Lam, If, Bit, Meas, New, Gate, Star, Pair, LetPair };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable AST node. Children are shared between terms; the free-variable
/// set is computed once at construction.
struct Term {
  TermKind kind;
  std::string name;   // Var name, Lam binder, Gate name, first LetPair binder
  std::string name2;  // second LetPair binder
  int value = 0;      // Bit value, Gate arity
  TermPtr a, b, c;    // children in source order
  std::vector<VarName> free;  // sorted

  bool has_free(std::string_view x) const;
};

// Constructors.
TermPtr var(VarName x);
TermPtr app(TermPtr m, TermPtr n);
TermPtr lam(VarName x, TermPtr body);
TermPtr cond(TermPtr p, TermPtr m, TermPtr n);
TermPtr bit(int b);
TermPtr meas();
TermPtr new_();
TermPtr gate(std::string name, int arity);
TermPtr star();
TermPtr pair(TermPtr m, TermPtr n);
TermPtr let_pair(VarName x, VarName y, TermPtr m, TermPtr n);

/// Right-nested tuple <M1, <M2, ...>>; requires at least two components.
TermPtr tuple(const std::vector<TermPtr>& items);

/// Names `p0`, `p1`, ... refer to quantum registers.
bool is_register_name(std::string_view x);
VarName register_name(std::size_t index);

std::set<VarName> free_vars(const TermPtr& m);
bool is_value(const TermPtr& m);
bool alpha_equal(const TermPtr& x, const TermPtr& y);

/// Capture-avoiding substitution m[v/x].
TermPtr substitute(const TermPtr& m, const VarName& x, const TermPtr& v);
/// Simultaneous substitution.
TermPtr substitute(const TermPtr& m, const std::map<VarName, TermPtr>& sigma);
/// Renames free variables (not capture-avoiding for the targets; callers pass
/// fresh or register names).
TermPtr rename_free(const TermPtr& m, const std::map<VarName, VarName>& renaming);

/// A name derived from `base` that is not in `avoid` and is not a register.
VarName fresh_name(const VarName& base, const std::set<VarName>& avoid);

/// Binders renamed to a canonical sequence; alpha-equivalent terms map to
/// structurally identical results.
TermPtr alpha_normalize(const TermPtr& m);

std::string pretty(const TermPtr& m);

/// Size in nodes.
std::size_t term_size(const TermPtr& m);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column);
  int line;
  int column;
};

struct ParseOptions {
  /// Accept free `p_i` names (trace fixtures and tests only).
  bool allow_registers = false;
  /// Treat unknown capitalized identifiers as free variables.
  bool allow_free_capitalized = false;
};

/// Parses a `.qlam` source. Throws ParseError.
TermPtr parse(std::string_view source, const GateTable& gates, ParseOptions options = {});

}  // namespace qlam
