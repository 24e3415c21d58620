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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlam/derivation.hpp"
#include "qlam/syntax.hpp"
#include "qlam/types.hpp"

namespace qlam {

using SimpleContext = std::map<VarName, IType>;

/// A simply-typed derivation. Nodes mirror the term structure: premises are
/// the immediate subterms in source order.
struct IDerivation {
  TermPtr term;
  SimpleContext context;
  IType type;
  /// Lam: {x}. LetPair: {x, y}. Empty otherwise.
  std::vector<IType> binder_types;
  std::vector<IDerivation> premises;
};

struct SimpleTypingFailure {
  enum class Kind { Unbound, Clash, Occurs } kind;
  std::string message;
  VarName variable;  // Unbound only
  IType expected, actual;  // the two types that failed to unify
};

struct SimpleTyping {
  std::optional<IDerivation> derivation;
  std::optional<SimpleTypingFailure> failure;
};

/// Principal simple typing by unification. Types in `context` and `expected`
/// are fixed: their variables are rigid. Unconstrained positions are
/// instantiated with fresh rigid variables X1, X2, ...
SimpleTyping infer_simple(const TermPtr& m, const SimpleContext& context = {},
                          const std::optional<IType>& expected = std::nullopt);

/// The single-bang decoration problem of a simply-typed derivation: one
/// boolean per type position of every node and binder, identified up to the
/// equalities the rules force, plus clauses for the remaining constraints.
/// Types of free variables are fixed by `context`. `pi` must outlive the
/// problem.
class DecorationProblem {
 public:
  DecorationProblem(const IDerivation& pi, const TypingContext& context);

  /// Number of independent flags.
  std::size_t flag_count() const { return flag_count_; }
  std::size_t clause_count() const { return clauses_.size(); }
  /// True when the constraints contain an empty clause.
  bool trivially_unsat() const { return empty_clause_; }

  /// Unit propagation with chronological backtracking, trying 1 before 0.
  /// `assumptions` fixes individual flags beforehand.
  std::optional<std::vector<bool>> solve(const std::map<std::size_t, bool>& assumptions = {}) const;

  bool satisfies(const std::vector<bool>& flags) const;

  /// The derivation obtained by reading every position's flag off `flags`.
  /// Valid exactly when `flags` satisfies the constraints.
  Derivation build(const std::vector<bool>& flags) const;
  QType root_type(const std::vector<bool>& flags) const;
  /// Flags of the root node's type positions, in preorder.
  std::vector<std::size_t> root_flags() const;

 private:
  struct Template {
    Head head;
    std::string name;
    int flag;  // >= 0: flag id; -1: fixed 0; -2: fixed 1
    int l = -1, r = -1;
  };
  struct Node {
    const IDerivation* source;
    int type;
    std::vector<int> binders;
    std::vector<int> premises;
  };
  using Lit = std::int32_t;  // +v+1 positive, -(v+1) negative

  int make_template(const IType& u);
  int fixed_template(const QType& a);
  int walk(const IDerivation& d, std::map<VarName, int>& env);
  void equate(int a, int b);
  void equate_inner(int a, int b);
  void subtype(int sub, int super);
  void add_clause(std::vector<std::pair<int, bool>> lits);
  QType read(int tmpl, const std::vector<bool>& flags) const;
  Derivation build_node(int node, const TypingContext& ctx, const std::vector<bool>& flags) const;
  int find(int f) const;
  void finalize();

  std::vector<Template> templates_;
  std::vector<Node> nodes_;
  mutable std::vector<int> parent_;
  std::vector<std::vector<std::pair<int, bool>>> raw_clauses_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<int> class_of_;  // flag id -> class index
  std::size_t flag_count_ = 0;
  bool empty_clause_ = false;
  TypingContext context_;
  int root_ = -1;
};

struct InferResult {
  std::optional<QType> type;
  std::optional<Derivation> derivation;
  /// 1: not simply typable (or unbound variable); 2: no decoration exists.
  int failed_phase = 0;
  std::string message;
  std::optional<IDerivation> simple;
  std::optional<SimpleTypingFailure> simple_failure;
};

/// Type inference for a term under a fixed context.
InferResult infer(const TermPtr& m, const TypingContext& context = {});

/// Every distinct root type reachable by some satisfying decoration.
std::vector<QType> infer_all(const TermPtr& m, const TypingContext& context = {});

}  // namespace qlam
