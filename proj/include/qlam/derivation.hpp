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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlam/syntax.hpp"
#include "qlam/types.hpp"

namespace qlam {

using TypingContext = std::map<VarName, QType>;

enum class Rule {
  Axiom1,           // variable, with subsumption
  Axiom2,           // constant, with subsumption
  If,
  App,
  Lambda1,
  Lambda2,          // !^(n+1)(A -o B), free variables of the body banged
  TensorIntro,
  TensorIntroBang,  // derived single-bang pair introduction
  Top,
  TensorElim,
  TensorElimBang,   // derived single-bang pair elimination
};

/// A typing derivation tree: each node records the judgment it concludes.
struct Derivation {
  Rule rule;
  TypingContext context;
  TermPtr term;
  QType type;
  std::vector<Derivation> premises;
};

const char* rule_name(Rule r);

/// Re-validates every node against its rule instance. Returns a description
/// of the first offending node, or nothing if the derivation is valid.
std::optional<std::string> verify(const Derivation& d);

std::string format_derivation(const Derivation& d);
std::string format_context(const TypingContext& ctx);

std::size_t derivation_size(const Derivation& d);

}  // namespace qlam
