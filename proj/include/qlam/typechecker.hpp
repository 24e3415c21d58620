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

#include <optional>
#include <string>

#include "qlam/derivation.hpp"
#include "qlam/inference.hpp"
#include "qlam/syntax.hpp"
#include "qlam/types.hpp"

namespace qlam {

struct CheckError {
  enum class Kind { UnboundVariable, LinearityViolation, SubtypeMismatch, Lambda2SideCondition } kind;
  VarName variable;  // unbound, linearity and side-condition errors
  std::optional<QType> actual, expected;  // subtype mismatches
  TermPtr term;  // the subterm where the failure was detected
  std::string detail;
};

const char* error_category(CheckError::Kind k);
std::string format_error(const CheckError& e);

/// The checker's report for a term with no simple typing.
CheckError simple_typing_error(const SimpleTypingFailure& f, const TermPtr& m);

struct CheckResult {
  std::optional<Derivation> derivation;
  std::optional<CheckError> error;

  explicit operator bool() const { return derivation.has_value(); }
};

/// Decides ctx |> m : a. On success the derivation has been re-validated by
/// the rule-instance verifier.
CheckResult check(const TypingContext& ctx, const TermPtr& m, const QType& a);

/// The term checked at `b` in the context binding each free variable to qbit.
bool well_typed_program(const TermPtr& term, const QType& b);

/// Given ctx1, !delta, x:a |> m : b and ctx2, !delta |> v : a, whether
/// ctx1, ctx2, !delta |> m[v/x] : b. Returns false if a premise fails.
bool substitution_check(const TypingContext& ctx1, const TypingContext& bang_delta, const VarName& x,
                        const QType& a, const TermPtr& m, const QType& b, const TypingContext& ctx2,
                        const TermPtr& v);

}  // namespace qlam
