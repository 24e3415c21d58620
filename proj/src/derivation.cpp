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

#include "qlam/derivation.hpp"

namespace qlam {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom1: return "ax1";
    case Rule::Axiom2: return "ax2";
    case Rule::If: return "if";
    case Rule::App: return "app";
    case Rule::Lambda1: return "lambda1";
    case Rule::Lambda2: return "lambda2";
    case Rule::TensorIntro: return "(*).I";
    case Rule::TensorIntroBang: return "(*).I'";
    case Rule::Top: return "T";
    case Rule::TensorElim: return "(*).E";
    case Rule::TensorElimBang: return "(*).E'";
  }
  return "?";
}

namespace {

using Failure = std::optional<std::string>;

Failure fail(const Derivation& d, const std::string& why) {
  return std::string(rule_name(d.rule)) + " at '" + pretty(d.term) + "': " + why;
}

bool same_outside_bangs(const QType& a, const QType& b) { return with_bangs(a, 0) == with_bangs(b, 0); }

// The conclusion context must be exactly the union of the parts, and any
// variable shared between parts must carry an exponential.
Failure check_split(const Derivation& d, const std::vector<const TypingContext*>& parts) {
  std::map<VarName, int> uses;
  for (const auto* part : parts) {
    for (const auto& [x, t] : *part) {
      auto it = d.context.find(x);
      if (it == d.context.end()) return fail(d, "premise binds '" + x + "' which is not in the conclusion context");
      if (!(it->second == t)) return fail(d, "premise changes the type of '" + x + "'");
      ++uses[x];
    }
  }
  for (const auto& [x, t] : d.context) {
    auto it = uses.find(x);
    if (it == uses.end()) return fail(d, "'" + x + "' is dropped from every premise");
    if (it->second > 1 && t.bangs == 0) return fail(d, "non-exponential '" + x + "' is shared between premises");
  }
  return std::nullopt;
}

TypingContext without(TypingContext ctx, const VarName& x, const VarName& y = {}) {
  ctx.erase(x);
  if (!y.empty()) ctx.erase(y);
  return ctx;
}

Failure check_extended(const Derivation& d, const Derivation& p, const TypingContext& base,
                       const std::vector<std::pair<VarName, QType>>& added) {
  TypingContext expected = base;
  for (const auto& [x, t] : added) expected.erase(x);
  for (const auto& [x, t] : added) expected.insert_or_assign(x, t);
  if (p.context != expected) return fail(d, "premise context is not the conclusion context extended by the binders");
  return std::nullopt;
}

Failure check_term(const Derivation& d, std::size_t i, const TermPtr& expected) {
  if (d.premises.size() <= i) return fail(d, "missing premise");
  if (d.premises[i].term != expected && !alpha_equal(d.premises[i].term, expected))
    return fail(d, "premise " + std::to_string(i) + " concludes about the wrong subterm");
  return std::nullopt;
}

Failure check_arity(const Derivation& d, std::size_t n) {
  if (d.premises.size() != n) return fail(d, "expected " + std::to_string(n) + " premises");
  return std::nullopt;
}

// Premise type P and component C of a single-bang pair rule: P = !A', C = !^t A'.
bool bang_component(const QType& premise, const QType& component) {
  if (premise.bangs < 1) return false;
  if (!same_outside_bangs(premise, component)) return false;
  return component.bangs == premise.bangs || component.bangs + 1 == premise.bangs;
}

Failure verify_node(const Derivation& d) {
  const Term& m = *d.term;
  switch (d.rule) {
    case Rule::Axiom1: {
      if (auto f = check_arity(d, 0)) return f;
      if (m.kind != TermKind::Var) return fail(d, "term is not a variable");
      auto it = d.context.find(m.name);
      if (it == d.context.end()) return fail(d, "variable not in context");
      if (!subtype(it->second, d.type))
        return fail(d, to_string(it->second) + " is not a subtype of " + to_string(d.type));
      return std::nullopt;
    }
    case Rule::Axiom2: {
      if (auto f = check_arity(d, 0)) return f;
      if (m.kind != TermKind::Bit && m.kind != TermKind::New && m.kind != TermKind::Meas && m.kind != TermKind::Gate)
        return fail(d, "term is not a constant");
      const QType ac = constant_type(m);
      if (!subtype(ac, d.type)) return fail(d, to_string(ac) + " is not a subtype of " + to_string(d.type));
      return std::nullopt;
    }
    case Rule::Top:
      if (auto f = check_arity(d, 0)) return f;
      if (m.kind != TermKind::Star) return fail(d, "term is not *");
      if (d.type.head != Head::Top) return fail(d, "type is not !^n T");
      return std::nullopt;
    case Rule::Lambda1:
    case Rule::Lambda2: {
      if (auto f = check_arity(d, 1)) return f;
      if (m.kind != TermKind::Lam) return fail(d, "term is not an abstraction");
      if (auto f = check_term(d, 0, m.a)) return f;
      if (d.type.head != Head::Arrow) return fail(d, "type is not an arrow");
      if (d.rule == Rule::Lambda1 && d.type.bangs != 0) return fail(d, "lambda1 concludes a non-exponential arrow");
      if (d.rule == Rule::Lambda2) {
        if (d.type.bangs == 0) return fail(d, "lambda2 concludes an exponential arrow");
        for (const auto& y : m.free) {
          auto it = d.context.find(y);
          if (it == d.context.end()) return fail(d, "free variable '" + y + "' not in context");
          if (it->second.bangs == 0) return fail(d, "side condition: free variable '" + y + "' is not exponential");
        }
      }
      const Derivation& p = d.premises[0];
      if (auto f = check_extended(d, p, d.context, {{m.name, d.type.left()}})) return f;
      if (!(p.type == d.type.right())) return fail(d, "body type differs from the arrow's codomain");
      return std::nullopt;
    }
    case Rule::App: {
      if (auto f = check_arity(d, 2)) return f;
      if (m.kind != TermKind::App) return fail(d, "term is not an application");
      if (auto f = check_term(d, 0, m.a)) return f;
      if (auto f = check_term(d, 1, m.b)) return f;
      const QType& ft = d.premises[0].type;
      if (ft.head != Head::Arrow || ft.bangs != 0) return fail(d, "function premise is not typed A -o B");
      if (!(ft.right() == d.type)) return fail(d, "function codomain differs from the conclusion");
      if (!(ft.left() == d.premises[1].type)) return fail(d, "argument type differs from the function domain");
      return check_split(d, {&d.premises[0].context, &d.premises[1].context});
    }
    case Rule::If: {
      if (auto f = check_arity(d, 3)) return f;
      if (m.kind != TermKind::If) return fail(d, "term is not a conditional");
      for (std::size_t i = 0; i < 3; ++i)
        if (auto f = check_term(d, i, i == 0 ? m.a : (i == 1 ? m.b : m.c))) return f;
      if (!(d.premises[0].type == ty::bit())) return fail(d, "condition is not typed bit");
      if (!(d.premises[1].type == d.type) || !(d.premises[2].type == d.type))
        return fail(d, "branch types differ from the conclusion");
      if (d.premises[1].context != d.premises[2].context) return fail(d, "branches use different contexts");
      return check_split(d, {&d.premises[0].context, &d.premises[1].context});
    }
    case Rule::TensorIntro:
    case Rule::TensorIntroBang: {
      if (auto f = check_arity(d, 2)) return f;
      if (m.kind != TermKind::Pair) return fail(d, "term is not a pair");
      if (auto f = check_term(d, 0, m.a)) return f;
      if (auto f = check_term(d, 1, m.b)) return f;
      if (d.type.head != Head::Tensor) return fail(d, "type is not a tensor");
      if (d.rule == Rule::TensorIntro) {
        for (int i = 0; i < 2; ++i) {
          const QType& comp = i == 0 ? d.type.left() : d.type.right();
          if (!(d.premises[i].type == add_bangs(comp, d.type.bangs)))
            return fail(d, "component premise is not typed !^n A_i");
        }
      } else {
        if (d.type.bangs != 1) return fail(d, "single-bang introduction concludes !(A (*) B)");
        for (int i = 0; i < 2; ++i)
          if (!bang_component(d.premises[i].type, i == 0 ? d.type.left() : d.type.right()))
            return fail(d, "component premise is not typed !A_i");
      }
      return check_split(d, {&d.premises[0].context, &d.premises[1].context});
    }
    case Rule::TensorElim:
    case Rule::TensorElimBang: {
      if (auto f = check_arity(d, 2)) return f;
      if (m.kind != TermKind::LetPair) return fail(d, "term is not a let");
      if (m.name == m.name2) return fail(d, "let binds the same name twice");
      if (auto f = check_term(d, 0, m.a)) return f;
      if (auto f = check_term(d, 1, m.b)) return f;
      const QType& st = d.premises[0].type;
      if (st.head != Head::Tensor) return fail(d, "scrutinee is not a tensor");
      const Derivation& body = d.premises[1];
      if (!(body.type == d.type)) return fail(d, "body type differs from the conclusion");
      auto b1 = body.context.find(m.name);
      auto b2 = body.context.find(m.name2);
      if (b1 == body.context.end() || b2 == body.context.end()) return fail(d, "body context lacks the let binders");
      if (d.rule == Rule::TensorElim) {
        if (!(b1->second == add_bangs(st.left(), st.bangs)) || !(b2->second == add_bangs(st.right(), st.bangs)))
          return fail(d, "binders are not typed !^n A_i");
      } else {
        if (st.bangs != 1) return fail(d, "single-bang elimination needs a !(A (*) B) scrutinee");
        if (!bang_component(b1->second, st.left()) || !bang_component(b2->second, st.right()))
          return fail(d, "binders are not typed !A_i");
      }
      TypingContext rest = without(body.context, m.name, m.name2);
      // Bindings shadowed by the let binders may only live in the scrutinee part.
      return check_split(d, {&d.premises[0].context, &rest});
    }
  }
  return fail(d, "unknown rule");
}

Failure verify_rec(const Derivation& d) {
  if (auto f = verify_node(d)) return f;
  for (const auto& p : d.premises)
    if (auto f = verify_rec(p)) return f;
  return std::nullopt;
}

void format_rec(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '(';
  out += rule_name(d.rule);
  out += ") ";
  out += format_context(d.context);
  out += " |- ";
  out += pretty(d.term);
  out += " : ";
  out += to_string(d.type);
  out += '\n';
  for (const auto& p : d.premises) format_rec(p, depth + 1, out);
}

}  // namespace

std::optional<std::string> verify(const Derivation& d) { return verify_rec(d); }

std::string format_context(const TypingContext& ctx) {
  std::string out;
  bool first = true;
  for (const auto& [x, t] : ctx) {
    if (!first) out += ", ";
    first = false;
    out += x + ":" + to_string(t);
  }
  return out;
}

std::string format_derivation(const Derivation& d) {
  std::string out;
  format_rec(d, 0, out);
  return out;
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

}  // namespace qlam
