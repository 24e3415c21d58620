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

#include "qlam/typechecker.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>


namespace qlam {

const char* error_category(CheckError::Kind k) {
  switch (k) {
    case CheckError::Kind::UnboundVariable: return "unbound variable";
    case CheckError::Kind::LinearityViolation: return "linearity violation";
    case CheckError::Kind::SubtypeMismatch: return "subtype mismatch";
    case CheckError::Kind::Lambda2SideCondition: return "lambda2 side condition";
  }
  return "type error";
}

std::string format_error(const CheckError& e) {
  std::string out = error_category(e.kind);
  switch (e.kind) {
    case CheckError::Kind::UnboundVariable:
      out += ": '" + e.variable + "'";
      break;
    case CheckError::Kind::LinearityViolation:
      out += ": non-exponential variable '" + e.variable + "' is used more than once";
      break;
    case CheckError::Kind::Lambda2SideCondition:
      out += ": free variable '" + e.variable + "' of an exponential abstraction is not exponential";
      break;
    case CheckError::Kind::SubtypeMismatch:
      out += ": " + (e.actual ? to_string(*e.actual) : std::string("?")) + " is not a subtype of " +
             (e.expected ? to_string(*e.expected) : std::string("?"));
      break;
  }
  if (e.term) out += " in '" + pretty(e.term) + "'";
  if (!e.detail.empty()) out += " (" + e.detail + ")";
  return out;
}

namespace {

struct Failed {
  CheckError error;
};

[[noreturn]] void raise(CheckError::Kind k, const TermPtr& term, VarName var = {}, std::optional<QType> actual = {},
                        std::optional<QType> expected = {}, std::string detail = {}) {
  throw Failed{CheckError{k, std::move(var), std::move(actual), std::move(expected), term, std::move(detail)}};
}

using Types = std::vector<QType>;

TypingContext restrict_to(const TypingContext& ctx, const std::vector<VarName>& vars) {
  TypingContext out;
  for (const auto& x : vars) {
    auto it = ctx.find(x);
    if (it != ctx.end()) out.emplace(x, it->second);
  }
  return out;
}

std::vector<VarName> remove_binders(std::vector<VarName> vars, const VarName& x, const VarName& y) {
  vars.erase(std::remove_if(vars.begin(), vars.end(), [&](const VarName& v) { return v == x || v == y; }),
             vars.end());
  return vars;
}

std::vector<VarName> unite(const std::vector<VarName>& a, const std::vector<VarName>& b) {
  std::vector<VarName> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// The first non-exponential variable free in both sides, if any.
std::optional<VarName> shared_linear(const TypingContext& ctx, const std::vector<VarName>& a,
                                     const std::vector<VarName>& b) {
  std::vector<VarName> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  for (const auto& y : both) {
    auto it = ctx.find(y);
    if (it != ctx.end() && it->second.bangs == 0) return y;
  }
  return std::nullopt;
}

// Occurrence-driven split; exponential bindings are shared, unused linear
// bindings stay on the left.
std::pair<TypingContext, TypingContext> split(const TypingContext& ctx, const std::vector<VarName>& left,
                                              const std::vector<VarName>& right) {
  TypingContext l, r;
  for (const auto& [x, t] : ctx) {
    const bool in_r = std::binary_search(right.begin(), right.end(), x);
    const bool in_l = std::binary_search(left.begin(), left.end(), x);
    if (t.bangs > 0) {
      l.emplace(x, t);
      r.emplace(x, t);
    } else if (in_r && !in_l) {
      r.emplace(x, t);
    } else {
      l.emplace(x, t);
    }
  }
  return {l, r};
}

bool below_some(const Types& minimal, const QType& target) {
  return std::any_of(minimal.begin(), minimal.end(), [&](const QType& s) { return subtype(s, target); });
}

QType bang_binder(const QType& component, unsigned n) { return n == 0 ? component : add_bangs(component, n); }

// Syntax-directed checking over a skeleton elaborated by unification.
// synth computes, for a node and a context, the minimal single-bang types the
// node can be given; derivable types are exactly their upward closure.
class Checker {
 public:
  Types synth(const IDerivation& d, const TypingContext& full) {
    const TypingContext ctx = restrict_to(full, d.term->free);
    std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(&d)) + "|" + format_context(ctx);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Types out = minimal_elements(synth_uncached(d, ctx));
    memo_.emplace(std::move(key), out);
    return out;
  }

  bool can(const IDerivation& d, const TypingContext& ctx, const QType& target) {
    return below_some(synth(d, ctx), target);
  }

  Derivation derive(const IDerivation& d, const TypingContext& ctx, const QType& target) {
    const TermPtr& m = d.term;
    Derivation out{Rule::Top, ctx, m, target, {}};
    switch (m->kind) {
      case TermKind::Var: {
        const QType& have = ctx.at(m->name);
        if (!subtype(have, target)) raise(CheckError::Kind::SubtypeMismatch, m, {}, have, target);
        out.rule = Rule::Axiom1;
        return out;
      }
      case TermKind::Bit:
      case TermKind::Meas:
      case TermKind::New:
      case TermKind::Gate: {
        const QType have = constant_type(*m);
        if (!subtype(have, target)) raise(CheckError::Kind::SubtypeMismatch, m, {}, have, target);
        out.rule = Rule::Axiom2;
        return out;
      }
      case TermKind::Star:
        expect_head(m, target, Head::Top);
        out.rule = Rule::Top;
        return out;
      case TermKind::Lam: {
        expect_head(m, target, Head::Arrow);
        if (target.bangs == 0) {
          out.rule = Rule::Lambda1;
        } else {
          for (const auto& y : m->free)
            if (ctx.at(y).bangs == 0) raise(CheckError::Kind::Lambda2SideCondition, m, y);
          out.rule = Rule::Lambda2;
        }
        TypingContext inner = ctx;
        inner.insert_or_assign(m->name, target.left());
        out.premises.push_back(derive(d.premises[0], inner, target.right()));
        return out;
      }
      case TermKind::App:
        return derive_app(d, ctx, target);
      case TermKind::If: {
        const auto branches = unite(m->b->free, m->c->free);
        if (auto y = shared_linear(ctx, m->a->free, branches)) raise(CheckError::Kind::LinearityViolation, m, *y);
        auto [l, r] = split(ctx, m->a->free, branches);
        out.rule = Rule::If;
        out.premises.push_back(derive(d.premises[0], l, ty::bit()));
        out.premises.push_back(derive(d.premises[1], r, target));
        out.premises.push_back(derive(d.premises[2], r, target));
        return out;
      }
      case TermKind::Pair: {
        expect_head(m, target, Head::Tensor);
        if (auto y = shared_linear(ctx, m->a->free, m->b->free)) raise(CheckError::Kind::LinearityViolation, m, *y);
        auto [l, r] = split(ctx, m->a->free, m->b->free);
        out.rule = Rule::TensorIntro;
        out.premises.push_back(derive(d.premises[0], l, add_bangs(target.left(), target.bangs)));
        out.premises.push_back(derive(d.premises[1], r, add_bangs(target.right(), target.bangs)));
        return out;
      }
      case TermKind::LetPair:
        return derive_let(d, ctx, target);
    }
    throw std::logic_error("unknown term kind");
  }

 private:
  static void expect_head(const TermPtr& m, const QType& target, Head h) {
    if (target.head != h) raise(CheckError::Kind::SubtypeMismatch, m, {}, std::nullopt, target, "wrong type shape");
  }

  Types synth_uncached(const IDerivation& d, const TypingContext& ctx) {
    const Term& m = *d.term;
    switch (m.kind) {
      case TermKind::Var:
        return {single_bang(ctx.at(m.name))};
      case TermKind::Bit:
      case TermKind::Meas:
      case TermKind::New:
      case TermKind::Gate:
        return {single_bang(constant_type(m))};
      case TermKind::Star:
        return {ty::top(1)};
      case TermKind::Lam: {
        const bool duplicable = std::all_of(m.free.begin(), m.free.end(),
                                            [&](const VarName& y) { return ctx.at(y).bangs > 0; });
        Types out;
        for (const QType& a : single_bang_decorations(d.binder_types[0])) {
          TypingContext inner = ctx;
          inner.insert_or_assign(m.name, a);
          for (const QType& b : synth(d.premises[0], inner)) {
            out.push_back(ty::arrow(a, b));
            if (duplicable) out.push_back(ty::arrow(a, b, 1));
          }
        }
        return out;
      }
      case TermKind::App: {
        if (shared_linear(ctx, m.a->free, m.b->free)) return {};
        auto [l, r] = split(ctx, m.a->free, m.b->free);
        const Types args = synth(d.premises[1], r);
        Types out;
        const IDerivation& fn = d.premises[0];
        if (fn.term->kind == TermKind::Lam) {
          // A redex binds its variable at the argument's own minimal types.
          for (const QType& a : args) {
            TypingContext inner = l;
            inner.insert_or_assign(fn.term->name, a);
            for (const QType& b : synth(fn.premises[0], inner)) out.push_back(b);
          }
          return out;
        }
        for (const QType& f : synth(fn, l))
          for (const QType& a : args)
            if (subtype(a, f.left())) out.push_back(f.right());
        return out;
      }
      case TermKind::If: {
        const auto branches = unite(m.b->free, m.c->free);
        if (shared_linear(ctx, m.a->free, branches)) return {};
        auto [l, r] = split(ctx, m.a->free, branches);
        if (!can(d.premises[0], l, ty::bit())) return {};
        Types out;
        for (const QType& x : synth(d.premises[1], r))
          for (const QType& y : synth(d.premises[2], r)) out.push_back(join(x, y));
        return out;
      }
      case TermKind::Pair: {
        if (shared_linear(ctx, m.a->free, m.b->free)) return {};
        auto [l, r] = split(ctx, m.a->free, m.b->free);
        Types out;
        for (const QType& x : synth(d.premises[0], l))
          for (const QType& y : synth(d.premises[1], r)) {
            out.push_back(ty::tensor(x, y));
            if (x.bangs > 0 && y.bangs > 0) out.push_back(ty::tensor(x, y, 1));
          }
        return out;
      }
      case TermKind::LetPair: {
        const auto body_free = remove_binders(m.b->free, m.name, m.name2);
        if (shared_linear(ctx, m.a->free, body_free)) return {};
        auto [l, r] = split(ctx, m.a->free, body_free);
        Types out;
        for (const QType& s : synth(d.premises[0], l)) {
          TypingContext inner = r;
          inner.insert_or_assign(m.name, bang_binder(s.left(), s.bangs));
          inner.insert_or_assign(m.name2, bang_binder(s.right(), s.bangs));
          for (const QType& b : synth(d.premises[1], inner)) out.push_back(single_bang(b));
        }
        return out;
      }
    }
    return {};
  }

  // A fallback target used only to produce a diagnostic when no candidate works.
  static QType plain(const IDerivation& d) { return lift(d.type); }

  Derivation derive_app(const IDerivation& d, const TypingContext& ctx, const QType& target) {
    const TermPtr& m = d.term;
    if (auto y = shared_linear(ctx, m->a->free, m->b->free)) raise(CheckError::Kind::LinearityViolation, m, *y);
    auto [l, r] = split(ctx, m->a->free, m->b->free);
    const IDerivation& fn = d.premises[0];
    const IDerivation& arg = d.premises[1];
    const Types args = synth(arg, r);

    std::optional<QType> chosen;
    for (const QType& a : args) {
      bool ok;
      if (fn.term->kind == TermKind::Lam) {
        TypingContext inner = l;
        inner.insert_or_assign(fn.term->name, a);
        ok = can(fn.premises[0], inner, target);
      } else {
        ok = can(fn, l, ty::arrow(a, target));
      }
      if (ok) {
        chosen = a;
        break;
      }
    }
    if (!chosen) {
      if (args.empty()) {
        QType want = plain(arg);
        if (fn.term->kind != TermKind::Lam) {
          const Types fns = synth(fn, l);
          if (!fns.empty()) want = fns.front().left();
        }
        derive(arg, r, want);  // expected to raise
        chosen = want;
      } else {
        chosen = args.front();
      }
    }
    Derivation out{Rule::App, ctx, m, target, {}};
    out.premises.push_back(derive(fn, l, ty::arrow(*chosen, target)));
    out.premises.push_back(derive(arg, r, *chosen));
    return out;
  }

  Derivation derive_let(const IDerivation& d, const TypingContext& ctx, const QType& target) {
    const TermPtr& m = d.term;
    const auto body_free = remove_binders(m->b->free, m->name, m->name2);
    if (auto y = shared_linear(ctx, m->a->free, body_free)) raise(CheckError::Kind::LinearityViolation, m, *y);
    auto [l, r] = split(ctx, m->a->free, body_free);
    const Types scrutinees = synth(d.premises[0], l);
    auto bind = [&](const QType& s) {
      TypingContext inner = r;
      inner.insert_or_assign(m->name, bang_binder(s.left(), s.bangs));
      inner.insert_or_assign(m->name2, bang_binder(s.right(), s.bangs));
      return inner;
    };
    std::optional<QType> chosen;
    for (const QType& s : scrutinees) {
      if (can(d.premises[1], bind(s), target)) {
        chosen = s;
        break;
      }
    }
    if (!chosen) {
      if (scrutinees.empty()) {
        derive(d.premises[0], l, plain(d.premises[0]));  // expected to raise
        chosen = plain(d.premises[0]);
      } else {
        chosen = scrutinees.front();
      }
    }
    Derivation out{Rule::TensorElim, ctx, m, target, {}};
    out.premises.push_back(derive(d.premises[0], l, *chosen));
    out.premises.push_back(derive(d.premises[1], bind(*chosen), target));
    return out;
  }

  std::unordered_map<std::string, Types> memo_;
};

SimpleContext skeleton_context(const TypingContext& ctx) {
  SimpleContext out;
  for (const auto& [x, t] : ctx) out.emplace(x, skeleton(t));
  return out;
}

}  // namespace

CheckError simple_typing_error(const SimpleTypingFailure& f, const TermPtr& m) {
  if (f.kind == SimpleTypingFailure::Kind::Unbound)
    return CheckError{CheckError::Kind::UnboundVariable, f.variable, std::nullopt, std::nullopt, m, {}};
  return CheckError{CheckError::Kind::SubtypeMismatch, {}, lift(f.actual), lift(f.expected), m,
                    f.kind == SimpleTypingFailure::Kind::Occurs ? "occurs check" : ""};
}

CheckResult check(const TypingContext& ctx, const TermPtr& m, const QType& a) {
  CheckResult result;
  for (const auto& x : m->free) {
    if (!ctx.count(x)) {
      result.error = CheckError{CheckError::Kind::UnboundVariable, x, std::nullopt, std::nullopt, m, {}};
      return result;
    }
  }
  SimpleTyping simple = infer_simple(m, skeleton_context(ctx), skeleton(a));
  if (!simple.derivation) {
    result.error = simple_typing_error(*simple.failure, m);
    return result;
  }
  try {
    Checker checker;
    Derivation d = checker.derive(*simple.derivation, ctx, a);
    if (auto bad = verify(d)) throw std::logic_error("checker built an invalid derivation: " + *bad);
    result.derivation = std::move(d);
  } catch (const Failed& f) {
    result.error = f.error;
  }
  return result;
}

bool well_typed_program(const TermPtr& term, const QType& b) {
  TypingContext delta;
  for (const auto& x : term->free) delta.emplace(x, ty::qbit());
  return static_cast<bool>(check(delta, term, b));
}

bool substitution_check(const TypingContext& ctx1, const TypingContext& bang_delta, const VarName& x,
                        const QType& a, const TermPtr& m, const QType& b, const TypingContext& ctx2,
                        const TermPtr& v) {
  TypingContext left = ctx1;
  left.insert(bang_delta.begin(), bang_delta.end());
  TypingContext right = ctx2;
  right.insert(bang_delta.begin(), bang_delta.end());
  TypingContext premise = left;
  premise.insert_or_assign(x, a);
  if (!check(premise, m, b) || !check(right, v, a)) return false;
  TypingContext joined = left;
  joined.insert(ctx2.begin(), ctx2.end());
  return static_cast<bool>(check(joined, substitute(m, x, v), b));
}

}  // namespace qlam
