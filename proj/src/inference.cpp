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

#include "qlam/inference.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace qlam {

namespace {

// ---------------------------------------------------------------------------
// Simple types by unification.

struct UNode {
  Head head;
  std::string name;
  int l = -1, r = -1;
  bool flex = false;
};

struct Mismatch {
  int expected, actual;
  bool occurs;
};

class Unifier {
 public:
  int flex() { return push({Head::Var, "", -1, -1, true}); }
  int make(Head h, std::string name = {}, int l = -1, int r = -1) { return push({h, std::move(name), l, r, false}); }

  int from(const IType& u) {
    switch (u.head) {
      case Head::Arrow:
      case Head::Tensor: {
        int l = from(u.left());
        int r = from(u.right());
        return make(u.head, {}, l, r);
      }
      default:
        return make(u.head, u.name);
    }
  }

  int find(int t) const {
    while (nodes_[t].flex && link_[t] >= 0) t = link_[t];
    return t;
  }

  // Throws Mismatch on failure; `expected` and `actual` orient the report.
  void unify(int expected, int actual) {
    int a = find(expected), b = find(actual);
    if (a == b) return;
    if (nodes_[a].flex) return bind(a, b, expected, actual);
    if (nodes_[b].flex) return bind(b, a, expected, actual);
    const UNode &x = nodes_[a], &y = nodes_[b];
    if (x.head != y.head || x.name != y.name) throw Mismatch{a, b, false};
    if (x.l >= 0) {
      unify(x.l, y.l);
      unify(x.r, y.r);
    }
  }

  IType resolve(int t, std::map<int, std::string>& residual, const std::function<std::string()>& fresh) const {
    t = find(t);
    const UNode& n = nodes_[t];
    if (n.flex) {
      auto it = residual.find(t);
      if (it == residual.end()) it = residual.emplace(t, fresh()).first;
      return ty::ivariable(it->second);
    }
    switch (n.head) {
      case Head::Arrow: {
        IType a = resolve(n.l, residual, fresh);
        return ty::iarrow(a, resolve(n.r, residual, fresh));
      }
      case Head::Tensor: {
        IType a = resolve(n.l, residual, fresh);
        return ty::iproduct(a, resolve(n.r, residual, fresh));
      }
      case Head::Const: return ty::iconstant(n.name);
      case Head::Var: return ty::ivariable(n.name);
      case Head::Top: return ty::itop();
    }
    return ty::itop();
  }

 private:
  int push(UNode n) {
    nodes_.push_back(std::move(n));
    link_.push_back(-1);
    return static_cast<int>(nodes_.size()) - 1;
  }
  bool occurs(int v, int t) const {
    t = find(t);
    if (t == v) return true;
    const UNode& n = nodes_[t];
    return n.l >= 0 && (occurs(v, n.l) || occurs(v, n.r));
  }
  void bind(int v, int t, int expected, int actual) {
    if (occurs(v, t)) throw Mismatch{find(expected), find(actual), true};
    link_[v] = t;
  }

  std::vector<UNode> nodes_;
  std::vector<int> link_;
};

struct Proto {
  TermPtr term;
  std::map<VarName, int> context;
  int type = -1;
  std::vector<int> binders;
  std::vector<Proto> premises;
};

struct Unbound {
  VarName name;
};

class SimpleInference {
 public:
  explicit SimpleInference(Unifier& u) : u_(u) {}

  Proto run(const TermPtr& m, std::map<VarName, int>& env) {
    Proto p;
    p.term = m;
    p.context = env;
    switch (m->kind) {
      case TermKind::Var: {
        auto it = env.find(m->name);
        if (it == env.end()) throw Unbound{m->name};
        p.type = it->second;
        break;
      }
      case TermKind::Bit:
      case TermKind::Meas:
      case TermKind::New:
      case TermKind::Gate:
        p.type = u_.from(skeleton(constant_type(*m)));
        break;
      case TermKind::Star:
        p.type = u_.make(Head::Top);
        break;
      case TermKind::Lam: {
        int x = u_.flex();
        p.binders = {x};
        p.premises.push_back(with_bound(m->a, env, {{m->name, x}}));
        p.type = u_.make(Head::Arrow, {}, x, p.premises[0].type);
        break;
      }
      case TermKind::App: {
        p.premises.push_back(run(m->a, env));
        p.premises.push_back(run(m->b, env));
        p.type = u_.flex();
        u_.unify(p.premises[0].type, u_.make(Head::Arrow, {}, p.premises[1].type, p.type));
        break;
      }
      case TermKind::If: {
        p.premises.push_back(run(m->a, env));
        p.premises.push_back(run(m->b, env));
        p.premises.push_back(run(m->c, env));
        u_.unify(u_.from(ty::iconstant("bit")), p.premises[0].type);
        u_.unify(p.premises[1].type, p.premises[2].type);
        p.type = p.premises[1].type;
        break;
      }
      case TermKind::Pair: {
        p.premises.push_back(run(m->a, env));
        p.premises.push_back(run(m->b, env));
        p.type = u_.make(Head::Tensor, {}, p.premises[0].type, p.premises[1].type);
        break;
      }
      case TermKind::LetPair: {
        p.premises.push_back(run(m->a, env));
        int x = u_.flex(), y = u_.flex();
        p.binders = {x, y};
        u_.unify(u_.make(Head::Tensor, {}, x, y), p.premises[0].type);
        p.premises.push_back(with_bound(m->b, env, {{m->name, x}, {m->name2, y}}));
        p.type = p.premises[1].type;
        break;
      }
    }
    return p;
  }

 private:
  Proto with_bound(const TermPtr& body, std::map<VarName, int>& env,
                   const std::vector<std::pair<VarName, int>>& bindings) {
    std::map<VarName, int> inner = env;
    for (const auto& [x, t] : bindings) inner.insert_or_assign(x, t);
    return run(body, inner);
  }

  Unifier& u_;
};

IDerivation resolve_tree(const Proto& p, const Unifier& u, std::map<int, std::string>& residual,
                         const std::function<std::string()>& fresh) {
  IDerivation d;
  d.term = p.term;
  d.type = u.resolve(p.type, residual, fresh);
  for (const auto& [x, t] : p.context) d.context.emplace(x, u.resolve(t, residual, fresh));
  for (int b : p.binders) d.binder_types.push_back(u.resolve(b, residual, fresh));
  for (const auto& q : p.premises) d.premises.push_back(resolve_tree(q, u, residual, fresh));
  return d;
}

}  // namespace

SimpleTyping infer_simple(const TermPtr& m, const SimpleContext& context, const std::optional<IType>& expected) {
  Unifier u;
  std::set<std::string> taken;
  std::map<VarName, int> env;
  for (const auto& [x, t] : context) {
    collect_variables(t, taken);
    env.emplace(x, u.from(t));
  }
  if (expected) collect_variables(*expected, taken);

  int counter = 0;
  auto fresh = [&]() {
    std::string name;
    do name = "X" + std::to_string(++counter);
    while (taken.count(name));
    return name;
  };

  SimpleTyping result;
  std::map<int, std::string> residual;
  try {
    SimpleInference inf(u);
    Proto root = inf.run(m, env);
    if (expected) u.unify(u.from(*expected), root.type);
    // Name residual variables in the root type first so they read X1, X2, ...
    u.resolve(root.type, residual, fresh);
    result.derivation = resolve_tree(root, u, residual, fresh);
  } catch (const Unbound& e) {
    result.failure = SimpleTypingFailure{SimpleTypingFailure::Kind::Unbound, "unbound variable '" + e.name + "'",
                                         e.name, ty::itop(), ty::itop()};
  } catch (const Mismatch& e) {
    IType a = u.resolve(e.expected, residual, fresh);
    IType b = u.resolve(e.actual, residual, fresh);
    std::string msg = e.occurs ? "occurs check: " + to_string(a) + " occurs in " + to_string(b)
                               : "cannot unify " + to_string(b) + " with " + to_string(a);
    result.failure = SimpleTypingFailure{
        e.occurs ? SimpleTypingFailure::Kind::Occurs : SimpleTypingFailure::Kind::Clash, msg, {}, a, b};
  }
  return result;
}

// ---------------------------------------------------------------------------
// Decoration constraints.

namespace {
constexpr int kFixed0 = -1;
constexpr int kFixed1 = -2;

std::vector<VarName> intersect(const std::vector<VarName>& a, const std::vector<VarName>& b) {
  std::vector<VarName> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<VarName> unite(const std::vector<VarName>& a, const std::vector<VarName>& b) {
  std::vector<VarName> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<VarName> minus(std::vector<VarName> a, const VarName& x, const VarName& y) {
  a.erase(std::remove_if(a.begin(), a.end(), [&](const VarName& v) { return v == x || v == y; }), a.end());
  return a;
}
}  // namespace

DecorationProblem::DecorationProblem(const IDerivation& pi, const TypingContext& context) : context_(context) {
  std::map<VarName, int> env;
  for (const auto& [x, t] : context) env.emplace(x, fixed_template(single_bang(t)));
  root_ = walk(pi, env);
  finalize();
}

int DecorationProblem::make_template(const IType& u) {
  Template t{u.head, u.name, static_cast<int>(parent_.size())};
  parent_.push_back(t.flag);
  if (u.head == Head::Arrow || u.head == Head::Tensor) {
    t.l = make_template(u.left());
    t.r = make_template(u.right());
  }
  templates_.push_back(t);
  return static_cast<int>(templates_.size()) - 1;
}

int DecorationProblem::fixed_template(const QType& a) {
  Template t{a.head, a.name, a.bangs > 0 ? kFixed1 : kFixed0};
  if (a.head == Head::Arrow || a.head == Head::Tensor) {
    t.l = fixed_template(a.left());
    t.r = fixed_template(a.right());
  }
  templates_.push_back(t);
  return static_cast<int>(templates_.size()) - 1;
}

int DecorationProblem::find(int f) const {
  while (parent_[f] != f) {
    parent_[f] = parent_[parent_[f]];
    f = parent_[f];
  }
  return f;
}

void DecorationProblem::equate(int a, int b) {
  const Template ta = templates_[a], tb = templates_[b];
  if (ta.flag >= 0 && tb.flag >= 0) {
    parent_[find(ta.flag)] = find(tb.flag);
  } else {
    add_clause({{ta.flag, false}, {tb.flag, true}});
    add_clause({{ta.flag, true}, {tb.flag, false}});
  }
  equate_inner(a, b);
}

void DecorationProblem::equate_inner(int a, int b) {
  const Template ta = templates_[a], tb = templates_[b];
  if (ta.l >= 0 && tb.l >= 0) {
    equate(ta.l, tb.l);
    equate(ta.r, tb.r);
  }
}

// (m = 0) or (n >= 1) at each position, polarity flipping at arrow domains.
void DecorationProblem::subtype(int sub, int super) {
  const Template ts = templates_[sub], tp = templates_[super];
  add_clause({{tp.flag, false}, {ts.flag, true}});
  if (ts.l < 0 || tp.l < 0) return;
  if (ts.head == Head::Arrow) {
    subtype(tp.l, ts.l);
  } else {
    subtype(ts.l, tp.l);
  }
  subtype(ts.r, tp.r);
}

void DecorationProblem::add_clause(std::vector<std::pair<int, bool>> lits) {
  std::vector<std::pair<int, bool>> kept;
  for (const auto& [f, positive] : lits) {
    if (f >= 0) {
      kept.emplace_back(f, positive);
      continue;
    }
    const bool value = f == kFixed1;
    if (value == positive) return;  // satisfied
  }
  if (kept.empty()) empty_clause_ = true;
  raw_clauses_.push_back(std::move(kept));
}

int DecorationProblem::walk(const IDerivation& d, std::map<VarName, int>& env) {
  const Term& m = *d.term;
  const int self = make_template(d.type);
  Node node{&d, self, {}, {}};
  auto flag = [&](int tmpl) { return templates_[tmpl].flag; };
  auto share = [&](const std::vector<VarName>& vars) {
    for (const auto& y : vars) add_clause({{flag(env.at(y)), true}});
  };
  auto pair_component = [&](int premise, int component, int f) {
    equate_inner(premise, component);
    const int p = flag(premise), c = flag(component);
    add_clause({{f, false}, {p, true}});
    add_clause({{c, false}, {p, true}});
    add_clause({{p, false}, {f, true}, {c, true}});
  };

  switch (m.kind) {
    case TermKind::Var:
      subtype(env.at(m.name), self);
      break;
    case TermKind::Bit:
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Gate:
      subtype(fixed_template(constant_type(m)), self);
      break;
    case TermKind::Star:
      break;
    case TermKind::Lam: {
      const int b = make_template(d.binder_types.at(0));
      node.binders = {b};
      std::map<VarName, int> inner = env;
      inner.insert_or_assign(m.name, b);
      const int body = walk(d.premises.at(0), inner);
      node.premises = {body};
      equate(b, templates_[self].l);
      equate(nodes_[body].type, templates_[self].r);
      for (const auto& y : m.free) add_clause({{flag(self), false}, {flag(env.at(y)), true}});
      break;
    }
    case TermKind::App: {
      const int fn = walk(d.premises.at(0), env);
      const int arg = walk(d.premises.at(1), env);
      node.premises = {fn, arg};
      const int ft = nodes_[fn].type;
      add_clause({{flag(ft), false}});
      equate(templates_[ft].l, nodes_[arg].type);
      equate(templates_[ft].r, self);
      share(intersect(m.a->free, m.b->free));
      break;
    }
    case TermKind::If: {
      const int p = walk(d.premises.at(0), env);
      const int t = walk(d.premises.at(1), env);
      const int e = walk(d.premises.at(2), env);
      node.premises = {p, t, e};
      add_clause({{flag(nodes_[p].type), false}});
      equate(nodes_[t].type, self);
      equate(nodes_[e].type, self);
      share(intersect(m.a->free, unite(m.b->free, m.c->free)));
      break;
    }
    case TermKind::Pair: {
      const int x = walk(d.premises.at(0), env);
      const int y = walk(d.premises.at(1), env);
      node.premises = {x, y};
      pair_component(nodes_[x].type, templates_[self].l, flag(self));
      pair_component(nodes_[y].type, templates_[self].r, flag(self));
      share(intersect(m.a->free, m.b->free));
      break;
    }
    case TermKind::LetPair: {
      const int s = walk(d.premises.at(0), env);
      const int st = nodes_[s].type;
      const int bx = make_template(d.binder_types.at(0));
      const int by = make_template(d.binder_types.at(1));
      node.binders = {bx, by};
      pair_component(bx, templates_[st].l, flag(st));
      pair_component(by, templates_[st].r, flag(st));
      std::map<VarName, int> inner = env;
      inner.insert_or_assign(m.name, bx);
      inner.insert_or_assign(m.name2, by);
      const int body = walk(d.premises.at(1), inner);
      node.premises = {s, body};
      equate(nodes_[body].type, self);
      share(intersect(m.a->free, minus(m.b->free, m.name, m.name2)));
      break;
    }
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

void DecorationProblem::finalize() {
  class_of_.assign(parent_.size(), -1);
  std::map<int, int> root_class;
  for (std::size_t f = 0; f < parent_.size(); ++f) {
    const int r = find(static_cast<int>(f));
    auto it = root_class.find(r);
    if (it == root_class.end()) it = root_class.emplace(r, static_cast<int>(root_class.size())).first;
    class_of_[f] = it->second;
  }
  flag_count_ = root_class.size();
  std::set<std::vector<Lit>> seen;
  for (const auto& raw : raw_clauses_) {
    std::vector<Lit> c;
    bool tautology = false;
    for (const auto& [f, positive] : raw) {
      const Lit l = positive ? class_of_[f] + 1 : -(class_of_[f] + 1);
      if (std::find(c.begin(), c.end(), -l) != c.end()) tautology = true;
      if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
    }
    if (tautology) continue;
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) clauses_.push_back(std::move(c));
  }
}

namespace {

using Values = std::vector<signed char>;  // -1 unassigned

bool propagate(const std::vector<std::vector<std::int32_t>>& clauses, Values& val) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : clauses) {
      int unassigned = 0;
      std::int32_t last = 0;
      bool sat = false;
      for (std::int32_t l : c) {
        const int v = std::abs(l) - 1;
        if (val[v] < 0) {
          ++unassigned;
          last = l;
        } else if ((val[v] == 1) == (l > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        val[std::abs(last) - 1] = last > 0 ? 1 : 0;
        changed = true;
      }
    }
  }
  return true;
}

bool search(const std::vector<std::vector<std::int32_t>>& clauses, Values& val) {
  if (!propagate(clauses, val)) return false;
  auto it = std::find(val.begin(), val.end(), static_cast<signed char>(-1));
  if (it == val.end()) return true;
  const auto v = static_cast<std::size_t>(it - val.begin());
  for (signed char b : {1, 0}) {
    Values trial = val;
    trial[v] = b;
    if (search(clauses, trial)) {
      val = std::move(trial);
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<bool>> DecorationProblem::solve(const std::map<std::size_t, bool>& assumptions) const {
  if (empty_clause_) return std::nullopt;
  Values val(flag_count_, -1);
  for (const auto& [v, b] : assumptions) val.at(v) = b ? 1 : 0;
  if (!search(clauses_, val)) return std::nullopt;
  return std::vector<bool>(val.begin(), val.end());
}

bool DecorationProblem::satisfies(const std::vector<bool>& flags) const {
  if (empty_clause_) return false;
  for (const auto& c : clauses_) {
    bool sat = false;
    for (std::int32_t l : c) sat = sat || (flags[std::abs(l) - 1] == (l > 0));
    if (!sat) return false;
  }
  return true;
}

QType DecorationProblem::read(int tmpl, const std::vector<bool>& flags) const {
  const Template& t = templates_[tmpl];
  unsigned bangs = 0;
  if (t.flag == kFixed1) bangs = 1;
  else if (t.flag >= 0) bangs = flags.at(class_of_[t.flag]) ? 1 : 0;
  switch (t.head) {
    case Head::Arrow: return ty::arrow(read(t.l, flags), read(t.r, flags), bangs);
    case Head::Tensor: return ty::tensor(read(t.l, flags), read(t.r, flags), bangs);
    case Head::Const: return ty::constant(t.name, bangs);
    case Head::Var: return ty::variable(t.name, bangs);
    case Head::Top: return ty::top(bangs);
  }
  return ty::top(bangs);
}

namespace {

// Occurrence-driven split: exponential bindings go to both sides, others to
// the side that uses them (both if both do, so the verifier can reject it).
std::pair<TypingContext, TypingContext> split(const TypingContext& ctx, const std::vector<VarName>& left,
                                              const std::vector<VarName>& right) {
  TypingContext l, r;
  for (const auto& [x, t] : ctx) {
    const bool in_l = std::binary_search(left.begin(), left.end(), x);
    const bool in_r = std::binary_search(right.begin(), right.end(), x);
    if (t.bangs > 0 || (in_l && in_r)) {
      l.emplace(x, t);
      r.emplace(x, t);
    } else if (in_r) {
      r.emplace(x, t);
    } else {
      l.emplace(x, t);
    }
  }
  return {l, r};
}

}  // namespace

Derivation DecorationProblem::build_node(int index, const TypingContext& ctx, const std::vector<bool>& flags) const {
  const Node& node = nodes_[index];
  const Term& m = *node.source->term;
  Derivation d{Rule::Top, ctx, node.source->term, read(node.type, flags), {}};
  auto bang_pair = [&](const QType& tensor) {
    return tensor.bangs > 0 && (tensor.left().bangs > 0 || tensor.right().bangs > 0);
  };
  switch (m.kind) {
    case TermKind::Var:
      d.rule = Rule::Axiom1;
      break;
    case TermKind::Bit:
    case TermKind::Meas:
    case TermKind::New:
    case TermKind::Gate:
      d.rule = Rule::Axiom2;
      break;
    case TermKind::Star:
      d.rule = Rule::Top;
      break;
    case TermKind::Lam: {
      d.rule = d.type.bangs > 0 ? Rule::Lambda2 : Rule::Lambda1;
      TypingContext inner = ctx;
      inner.insert_or_assign(m.name, read(node.binders[0], flags));
      d.premises.push_back(build_node(node.premises[0], inner, flags));
      break;
    }
    case TermKind::App: {
      d.rule = Rule::App;
      auto [l, r] = split(ctx, m.a->free, m.b->free);
      d.premises.push_back(build_node(node.premises[0], l, flags));
      d.premises.push_back(build_node(node.premises[1], r, flags));
      break;
    }
    case TermKind::If: {
      d.rule = Rule::If;
      auto [l, r] = split(ctx, m.a->free, unite(m.b->free, m.c->free));
      d.premises.push_back(build_node(node.premises[0], l, flags));
      d.premises.push_back(build_node(node.premises[1], r, flags));
      d.premises.push_back(build_node(node.premises[2], r, flags));
      break;
    }
    case TermKind::Pair: {
      d.rule = bang_pair(d.type) ? Rule::TensorIntroBang : Rule::TensorIntro;
      auto [l, r] = split(ctx, m.a->free, m.b->free);
      d.premises.push_back(build_node(node.premises[0], l, flags));
      d.premises.push_back(build_node(node.premises[1], r, flags));
      break;
    }
    case TermKind::LetPair: {
      auto [l, r] = split(ctx, m.a->free, minus(m.b->free, m.name, m.name2));
      d.premises.push_back(build_node(node.premises[0], l, flags));
      d.rule = bang_pair(d.premises[0].type) ? Rule::TensorElimBang : Rule::TensorElim;
      r.insert_or_assign(m.name, read(node.binders[0], flags));
      r.insert_or_assign(m.name2, read(node.binders[1], flags));
      d.premises.push_back(build_node(node.premises[1], r, flags));
      break;
    }
  }
  return d;
}

Derivation DecorationProblem::build(const std::vector<bool>& flags) const {
  if (flags.size() != flag_count_) throw std::invalid_argument("decoration: wrong number of flags");
  return build_node(root_, context_, flags);
}

QType DecorationProblem::root_type(const std::vector<bool>& flags) const { return read(nodes_[root_].type, flags); }

std::vector<std::size_t> DecorationProblem::root_flags() const {
  std::vector<std::size_t> out;
  std::function<void(int)> rec = [&](int t) {
    const Template& tp = templates_[t];
    if (tp.flag >= 0) {
      const auto c = static_cast<std::size_t>(class_of_[tp.flag]);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    if (tp.l >= 0) {
      rec(tp.l);
      rec(tp.r);
    }
  };
  rec(nodes_[root_].type);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

SimpleContext skeleton_context(const TypingContext& ctx) {
  SimpleContext out;
  for (const auto& [x, t] : ctx) out.emplace(x, skeleton(t));
  return out;
}

}  // namespace

InferResult infer(const TermPtr& m, const TypingContext& context) {
  InferResult result;
  SimpleTyping simple = infer_simple(m, skeleton_context(context));
  if (!simple.derivation) {
    result.failed_phase = 1;
    result.message = simple.failure->message;
    result.simple_failure = simple.failure;
    return result;
  }
  result.simple = simple.derivation;
  DecorationProblem problem(*simple.derivation, context);
  auto flags = problem.solve();
  if (!flags) {
    result.failed_phase = 2;
    result.message = "no exponential decoration of the simple typing is a valid derivation";
    return result;
  }
  Derivation d = problem.build(*flags);
  if (auto bad = verify(d)) throw std::logic_error("inference produced an invalid derivation: " + *bad);
  result.type = d.type;
  result.derivation = std::move(d);
  return result;
}

std::vector<QType> infer_all(const TermPtr& m, const TypingContext& context) {
  std::vector<QType> out;
  SimpleTyping simple = infer_simple(m, skeleton_context(context));
  if (!simple.derivation) return out;
  DecorationProblem problem(*simple.derivation, context);
  const auto roots = problem.root_flags();
  if (roots.size() > 20) throw std::length_error("too many root positions to enumerate");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << roots.size()); ++mask) {
    std::map<std::size_t, bool> assume;
    for (std::size_t i = 0; i < roots.size(); ++i) assume[roots[i]] = (mask >> i) & 1U;
    if (auto flags = problem.solve(assume)) {
      QType t = problem.root_type(*flags);
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace qlam
