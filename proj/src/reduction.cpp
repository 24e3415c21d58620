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

#include "qlam/reduction.hpp"

#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>

#include "qlam/typechecker.hpp"

namespace qlam {

ProgramState initial_state(TermPtr m) { return ProgramState{QuantumState(), {}, std::move(m)}; }

namespace {

struct Local {
  StepKind kind;
  std::vector<Successor> branches;
  std::string error;
};

Local value() { return {StepKind::Value, {}, {}}; }
Local error(std::string why) { return {StepKind::Error, {}, std::move(why)}; }
Local single(const ProgramState& s, TermPtr t) { return {StepKind::Reducible, {{{s.q, s.link, std::move(t)}, 1.0}}, {}}; }

// Lifts the successors of a subterm through a one-hole context.
Local wrap(Local inner, const std::function<TermPtr(TermPtr)>& plug) {
  for (auto& b : inner.branches) b.state.term = plug(b.state.term);
  return inner;
}

// Register indices of a gate argument <p_j1, <p_j2, ...>> of the given arity.
bool register_tuple(const TermPtr& v, int arity, const Linking& link, std::vector<std::size_t>& out) {
  TermPtr cur = v;
  for (int i = 0; i < arity; ++i) {
    TermPtr item = cur;
    if (i + 1 < arity) {
      if (cur->kind != TermKind::Pair) return false;
      item = cur->a;
      cur = cur->b;
    }
    if (item->kind != TermKind::Var) return false;
    auto it = link.find(item->name);
    if (it == link.end()) return false;
    out.push_back(it->second);
  }
  return true;
}

Local apply_redex(const ProgramState& s, const TermPtr& f, const TermPtr& v, const GateTable& gates) {
  switch (f->kind) {
    case TermKind::Lam:
      return single(s, substitute(f->a, f->name, v));
    case TermKind::Gate: {
      const Gate* g = gates.find(f->name);
      if (!g) return error("unknown gate " + f->name);
      std::vector<std::size_t> idx;
      if (!register_tuple(v, g->arity, s.link, idx))
        return error("gate " + f->name + " applied to " + pretty(v) + ", not a tuple of " +
                     std::to_string(g->arity) + " registers");
      if (std::set<std::size_t>(idx.begin(), idx.end()).size() != idx.size())
        return error("gate " + f->name + " applied to a repeated register in " + pretty(v));
      return {StepKind::Reducible, {{{apply_gate(s.q, *g, idx), s.link, v}, 1.0}}, {}};
    }
    case TermKind::Meas: {
      if (v->kind != TermKind::Var || !s.link.count(v->name)) return error("meas applied to " + pretty(v));
      Local out{StepKind::Reducible, {}, {}};
      for (auto& b : measure(s.q, s.link.at(v->name)))
        out.branches.push_back({{std::move(b.collapsed), s.link, bit(b.outcome)}, b.probability});
      return out;
    }
    case TermKind::New: {
      if (v->kind != TermKind::Bit) return error("new applied to " + pretty(v));
      auto [q, index] = new_qubit(s.q, v->value);
      std::set<VarName> taken;
      for (const auto& [x, i] : s.link) taken.insert(x);
      VarName name = register_name(index);
      if (taken.count(name)) name = fresh_name(name, taken);
      Linking link = s.link;
      link.emplace(name, index);
      return {StepKind::Reducible, {{{std::move(q), std::move(link), var(name)}, 1.0}}, {}};
    }
    default:
      return error("cannot apply " + pretty(f) + " to " + pretty(v));
  }
}

Local reduce(const ProgramState& s, const TermPtr& m, const GateTable& gates) {
  switch (m->kind) {
    case TermKind::App: {
      if (!is_value(m->b)) return wrap(reduce(s, m->b, gates), [&](TermPtr t) { return app(m->a, t); });
      if (!is_value(m->a)) return wrap(reduce(s, m->a, gates), [&](TermPtr t) { return app(t, m->b); });
      return apply_redex(s, m->a, m->b, gates);
    }
    case TermKind::If: {
      if (!is_value(m->a)) return wrap(reduce(s, m->a, gates), [&](TermPtr t) { return cond(t, m->b, m->c); });
      if (m->a->kind != TermKind::Bit) return error("if on " + pretty(m->a));
      return single(s, m->a->value == 1 ? m->b : m->c);
    }
    case TermKind::Pair: {
      if (!is_value(m->a)) return wrap(reduce(s, m->a, gates), [&](TermPtr t) { return pair(t, m->b); });
      if (!is_value(m->b)) return wrap(reduce(s, m->b, gates), [&](TermPtr t) { return pair(m->a, t); });
      return value();
    }
    case TermKind::LetPair: {
      if (!is_value(m->a))
        return wrap(reduce(s, m->a, gates), [&](TermPtr t) { return let_pair(m->name, m->name2, t, m->b); });
      if (m->a->kind != TermKind::Pair) return error("let-pair on " + pretty(m->a));
      return single(s, substitute(m->b, {{m->name, m->a->a}, {m->name2, m->a->b}}));
    }
    default:
      return value();
  }
}

}  // namespace

StepResult step(const ProgramState& s, const GateTable& gates) {
  if (is_value(s.term)) return {StepKind::Value, {}, {}};
  Local l = reduce(s, s.term, gates);
  return {l.kind, std::move(l.branches), std::move(l.error)};
}

TermPtr canonical_term(const ProgramState& s) {
  std::map<VarName, VarName> renaming;
  for (const auto& [x, i] : s.link) renaming.emplace(x, register_name(i));
  return alpha_normalize(rename_free(s.term, renaming));
}

std::string canonical_key(const ProgramState& s) { return pretty(canonical_term(s)); }

bool equivalent_states(const ProgramState& a, const ProgramState& b) {
  return canonical_key(a) == canonical_key(b) && a.q.phase_fixed().approx_equal(b.q.phase_fixed());
}

bool well_typed_program(const ProgramState& s, const QType& b) { return well_typed_program(s.term, b); }

RunResult run(const ProgramState& s, const GateTable& gates, std::uint64_t seed, std::size_t max_steps) {
  std::mt19937_64 rng(seed);
  RunResult r{RunOutcome::Exhausted, s, {{0, 1.0, s}}, {}};
  for (std::size_t n = 0;; ++n) {
    StepResult st = step(r.final_state, gates);
    if (st.kind == StepKind::Value) {
      r.outcome = RunOutcome::Value;
      return r;
    }
    if (st.kind == StepKind::Error) {
      r.outcome = RunOutcome::Error;
      r.error = st.error;
      return r;
    }
    if (n == max_steps) return r;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const Successor* chosen = nullptr;
    double acc = 0.0;
    for (const auto& b : st.successors) {
      if (b.probability <= 0.0) continue;
      chosen = &b;
      acc += b.probability;
      if (u < acc) break;
    }
    if (!chosen) {
      r.outcome = RunOutcome::Error;
      r.error = "no successor has positive probability";
      return r;
    }
    r.final_state = chosen->state;
    r.trace.push_back({n + 1, chosen->probability, chosen->state});
  }
}

// ---------------------------------------------------------------------------

namespace {

// States merged by canonical term, then by quantum state within epsilon.
class StateTable {
 public:
  // Index of an equivalent stored state, inserting `s` if there is none.
  std::size_t intern(const ProgramState& s, std::vector<ProgramState>& states) {
    auto& bucket = buckets_[canonical_key(s)];
    const QuantumState fixed = s.q.phase_fixed();
    for (std::size_t i : bucket)
      if (states[i].q.qubits() == s.q.qubits() && states[i].q.phase_fixed().approx_equal(fixed)) return i;
    states.push_back(s);
    bucket.push_back(states.size() - 1);
    return states.size() - 1;
  }

 private:
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::map<std::string, double> Distribution::by_term() const {
  std::map<std::string, double> out;
  for (const auto& t : terminals) out[canonical_key(t.state)] += t.mass;
  return out;
}

double Distribution::terminal_mass() const {
  double m = 0.0;
  for (const auto& t : terminals) m += t.mass;
  return m;
}

Distribution explore(const ProgramState& s, const GateTable& gates, std::size_t depth) {
  Distribution dist;
  std::vector<ProgramState> terminal_states;
  StateTable terminal_index;

  std::vector<ProgramState> frontier{s};
  std::vector<double> mass{1.0};
  for (std::size_t level = 0; !frontier.empty(); ++level) {
    std::vector<ProgramState> next;
    std::vector<double> next_mass;
    StateTable next_index;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      StepResult st = step(frontier[i], gates);
      if (st.kind == StepKind::Value) {
        const std::size_t k = terminal_index.intern(frontier[i], terminal_states);
        if (k == dist.terminals.size()) dist.terminals.push_back({frontier[i], 0.0});
        dist.terminals[k].mass += mass[i];
      } else if (st.kind == StepKind::Error) {
        dist.error += mass[i];
      } else if (level == depth) {
        dist.pending += mass[i];
      } else {
        for (const auto& b : st.successors) {
          if (b.probability < kPruneEpsilon) ++dist.negligible_branches;
          const std::size_t k = next_index.intern(b.state, next);
          if (k == next_mass.size()) next_mass.push_back(0.0);
          next_mass[k] += mass[i] * b.probability;
        }
      }
    }
    frontier = std::move(next);
    mass = std::move(next_mass);
  }
  return dist;
}

ConsistencyResult check_consistency(const ProgramState& s, const GateTable& gates, std::size_t depth) {
  ConsistencyResult result;
  std::vector<ProgramState> states;
  std::vector<std::ptrdiff_t> parent;
  std::vector<std::size_t> level;
  StateTable index;
  index.intern(s, states);
  parent.push_back(-1);
  level.push_back(0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    ++result.states_visited;
    StepResult st = step(states[i], gates);
    if (st.kind == StepKind::Error) {
      result.consistent = false;
      result.error = st.error;
      for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i); parent[k] >= 0; k = parent[k])
        result.path.insert(result.path.begin(), states[k]);
      return result;
    }
    if (st.kind != StepKind::Reducible || level[i] == depth) continue;
    for (const auto& b : st.successors) {
      const std::size_t before = states.size();
      const std::size_t k = index.intern(b.state, states);
      if (k == before) {
        parent.push_back(static_cast<std::ptrdiff_t>(i));
        level.push_back(level[i] + 1);
        queue.push_back(k);
      }
    }
  }
  return result;
}

std::string format_state_line(std::size_t index, double probability, const ProgramState& s, bool machine) {
  char prob[32];
  std::snprintf(prob, sizeof prob, machine ? "%.12g" : "%.6f", probability);
  if (machine)
    return std::to_string(index) + "\t" + prob + "\t" + canonical_key(s) + "\t" + format_amplitudes(s.q, true);
  std::map<VarName, VarName> renaming;
  for (const auto& [x, i] : s.link) renaming.emplace(x, register_name(i));
  return std::to_string(index) + "  p=" + prob + "  " + pretty(rename_free(s.term, renaming)) + "  " +
         format_amplitudes(s.q, false);
}

}  // namespace qlam
