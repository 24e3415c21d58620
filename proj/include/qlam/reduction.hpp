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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlam/quantum.hpp"
#include "qlam/syntax.hpp"
#include "qlam/types.hpp"

namespace qlam {

inline constexpr double kPruneEpsilon = 1e-12;

using Linking = std::map<VarName, std::size_t>;

/// [Q, L, M]: a quantum store, the linking of term variables to qubit
/// indices, and the term.
struct ProgramState {
  QuantumState q;
  Linking link;
  TermPtr term;
};

/// [|>, {}, m].
ProgramState initial_state(TermPtr m);

enum class StepKind { Value, Reducible, Error };

struct Successor {
  ProgramState state;
  double probability;
};

struct StepResult {
  StepKind kind;
  std::vector<Successor> successors;  // nonempty iff reducible
  std::string error;                  // set iff error
};

/// One call-by-value step. Arguments reduce before functions, left pair
/// components before right ones, scrutinees before branches.
StepResult step(const ProgramState& s, const GateTable& gates);

/// The term with every linked variable renamed to p_{L(x)} and binders
/// renamed canonically.
TermPtr canonical_term(const ProgramState& s);
/// canonical_term printed.
std::string canonical_key(const ProgramState& s);
/// Same canonical term, and quantum states equal within kNormEpsilon after
/// fixing the global phase.
bool equivalent_states(const ProgramState& a, const ProgramState& b);

/// The program state typed in the context binding its free variables to qbit.
bool well_typed_program(const ProgramState& s, const QType& b);

enum class RunOutcome { Value, Error, Exhausted };

struct TraceEntry {
  std::size_t index;
  double probability;  // of the step that produced this state; 1 for the initial state
  ProgramState state;
};

struct RunResult {
  RunOutcome outcome;
  ProgramState final_state;
  std::vector<TraceEntry> trace;
  std::string error;
};

/// Samples one reduction path with a generator seeded by `seed`.
RunResult run(const ProgramState& s, const GateTable& gates, std::uint64_t seed, std::size_t max_steps);

struct Terminal {
  ProgramState state;
  double mass;
};

struct Distribution {
  std::vector<Terminal> terminals;
  double pending = 0.0;  // reducible states left at the depth horizon
  double error = 0.0;
  /// Branches whose probability fell below kPruneEpsilon; they are kept.
  std::size_t negligible_branches = 0;

  /// Terminal mass by canonical term, forgetting the quantum state.
  std::map<std::string, double> by_term() const;
  double terminal_mass() const;
};

/// Exhaustive expansion to `depth` steps. Identical states are merged level by
/// level; the initial state is level 0.
Distribution explore(const ProgramState& s, const GateTable& gates, std::size_t depth);

struct ConsistencyResult {
  bool consistent = true;
  /// States from the first successor up to the error state; empty when the
  /// initial state itself is an error.
  std::vector<ProgramState> path;
  std::string error;
  std::size_t states_visited = 0;
};

/// Searches every rule-generated successor, zero-probability branches
/// included, for an error state within `depth` steps.
ConsistencyResult check_consistency(const ProgramState& s, const GateTable& gates, std::size_t depth);

/// One trace line: index, probability, term, amplitudes.
std::string format_state_line(std::size_t index, double probability, const ProgramState& s, bool machine);

}  // namespace qlam
