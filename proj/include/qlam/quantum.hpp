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

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlam {

using Amplitude = std::complex<double>;

inline constexpr double kNormEpsilon = 1e-9;

struct QuantumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// State vector over n qubits. Qubit i is the i-th tensor factor from the
/// left, i.e. bit (n - 1 - i) of a basis index.
class QuantumState {
 public:
  /// The 0-qubit state |>, a single amplitude 1.
  QuantumState();
  /// Takes amplitudes as given; length must be a power of two.
  explicit QuantumState(std::vector<Amplitude> amplitudes);

  static QuantumState basis(std::size_t qubits, std::size_t index);

  std::size_t qubits() const { return qubits_; }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  double norm_squared() const;

  /// Global phase removed: the first amplitude with modulus above epsilon is
  /// made real and nonnegative.
  QuantumState phase_fixed() const;

  bool approx_equal(const QuantumState& other, double eps = kNormEpsilon) const;

 private:
  std::size_t qubits_ = 0;
  std::vector<Amplitude> amps_;
};

struct Gate {
  std::string name;
  int arity = 1;
  std::vector<Amplitude> matrix;  // row-major, 2^arity x 2^arity
};

/// Named unitaries available to programs.
class GateTable {
 public:
  /// H, X, Y, Z, CNOT, U00, U01, U10, U11.
  static GateTable builtin();

  /// Throws QuantumError if the matrix has the wrong size or is not unitary.
  void add(Gate g);
  /// Reads `NAME arity re,im re,im ...` lines; `#` and `--` start comments.
  void load(const std::string& path);
  void load_text(const std::string& text);

  const Gate* find(const std::string& name) const;
  const std::map<std::string, Gate>& gates() const { return gates_; }

 private:
  std::map<std::string, Gate> gates_;
};

bool is_unitary(const Gate& g, double eps = kNormEpsilon);

/// Q (x) |b>, returning the index of the new (rightmost) qubit.
std::pair<QuantumState, std::size_t> new_qubit(const QuantumState& q, int b);

/// Applies `g` with its first input on qubit indices[0] (most significant).
/// Throws QuantumError on arity mismatch, duplicate or out-of-range indices.
QuantumState apply_gate(const QuantumState& q, const Gate& g, std::span<const std::size_t> indices);

struct MeasurementBranch {
  int outcome;
  double probability;
  QuantumState collapsed;
};

/// Both outcomes, in order 0 then 1. A zero-probability branch carries the
/// other branch's collapsed state with qubit `index` flipped.
std::vector<MeasurementBranch> measure(const QuantumState& q, std::size_t index);

std::string format_amplitudes(const QuantumState& q, bool machine);

}  // namespace qlam
