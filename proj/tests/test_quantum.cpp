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


#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qlam/quantum.hpp"

using namespace qlam;
using C = std::complex<double>;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

QuantumState state(std::vector<C> v) { return QuantumState(std::move(v)); }

void check_close(const QuantumState& a, const std::vector<C>& expected) {
  REQUIRE(a.amplitudes().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    INFO("amplitude ", i);
    CHECK(std::abs(a.amplitudes()[i] - expected[i]) < 1e-12);
  }
}

QuantumState random_state(std::mt19937_64& rng, std::size_t qubits) {
  std::normal_distribution<double> n;
  std::vector<C> v(std::size_t{1} << qubits);
  double norm = 0;
  for (auto& a : v) {
    a = {n(rng), n(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return QuantumState(v);
}

Gate adjoint(const Gate& g) {
  const std::size_t d = std::size_t{1} << g.arity;
  Gate h{g.name + "+", g.arity, std::vector<C>(d * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) h.matrix[j * d + i] = std::conj(g.matrix[i * d + j]);
  return h;
}

}  // namespace

TEST_CASE("new_qubit extends the state on the right") {
  auto [a, i] = new_qubit(QuantumState(), 0);
  CHECK(i == 0);
  check_close(a, {1, 0});
  auto [b, j] = new_qubit(state({0, 1}), 1);
  CHECK(j == 1);
  check_close(b, {0, 0, 0, 1});
  auto [c, k] = new_qubit(state({r2, r2}), 0);
  CHECK(k == 1);
  check_close(c, {r2, 0, r2, 0});
}

TEST_CASE("apply_gate on the built-in matrices") {
  const GateTable g = GateTable::builtin();
  const std::size_t q0[] = {0};
  const std::size_t q01[] = {0, 1};
  const std::size_t q10[] = {1, 0};
  check_close(apply_gate(state({1, 0}), *g.find("H"), q0), {r2, r2});
  // |10> -> |11>
  check_close(apply_gate(state({0, 0, 1, 0}), *g.find("CNOT"), q01), {0, 0, 0, 1});
  const C alpha{0.6, 0}, beta{0, 0.8};
  check_close(apply_gate(state({alpha, 0, 0, beta}), *g.find("CNOT"), q01), {alpha, 0, beta, 0});
  // Control on qubit 1: |01> -> |11>.
  check_close(apply_gate(state({0, 1, 0, 0}), *g.find("CNOT"), q10), {0, 0, 0, 1});
  check_close(apply_gate(state({1, 0}), *g.find("X"), q0), {0, 1});
  check_close(apply_gate(state({1, 0}), *g.find("Y"), q0), {0, C(0, 1)});
  check_close(apply_gate(state({r2, r2}), *g.find("Z"), q0), {r2, -r2});
  // Teleport corrections: U00 = I, U01 = X, U10 = Z, U11 = ZX.
  check_close(apply_gate(state({alpha, beta}), *g.find("U00"), q0), {alpha, beta});
  check_close(apply_gate(state({alpha, beta}), *g.find("U01"), q0), {beta, alpha});
  check_close(apply_gate(state({alpha, beta}), *g.find("U10"), q0), {alpha, -beta});
  check_close(apply_gate(state({alpha, beta}), *g.find("U11"), q0), {beta, -alpha});
}

TEST_CASE("apply_gate on the middle qubit of three") {
  const GateTable g = GateTable::builtin();
  const std::size_t q1[] = {1};
  // |010> -> X on qubit 1 -> |000>
  std::vector<C> v(8, 0);
  v[2] = 1;
  std::vector<C> e(8, 0);
  e[0] = 1;
  check_close(apply_gate(state(v), *g.find("X"), q1), e);
}

TEST_CASE("apply_gate rejects bad indices") {
  const GateTable g = GateTable::builtin();
  const std::size_t dup[] = {0, 0};
  const std::size_t out[] = {2};
  const std::size_t one[] = {0};
  CHECK_THROWS_AS(apply_gate(state({1, 0, 0, 0}), *g.find("CNOT"), dup), QuantumError);
  CHECK_THROWS_AS(apply_gate(state({1, 0, 0, 0}), *g.find("H"), out), QuantumError);
  CHECK_THROWS_AS(apply_gate(state({1, 0, 0, 0}), *g.find("CNOT"), one), QuantumError);
}

TEST_CASE("measure") {
  const C alpha{0.6, 0}, beta{0, 0.8};
  auto m = measure(state({alpha, beta}), 0);
  REQUIRE(m.size() == 2);
  CHECK(m[0].outcome == 0);
  CHECK(m[0].probability == doctest::Approx(0.36).epsilon(1e-12));
  check_close(m[0].collapsed, {1, 0});
  CHECK(m[1].outcome == 1);
  CHECK(m[1].probability == doctest::Approx(0.64).epsilon(1e-12));
  // The collapsed state keeps beta's phase.
  check_close(m[1].collapsed, {0, C(0, 1)});

  auto basis = measure(state({1, 0}), 0);
  CHECK(basis[0].probability == doctest::Approx(1.0));
  CHECK(basis[1].probability == 0.0);
  check_close(basis[0].collapsed, {1, 0});
  check_close(basis[1].collapsed, {0, 1});

  auto bell = measure(state({r2, 0, 0, r2}), 1);
  CHECK(bell[0].probability == doctest::Approx(0.5));
  CHECK(bell[1].probability == doctest::Approx(0.5));
  check_close(bell[0].collapsed, {1, 0, 0, 0});
  check_close(bell[1].collapsed, {0, 0, 0, 1});
}

TEST_CASE("gate tables") {
  GateTable t = GateTable::builtin();
  for (const auto& [name, g] : t.gates()) {
    INFO(name);
    CHECK(is_unitary(g));
  }
  CHECK_THROWS_AS(t.add(Gate{"BAD", 1, {1, 1, 0, 1}}), QuantumError);
  CHECK_THROWS_AS(t.add(Gate{"SHORT", 1, {1, 0, 0}}), QuantumError);
  t.load_text("# phase gate\nS 1 1,0 0,0 0,0 0,1\n-- swap\nSWAP 2 1,0 0,0 0,0 0,0  0,0 0,0 1,0 0,0  0,0 1,0 0,0 0,0  0,0 0,0 0,0 1,0\n");
  REQUIRE(t.find("S"));
  REQUIRE(t.find("SWAP"));
  const std::size_t q01[] = {0, 1};
  check_close(apply_gate(state({0, 1, 0, 0}), *t.find("SWAP"), q01), {0, 0, 1, 0});
  CHECK_THROWS_AS(t.load_text("T 1 1,0 0,0"), QuantumError);
}

TEST_CASE("format_amplitudes") {
  CHECK(format_amplitudes(state({1, 0}), true) == "1,0;0,0");
  CHECK(format_amplitudes(QuantumState(), true) == "1,0");
}

TEST_CASE("property: norm, inverses, measurement totals, tensor extension") {
  std::mt19937_64 rng(21);
  const GateTable table = GateTable::builtin();
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    QuantumState q = random_state(rng, n);
    for (const auto& [name, g] : table.gates()) {
      if (static_cast<std::size_t>(g.arity) > n) continue;
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(g.arity);
      QuantumState r = apply_gate(q, g, idx);
      CHECK(std::abs(r.norm_squared() - 1) < kNormEpsilon);
      CHECK(apply_gate(r, adjoint(g), idx).approx_equal(q));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto m = measure(q, i);
      CHECK(std::abs(m[0].probability + m[1].probability - 1) < kNormEpsilon);
      for (const auto& b : m) CHECK(std::abs(b.collapsed.norm_squared() - 1) < kNormEpsilon);
    }
    for (int b = 0; b < 2; ++b) {
      auto [e, k] = new_qubit(q, b);
      CHECK(k == n);
      for (std::size_t i = 0; i < q.amplitudes().size(); ++i) {
        CHECK(e.amplitudes()[2 * i + b] == q.amplitudes()[i]);
        CHECK(e.amplitudes()[2 * i + 1 - b] == C(0));
      }
    }
  }
}

TEST_CASE("phase fixing") {
  const C w = std::polar(1.0, 0.7);
  QuantumState a = state({r2, C(0, r2)});
  QuantumState b = state({r2 * w, C(0, r2) * w});
  CHECK_FALSE(a.approx_equal(b));
  CHECK(a.phase_fixed().approx_equal(b.phase_fixed()));
  CHECK_FALSE(a.phase_fixed().approx_equal(state({r2, -r2}).phase_fixed()));
}
