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

#include "qlam/quantum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qlam {

namespace {

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  if ((std::size_t{1} << k) != n) throw QuantumError("amplitude vector length is not a power of two");
  return k;
}

std::size_t bit_of(std::size_t qubits, std::size_t qubit) { return qubits - 1 - qubit; }

double clean(double x) { return (std::abs(x) < 5e-13) ? 0.0 : x; }

}  // namespace

QuantumState::QuantumState() : qubits_(0), amps_{Amplitude{1.0, 0.0}} {}

QuantumState::QuantumState(std::vector<Amplitude> amplitudes)
    : qubits_(log2_exact(amplitudes.size())), amps_(std::move(amplitudes)) {}

QuantumState QuantumState::basis(std::size_t qubits, std::size_t index) {
  std::vector<Amplitude> a(std::size_t{1} << qubits);
  a.at(index) = 1.0;
  return QuantumState(std::move(a));
}

double QuantumState::norm_squared() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

QuantumState QuantumState::phase_fixed() const {
  auto it = std::find_if(amps_.begin(), amps_.end(), [](const Amplitude& a) { return std::abs(a) > kNormEpsilon; });
  if (it == amps_.end()) return *this;
  Amplitude rot = std::conj(*it) / std::abs(*it);
  std::vector<Amplitude> out(amps_.size());
  std::transform(amps_.begin(), amps_.end(), out.begin(), [&](const Amplitude& a) { return a * rot; });
  return QuantumState(std::move(out));
}

bool QuantumState::approx_equal(const QuantumState& other, double eps) const {
  if (qubits_ != other.qubits_) return false;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (std::abs(amps_[i] - other.amps_[i]) > eps) return false;
  return true;
}

GateTable GateTable::builtin() {
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude i{0.0, 1.0};
  GateTable t;
  t.add({"H", 1, {r, r, r, -r}});
  t.add({"X", 1, {0, 1, 1, 0}});
  t.add({"Y", 1, {0, -i, i, 0}});
  t.add({"Z", 1, {1, 0, 0, -1}});
  t.add({"CNOT", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}});
  // Teleportation corrections.
  t.add({"U00", 1, {1, 0, 0, 1}});
  t.add({"U01", 1, {0, 1, 1, 0}});
  t.add({"U10", 1, {1, 0, 0, -1}});
  t.add({"U11", 1, {0, 1, -1, 0}});
  return t;
}

bool is_unitary(const Gate& g, double eps) {
  const std::size_t d = std::size_t{1} << g.arity;
  if (g.matrix.size() != d * d) return false;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Amplitude s = 0;
      for (std::size_t k = 0; k < d; ++k) s += g.matrix[r * d + k] * std::conj(g.matrix[c * d + k]);
      if (std::abs(s - Amplitude(r == c ? 1.0 : 0.0)) > eps) return false;
    }
  }
  return true;
}

void GateTable::add(Gate g) {
  if (g.name.empty() || !std::isupper(static_cast<unsigned char>(g.name[0])))
    throw QuantumError("gate name must be a capitalized identifier: '" + g.name + "'");
  if (g.arity < 1 || g.arity > 8) throw QuantumError("gate " + g.name + ": arity out of range");
  const std::size_t d = std::size_t{1} << g.arity;
  if (g.matrix.size() != d * d)
    throw QuantumError("gate " + g.name + ": expected " + std::to_string(d * d) + " matrix entries, got " +
                       std::to_string(g.matrix.size()));
  if (!is_unitary(g)) throw QuantumError("gate " + g.name + " is not unitary");
  std::string name = g.name;
  gates_[name] = std::move(g);
}

void GateTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw QuantumError("cannot open gate table '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str());
}

void GateTable::load_text(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    for (const char* marker : {"#", "--"}) {
      auto pos = line.find(marker);
      if (pos != std::string::npos) line.erase(pos);
    }
    std::istringstream fields(line);
    Gate g;
    if (!(fields >> g.name)) continue;
    if (!(fields >> g.arity)) throw QuantumError("gate table line " + std::to_string(lineno) + ": missing arity");
    std::string entry;
    while (fields >> entry) {
      auto comma = entry.find(',');
      try {
        double re = std::stod(entry.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(entry.substr(comma + 1));
        g.matrix.emplace_back(re, im);
      } catch (const std::exception&) {
        throw QuantumError("gate table line " + std::to_string(lineno) + ": bad entry '" + entry + "'");
      }
    }
    try {
      add(std::move(g));
    } catch (const QuantumError& e) {
      throw QuantumError("gate table line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

const Gate* GateTable::find(const std::string& name) const {
  auto it = gates_.find(name);
  return it == gates_.end() ? nullptr : &it->second;
}

std::pair<QuantumState, std::size_t> new_qubit(const QuantumState& q, int b) {
  if (b != 0 && b != 1) throw QuantumError("new_qubit: bit must be 0 or 1");
  const auto& in = q.amplitudes();
  std::vector<Amplitude> out(in.size() * 2);
  for (std::size_t k = 0; k < in.size(); ++k) out[2 * k + static_cast<std::size_t>(b)] = in[k];
  return {QuantumState(std::move(out)), q.qubits()};
}

QuantumState apply_gate(const QuantumState& q, const Gate& g, std::span<const std::size_t> indices) {
  const std::size_t n = q.qubits();
  if (indices.size() != static_cast<std::size_t>(g.arity))
    throw QuantumError("gate " + g.name + " expects " + std::to_string(g.arity) + " qubits, got " +
                       std::to_string(indices.size()));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] >= n) throw QuantumError("gate " + g.name + ": qubit index " + std::to_string(indices[a]) + " out of range");
    for (std::size_t b = a + 1; b < indices.size(); ++b)
      if (indices[a] == indices[b])
        throw QuantumError("gate " + g.name + ": duplicate qubit index " + std::to_string(indices[a]));
  }
  const std::size_t k = indices.size();
  const std::size_t d = std::size_t{1} << k;
  std::size_t mask = 0;
  std::vector<std::size_t> shift(k);
  for (std::size_t j = 0; j < k; ++j) {
    shift[j] = bit_of(n, indices[j]);
    mask |= std::size_t{1} << shift[j];
  }
  // Scatter a gate-local index (input 0 most significant) into a basis index.
  auto scatter = [&](std::size_t base, std::size_t local) {
    std::size_t idx = base;
    for (std::size_t j = 0; j < k; ++j)
      if ((local >> (k - 1 - j)) & 1U) idx |= std::size_t{1} << shift[j];
    return idx;
  };
  const auto& in = q.amplitudes();
  std::vector<Amplitude> out(in.size());
  std::vector<Amplitude> local_in(d);
  for (std::size_t base = 0; base < in.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t c = 0; c < d; ++c) local_in[c] = in[scatter(base, c)];
    for (std::size_t r = 0; r < d; ++r) {
      Amplitude s = 0;
      for (std::size_t c = 0; c < d; ++c) s += g.matrix[r * d + c] * local_in[c];
      out[scatter(base, r)] = s;
    }
  }
  return QuantumState(std::move(out));
}

std::vector<MeasurementBranch> measure(const QuantumState& q, std::size_t index) {
  const std::size_t n = q.qubits();
  if (index >= n) throw QuantumError("measure: qubit index " + std::to_string(index) + " out of range");
  const std::size_t bit = std::size_t{1} << bit_of(n, index);
  const auto& in = q.amplitudes();
  std::vector<Amplitude> proj[2] = {std::vector<Amplitude>(in.size()), std::vector<Amplitude>(in.size())};
  double p[2] = {0, 0};
  for (std::size_t k = 0; k < in.size(); ++k) {
    const int b = (k & bit) ? 1 : 0;
    proj[b][k] = in[k];
    p[b] += std::norm(in[k]);
  }
  const double total = p[0] + p[1];
  std::vector<MeasurementBranch> out;
  for (int b = 0; b < 2; ++b) {
    if (p[b] > 0) {
      const double scale = 1.0 / std::sqrt(p[b]);
      for (auto& a : proj[b]) a *= scale;
    }
    out.push_back({b, total > 0 ? p[b] / total : 0.0, QuantumState(proj[b])});
  }
  for (int b = 0; b < 2; ++b) {
    if (p[b] > 0) continue;
    const auto& other = out[1 - b].collapsed.amplitudes();
    std::vector<Amplitude> flipped(other.size());
    for (std::size_t k = 0; k < other.size(); ++k) flipped[k ^ bit] = other[k];
    out[b].collapsed = QuantumState(std::move(flipped));
  }
  return out;
}

std::string format_amplitudes(const QuantumState& q, bool machine) {
  std::string out = machine ? "" : "[";
  char buf[96];
  bool first = true;
  for (const auto& a : q.amplitudes()) {
    if (!first) out += machine ? ";" : ", ";
    first = false;
    const double re = clean(a.real()), im = clean(a.imag());
    if (machine) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g", re, im);
    } else if (im == 0) {
      std::snprintf(buf, sizeof buf, "%.6g", re);
    } else {
      std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
    }
    out += buf;
  }
  if (!machine) out += "]";
  return out;
}

}  // namespace qlam
