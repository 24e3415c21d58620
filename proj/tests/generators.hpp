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


// Seeded random terms and types for property tests.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "qlam/syntax.hpp"
#include "qlam/types.hpp"

namespace qlam::testing {

class TermGenerator {
 public:
  explicit TermGenerator(std::uint64_t seed) : rng_(seed) {}

  TermPtr term(int depth) {
    const int leaf_kinds = 6;
    const int k = depth <= 0 ? pick(leaf_kinds) : pick(leaf_kinds + 5);
    switch (k) {
      case 0:
      case 1: return var(name());
      case 2: return bit(pick(2));
      case 3: return star();
      case 4: return pick(2) ? meas() : new_();
      case 5: return pick(2) ? gate("H", 1) : gate("CNOT", 2);
      case 6: return app(term(depth - 1), term(depth - 1));
      case 7: return lam(name(), term(depth - 1));
      case 8: return cond(term(depth - 1), term(depth - 1), term(depth - 1));
      case 9: return pair(term(depth - 1), term(depth - 1));
      default: {
        VarName x = name(), y = name();
        while (y == x) y = name();
        return let_pair(x, y, term(depth - 1), term(depth - 1));
      }
    }
  }

  TermPtr value(int depth) {
    switch (pick(4)) {
      case 0: return bit(pick(2));
      case 1: return lam(name(), term(depth));
      case 2: return pair(bit(pick(2)), var(name()));
      default: return var(name());
    }
  }

  /// A closed term that binds x to a fresh qubit and uses it in qubit
  /// positions, possibly more than once.
  TermPtr qubit_program(int depth) {
    TermPtr body;
    switch (pick(3)) {
      case 0: body = qubit_term(depth); break;
      case 1: body = pair(qubit_term(depth - 1), qubit_term(depth - 1)); break;
      default: body = app(meas(), qubit_term(depth)); break;
    }
    return app(lam("x", body), app(new_(), bit(0)));
  }

  TermPtr qubit_term(int depth) {
    switch (depth <= 0 ? pick(3) : pick(7)) {
      case 0:
      case 1: return var("x");
      case 2: return app(new_(), bit(pick(2)));
      case 3: return app(gate("H", 1), qubit_term(depth - 1));
      case 4: return cond(app(meas(), qubit_term(depth - 1)), qubit_term(depth - 1), qubit_term(depth - 1));
      case 5: return app(lam("x", qubit_term(depth - 1)), qubit_term(depth - 1));
      default:
        return let_pair("a", "b", app(gate("CNOT", 2), pair(qubit_term(depth - 1), qubit_term(depth - 1))),
                        var(pick(2) ? "a" : "b"));
    }
  }

  VarName name() {
    static const char* names[] = {"x", "y", "z", "f"};
    return names[pick(4)];
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

class TypeGenerator {
 public:
  explicit TypeGenerator(std::uint64_t seed) : rng_(seed) {}

  QType type(int depth) {
    const unsigned bangs = static_cast<unsigned>(pick(3) == 0 ? pick(3) : 0);
    const int k = depth <= 0 ? pick(4) : pick(6);
    switch (k) {
      case 0: return ty::bit(bangs);
      case 1: return ty::qbit(bangs);
      case 2: return pick(2) ? ty::variable("X", bangs) : ty::variable("Y", bangs);
      case 3: return ty::top(bangs);
      case 4: return ty::arrow(type(depth - 1), type(depth - 1), bangs);
      default: return ty::tensor(type(depth - 1), type(depth - 1), bangs);
    }
  }

  /// A random type with the same skeleton as `a`.
  QType redecorate(const QType& a) {
    const unsigned bangs = static_cast<unsigned>(pick(3));
    switch (a.head) {
      case Head::Arrow: return ty::arrow(redecorate(a.left()), redecorate(a.right()), bangs);
      case Head::Tensor: return ty::tensor(redecorate(a.left()), redecorate(a.right()), bangs);
      default: return with_bangs(a, bangs);
    }
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qlam::testing
