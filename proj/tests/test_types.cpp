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


#include <set>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "qlam/types.hpp"

using namespace qlam;

namespace {

QType T(const char* s) { return parse_type(s); }

struct Position {
  unsigned bangs;
  bool negative;
  Head head;
  std::string name;
};

// Preorder positions with their polarity; arrow domains flip it.
void positions(const QType& a, bool negative, std::vector<Position>& out) {
  out.push_back({a.bangs, negative, a.head, a.name});
  if (a.head == Head::Arrow) {
    positions(a.left(), !negative, out);
    positions(a.right(), negative, out);
  } else if (a.head == Head::Tensor) {
    positions(a.left(), negative, out);
    positions(a.right(), negative, out);
  }
}

// A <: B iff same shape, and at every position the bang counts (n on the
// left, m on the right, swapped at negative positions) satisfy m = 0 or n >= 1.
bool subtype_oracle(const QType& a, const QType& b) {
  std::vector<Position> pa, pb;
  positions(a, false, pa);
  positions(b, false, pb);
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i].head != pb[i].head || pa[i].name != pb[i].name) return false;
    const unsigned n = pa[i].negative ? pb[i].bangs : pa[i].bangs;
    const unsigned m = pa[i].negative ? pa[i].bangs : pb[i].bangs;
    if (!(m == 0 || n >= 1)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("subtype examples") {
  CHECK(subtype(T("!(bit -o qbit)"), T("!(!bit -o qbit)")));
  CHECK_FALSE(subtype(T("!(!bit -o qbit)"), T("!(bit -o qbit)")));
  CHECK_FALSE(subtype(T("bit"), T("!bit")));
  CHECK(subtype(T("!bit"), T("bit")));
  CHECK(subtype(T("!!bit"), T("!bit")));
  CHECK(subtype(T("!bit"), T("!!bit")));
  CHECK_FALSE(subtype(T("bit"), T("qbit")));
  CHECK_FALSE(subtype(T("bit -o bit"), T("bit (*) bit")));
  CHECK(subtype(T("!bit (*) qbit"), T("bit (*) qbit")));
  CHECK_FALSE(subtype(T("bit (*) qbit"), T("!(bit (*) qbit)")));
  CHECK(subtype(T("!(!bit (*) !bit)"), T("!bit (*) bit")));
  CHECK_FALSE(subtype(T("!(bit (*) !bit)"), T("!bit (*) !bit")));
}

TEST_CASE("type_equiv examples") {
  CHECK(type_equiv(T("X -o Y"), T("X -o Y")));
  CHECK(type_equiv(T("!!bit"), T("!bit")));
  CHECK_FALSE(type_equiv(T("!bit"), T("bit")));
}

TEST_CASE("skeleton, lift, decorate") {
  CHECK(skeleton(T("!(bit -o qbit)")) == ty::iarrow(ty::iconstant("bit"), ty::iconstant("qbit")));
  CHECK(skeleton(T("!!X")) == ty::ivariable("X"));
  CHECK(skeleton(T("!X (*) Y")) == ty::iproduct(ty::ivariable("X"), ty::ivariable("Y")));
  CHECK(lift(ty::iarrow(ty::iconstant("bit"), ty::iconstant("qbit"))) == T("bit -o qbit"));
  CHECK(lift(ty::itop()) == T("T"));
  CHECK(lift(ty::iarrow(ty::iproduct(ty::ivariable("X"), ty::ivariable("Y")), ty::ivariable("X"))) ==
        T("(X (*) Y) -o X"));
  const IType bq = ty::iarrow(ty::iconstant("bit"), ty::iconstant("qbit"));
  CHECK(decorate(bq, T("!(bit -o qbit)")) == T("!(bit -o qbit)"));
  CHECK(decorate(ty::ivariable("X"), T("!(bit -o qbit)")) == T("!X"));
  CHECK(decorate(bq, T("!qbit")) == T("!(bit -o qbit)"));
}

TEST_CASE("constant types") {
  CHECK(constant_type(*bit(0)) == T("!bit"));
  CHECK(constant_type(*bit(1)) == T("!bit"));
  CHECK(constant_type(*new_()) == T("!(bit -o qbit)"));
  CHECK(constant_type(*meas()) == T("!(qbit -o !bit)"));
  CHECK(constant_type(*gate("H", 1)) == T("!(qbit -o qbit)"));
  CHECK(constant_type(*gate("CNOT", 2)) == T("!(qbit (*) qbit -o qbit (*) qbit)"));
  CHECK(constant_type(*gate("T3", 3)) == T("!(qbit (*) (qbit (*) qbit) -o qbit (*) (qbit (*) qbit))"));
}

TEST_CASE("concrete syntax") {
  CHECK(to_string(T("(qbit -o bit (*) bit) (*) (bit (*) bit -o qbit)")) ==
        "(qbit -o bit (*) bit) (*) (bit (*) bit -o qbit)");
  CHECK(to_string(T("X -o Y -o Z")) == "X -o Y -o Z");
  CHECK(T("X -o Y -o Z") == ty::arrow(ty::variable("X"), ty::arrow(ty::variable("Y"), ty::variable("Z"))));
  CHECK(T("!(!bit)").bangs == 2);
  CHECK(T("a (*) b (*) c") == ty::tensor(ty::constant("a"), ty::tensor(ty::constant("b"), ty::constant("c"))));
  CHECK_THROWS_AS(T("bit -o"), TypeParseError);
  CHECK_THROWS_AS(T("(bit"), TypeParseError);
  CHECK_THROWS_AS(T(""), TypeParseError);
  testing::TypeGenerator gen(31);
  for (int i = 0; i < 2000; ++i) {
    QType a = gen.type(4);
    INFO(to_string(a));
    CHECK(T(to_string(a).c_str()) == a);
  }
}

TEST_CASE("join and minimal elements") {
  const IType u = skeleton(T("(bit -o bit) (*) bit"));
  const std::vector<QType> all = single_bang_decorations(u);
  CHECK(all.size() == (std::size_t{1} << position_count(u)));
  for (const QType& a : all)
    for (const QType& b : all) {
      const QType j = join(a, b);
      CHECK(subtype(a, j));
      CHECK(subtype(b, j));
      for (const QType& c : all)
        if (subtype(a, c) && subtype(b, c)) CHECK(subtype(j, c));
    }
  std::vector<QType> mins = minimal_elements(all);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0] == T("!(!(bit -o !bit) (*) !bit)"));
  auto two = minimal_elements({T("bit -o !bit"), T("!bit -o !bit"), T("!(bit -o bit)")});
  CHECK(two.size() == 2);
}

TEST_CASE("property: subtype agrees with the position-wise oracle") {
  testing::TypeGenerator gen(32);
  int related = 0;
  for (int i = 0; i < 20000; ++i) {
    QType a = gen.type(3);
    QType b = gen.redecorate(a);
    const bool s = subtype(a, b);
    related += s;
    INFO(to_string(a), " <: ", to_string(b));
    CHECK(s == subtype_oracle(a, b));
    CHECK(type_equiv(a, b) == (subtype_oracle(a, b) && subtype_oracle(b, a)));
  }
  CHECK(related > 1000);
  CHECK(related < 19000);
}

TEST_CASE("property: type algebra laws") {
  testing::TypeGenerator gen(33);
  for (int i = 0; i < 10000; ++i) {
    QType a = gen.type(4);
    QType b = gen.redecorate(a);
    QType c = gen.redecorate(a);
    INFO(to_string(a), " | ", to_string(b), " | ", to_string(c));
    CHECK(subtype(a, a));
    CHECK(subtype(add_bangs(a, 1), a));
    if (subtype(a, b) && subtype(b, c)) CHECK(subtype(a, c));
    if (subtype(a, b)) {
      CHECK(skeleton(a) == skeleton(b));
      for (unsigned n = 0; n < 3; ++n)
        for (unsigned m = 0; m < 3; ++m)
          if (m == 0 || n >= 1) CHECK(subtype(add_bangs(a, n), add_bangs(b, m)));
    }
    if (subtype(a, add_bangs(b, 1))) CHECK(a.bangs >= 1);
    CHECK(skeleton(lift(skeleton(a))) == skeleton(a));
    CHECK(decorate(skeleton(a), a) == a);
    CHECK(type_equiv(single_bang(a), a));
    const QType unrelated = gen.type(3);
    CHECK(skeleton(decorate(skeleton(unrelated), a)) == skeleton(unrelated));
    if (skeleton(a) != skeleton(unrelated)) CHECK_FALSE(subtype(a, unrelated));
  }
}
