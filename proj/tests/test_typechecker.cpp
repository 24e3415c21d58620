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


#include <functional>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "qlam/inference.hpp"
#include "qlam/typechecker.hpp"

using namespace qlam;

namespace {

TermPtr p(const char* src) { return parse(src, GateTable::builtin(), ParseOptions{true, false}); }
QType T(const char* s) { return parse_type(s); }

const char* kPlus = "(\\x.\\y. if x then (if y then 0 else 1) else (if y then 1 else 0))";

void collect_rules(const Derivation& d, std::vector<Rule>& out) {
  out.push_back(d.rule);
  for (const auto& q : d.premises) collect_rules(q, out);
}

// Judgments taken from every node of inferred derivations over the corpus
// and a sample of generated terms.
std::vector<const Derivation*> judgments(std::vector<Derivation>& storage) {
  std::vector<TermPtr> terms;
  for (auto& [name, m] : testing::corpus()) terms.push_back(m);
  testing::TermGenerator gen(51);
  while (terms.size() < 150) {
    TermPtr t = gen.term(3);
    for (const auto& x : free_vars(t)) t = lam(x, t);
    if (infer(t).type) terms.push_back(t);
  }
  for (const auto& m : terms) storage.push_back(*infer(m).derivation);
  std::vector<const Derivation*> out;
  std::function<void(const Derivation&)> walk = [&](const Derivation& d) {
    out.push_back(&d);
    for (const auto& q : d.premises) walk(q);
  };
  for (const auto& d : storage) walk(d);
  return out;
}

}  // namespace

TEST_CASE("check examples") {
  CheckResult id = check({}, p("\\x.x"), T("bit -o bit"));
  REQUIRE(id);
  std::vector<Rule> rules;
  collect_rules(*id.derivation, rules);
  CHECK(rules == std::vector<Rule>{Rule::Lambda1, Rule::Axiom1});

  CheckResult nw = check({}, new_(), T("!(bit -o qbit)"));
  REQUIRE(nw);
  CHECK(nw.derivation->rule == Rule::Axiom2);
  CHECK(check({}, new_(), T("!(!bit -o qbit)")));
  CHECK_FALSE(check({}, new_(), T("!(bit -o !qbit)")));

  CheckResult dup = check({{"p0", ty::qbit()}}, p("CNOT <p0, p0>"), T("qbit (*) qbit"));
  REQUIRE_FALSE(dup);
  CHECK(dup.error->kind == CheckError::Kind::LinearityViolation);
  CHECK(dup.error->variable == "p0");
}

TEST_CASE("error categories") {
  CheckResult gate_on_function = check({}, p("H (\\x.x)"), T("qbit"));
  REQUIRE_FALSE(gate_on_function);
  CHECK(gate_on_function.error->kind == CheckError::Kind::SubtypeMismatch);
  CHECK(format_error(*gate_on_function.error).find("subtype mismatch") == 0);

  CheckResult unbound = check({}, var("x"), T("bit"));
  REQUIRE_FALSE(unbound);
  CHECK(unbound.error->kind == CheckError::Kind::UnboundVariable);

  CheckResult side = check({{"q", ty::qbit()}}, p("\\x.q"), T("!(bit -o qbit)"));
  REQUIRE_FALSE(side);
  CHECK(side.error->kind == CheckError::Kind::Lambda2SideCondition);
  CHECK(side.error->variable == "q");
  CHECK(check({{"q", ty::qbit()}}, p("\\x.q"), T("bit -o qbit")));

  CheckResult mismatch = check({}, bit(0), T("qbit"));
  REQUIRE_FALSE(mismatch);
  CHECK(mismatch.error->kind == CheckError::Kind::SubtypeMismatch);

  CheckResult unbanged = check({}, p("\\x.<x, x>"), T("bit -o bit (*) bit"));
  REQUIRE_FALSE(unbanged);
  CHECK(unbanged.error->kind == CheckError::Kind::LinearityViolation);

  CheckResult weak_if = check({}, p("\\x. if x then 0 else 1"), T("!bit -o qbit"));
  REQUIRE_FALSE(weak_if);
  CHECK(weak_if.error->kind == CheckError::Kind::SubtypeMismatch);
}

TEST_CASE("bang counts and subsumption at the root") {
  CHECK(check({}, bit(0), T("!!bit")));
  CHECK(check({}, p("\\x.x"), T("!!(bit -o bit)")));
  CHECK(check({}, p("<0, 1>"), T("!(bit (*) bit)")));
  CHECK(check({}, p("<0, new 0>"), T("!bit (*) qbit")));
  CHECK_FALSE(check({}, p("<0, new 0>"), T("!(bit (*) qbit)")));
  CHECK(check({{"x", T("!bit")}}, p("<x, x>"), T("!(!bit (*) bit)")));
  CHECK(check({}, star(), T("!T")));
  CHECK(check({{"f", T("!(bit -o bit)")}}, p("\\x. f (f x)"), T("!(bit -o bit)")));
}

TEST_CASE("well_typed_program") {
  CHECK(well_typed_program(p("meas p0"), T("!bit")));
  CHECK(well_typed_program(p("meas p0"), T("bit")));
  for (const char* t : {"qbit", "bit", "!bit", "qbit -o qbit", "(qbit -o qbit) -o qbit", "T"})
    CHECK_FALSE(well_typed_program(p("H (\\x.x)"), T(t)));
  CHECK(well_typed_program(testing::load_program("teleport.qlam"),
                           T("(qbit -o bit (*) bit) (*) (bit (*) bit -o qbit)")));
  CHECK_FALSE(well_typed_program(p("<p0, p0>"), T("qbit (*) qbit")));
  CHECK(well_typed_program(p("<p0, p1>"), T("qbit (*) qbit")));
  // The if rule shares the branch context, so p0 may appear in both branches.
  CHECK(well_typed_program(p("\\b. if b then p0 else H p0"), T("bit -o qbit")));
}

TEST_CASE("substitution_check") {
  CHECK(substitution_check({}, {}, "x", T("!bit"), var("x"), T("!bit"), {}, bit(0)));
  CHECK(substitution_check({}, {}, "x", T("!bit"), pair(var("x"), var("x")), T("!bit (*) !bit"), {}, bit(0)));
  TermPtr plus_xx = app(app(p(kPlus), var("x")), var("x"));
  CHECK(substitution_check({}, {}, "x", T("!bit"), plus_xx, T("bit"), {}, bit(0)));
  // A premise that does not hold.
  CHECK_FALSE(substitution_check({}, {}, "x", T("bit"), pair(var("x"), var("x")), T("bit (*) bit"), {}, bit(0)));
  CHECK(substitution_check({{"y", ty::qbit()}}, {{"d", T("!bit")}}, "x", T("qbit"), pair(var("x"), var("y")),
                           T("qbit (*) qbit"), {{"z", ty::qbit()}}, p("if d then z else z")));
}

TEST_CASE("property: verifier accepts every checker derivation and rejects tampering") {
  std::vector<Derivation> storage;
  int tampered = 0;
  for (const Derivation* j : judgments(storage)) {
    CheckResult r = check(j->context, j->term, j->type);
    INFO(format_context(j->context), " |- ", pretty(j->term), " : ", to_string(j->type));
    REQUIRE(r);
    CHECK_FALSE(verify(*r.derivation));
    CHECK(r.derivation->type == j->type);
    // A conclusion type with a different skeleton is always rejected.
    Derivation bad = *r.derivation;
    bad.type = ty::tensor(bad.type, ty::bit());
    CHECK(verify(bad));
    // Dropping a used linear binding from the root context is rejected.
    for (const auto& [x, t] : bad.context)
      if (t.bangs == 0 && j->term->has_free(x)) {
        Derivation dropped = *r.derivation;
        dropped.context.erase(x);
        CHECK(verify(dropped));
        ++tampered;
        break;
      }
  }
  CHECK(tampered > 20);
}

TEST_CASE("property: weakening, strengthening, subsumption, value exponentials and shapes") {
  std::vector<Derivation> storage;
  testing::TypeGenerator gen(52);
  int subsumed = 0, values = 0;
  for (const Derivation* j : judgments(storage)) {
    const TypingContext& ctx = j->context;
    INFO(format_context(ctx), " |- ", pretty(j->term), " : ", to_string(j->type));

    TypingContext wider = ctx;
    wider.emplace("w%weak", gen.type(2));
    wider.emplace("w%lin", ty::qbit());
    CHECK(check(wider, j->term, j->type));

    TypingContext strong;
    for (const auto& [x, t] : ctx)
      if (j->term->has_free(x)) strong.emplace(x, t);
    CHECK(check(strong, j->term, j->type));

    for (int attempt = 0; attempt < 4; ++attempt) {
      TypingContext sub;
      for (const auto& [x, t] : ctx) {
        QType s = gen.redecorate(t);
        sub.emplace(x, subtype(s, t) ? s : t);
      }
      QType b = gen.redecorate(j->type);
      if (!subtype(j->type, b)) b = j->type;
      CHECK(check(sub, j->term, b));
      ++subsumed;
    }

    if (is_value(j->term) && j->type.bangs >= 1) {
      ++values;
      for (const auto& x : j->term->free) CHECK(ctx.at(x).bangs >= 1);
    }
    bool qbit_only = true;
    for (const auto& [x, t] : ctx) qbit_only = qbit_only && t == ty::qbit();
    if (qbit_only && is_value(j->term) && j->type.head == Head::Arrow) {
      const TermKind k = j->term->kind;
      CHECK((k == TermKind::New || k == TermKind::Meas || k == TermKind::Gate || k == TermKind::Lam));
    }
  }
  CHECK(subsumed > 1000);
  CHECK(values > 50);
}
