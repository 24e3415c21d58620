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

#include "qlam/qlam.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "qlam/inference.hpp"
#include "qlam/quantum.hpp"
#include "qlam/reduction.hpp"
#include "qlam/syntax.hpp"
#include "qlam/typechecker.hpp"
#include "qlam/types.hpp"

struct qlam_context {
  qlam::GateTable gates = qlam::GateTable::builtin();
  std::string last_error;
};

struct qlam_program {
  qlam::TermPtr term;
};

struct qlam_distribution {
  std::vector<std::pair<std::string, double>> entries;
  double pending = 0.0;
  double error = 0.0;
};

namespace {

using qlam::QType;
using qlam::TermPtr;

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qlam_status finish(qlam_context* ctx, qlam_status status, const std::string& text, char** report) {
  if (report) *report = duplicate(text);
  ctx->last_error = status == QLAM_OK ? std::string() : text;
  while (!ctx->last_error.empty() && ctx->last_error.back() == '\n') ctx->last_error.pop_back();
  return status;
}

std::string fixed9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", x < 0 && x > -5e-10 ? 0.0 : x);
  return buf;
}

std::string general12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string rule_summary(const qlam::Derivation& d) {
  std::map<std::string, int> counts;
  std::vector<const qlam::Derivation*> stack{&d};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    ++counts[qlam::rule_name(n->rule)];
    for (const auto& p : n->premises) stack.push_back(&p);
  }
  std::string out = std::to_string(qlam::derivation_size(d)) + " rule instances (";
  bool first = true;
  for (const auto& [name, n] : counts) {
    if (!first) out += ", ";
    first = false;
    out += name + " " + std::to_string(n);
  }
  return out + ")";
}

std::string check_success(const qlam::Derivation& d, bool explain) {
  std::string out = "well-typed: " + qlam::to_string(d.type) + "\n";
  out += "derivation: " + rule_summary(d) + "\n";
  if (explain) out += qlam::format_derivation(d);
  return out;
}

// Type-checks before evaluation unless the caller opted out.
bool guard(const qlam_program* program, const qlam_options& o, qlam_status& status,
           std::string& message) {
  if (o.unsafe) return true;
  qlam::InferResult r = qlam::infer(program->term);
  if (!r.type || !qlam::well_typed_program(program->term, *r.type)) {
    status = QLAM_ERR_UNTYPABLE;
    message = "refusing to evaluate an ill-typed program (pass --unsafe to override): " +
              (r.type ? std::string("check failed") : r.message) + "\n";
    return false;
  }
  return true;
}

qlam_options defaults() {
  qlam_options o;
  qlam_options_init(&o);
  return o;
}

template <typename F>
qlam_status guarded(qlam_context* ctx, char** report, F&& body) {
  if (report) *report = nullptr;
  try {
    return body();
  } catch (const qlam::ParseError& e) {
    return finish(ctx, QLAM_ERR_PARSE, std::string("parse error: ") + e.what() + "\n", report);
  } catch (const qlam::TypeParseError& e) {
    return finish(ctx, QLAM_ERR_PARSE, std::string("type syntax error: ") + e.what() + "\n", report);
  } catch (const qlam::QuantumError& e) {
    return finish(ctx, QLAM_ERR_ARGUMENT, std::string("gate error: ") + e.what() + "\n", report);
  } catch (const std::bad_alloc&) {
    return finish(ctx, QLAM_ERR_INTERNAL, "out of memory\n", report);
  } catch (const std::exception& e) {
    return finish(ctx, QLAM_ERR_INTERNAL, std::string("internal error: ") + e.what() + "\n", report);
  }
}

}  // namespace

extern "C" {

const char* qlam_status_name(qlam_status status) {
  switch (status) {
    case QLAM_OK: return "ok";
    case QLAM_ERR_PARSE: return "parse error";
    case QLAM_ERR_TYPE: return "type error";
    case QLAM_ERR_UNTYPABLE: return "untypable";
    case QLAM_ERR_RUNTIME: return "runtime error";
    case QLAM_ERR_EXHAUSTED: return "step budget exhausted";
    case QLAM_ERR_INCONSISTENT: return "error state reachable";
    case QLAM_ERR_IO: return "i/o error";
    case QLAM_ERR_ARGUMENT: return "invalid argument";
    case QLAM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qlam_options_init(qlam_options* options) {
  if (!options) return;
  options->seed = 0;
  options->max_steps = 10000;
  options->depth = 1000;
  options->machine = 0;
  options->unsafe = 0;
}

qlam_context* qlam_context_create(void) { return new (std::nothrow) qlam_context(); }

void qlam_context_destroy(qlam_context* ctx) { delete ctx; }

const char* qlam_context_last_error(const qlam_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

qlam_status qlam_context_load_gates(qlam_context* ctx, const char* path) {
  if (!ctx || !path) return QLAM_ERR_ARGUMENT;
  std::ifstream in(path);
  if (!in) return finish(ctx, QLAM_ERR_IO, std::string("cannot open gate table '") + path + "'", nullptr);
  return guarded(ctx, nullptr, [&] {
    std::stringstream ss;
    ss << in.rdbuf();
    qlam::GateTable copy = ctx->gates;
    copy.load_text(ss.str());
    ctx->gates = std::move(copy);
    return finish(ctx, QLAM_OK, "", nullptr);
  });
}

qlam_status qlam_context_add_gate(qlam_context* ctx, const char* name, int arity, const double* matrix) {
  if (!ctx || !name || !matrix || arity < 1 || arity > 10) return QLAM_ERR_ARGUMENT;
  return guarded(ctx, nullptr, [&] {
    const std::size_t dim = std::size_t{1} << arity;
    qlam::Gate g{name, arity, {}};
    g.matrix.reserve(dim * dim);
    for (std::size_t i = 0; i < dim * dim; ++i) g.matrix.emplace_back(matrix[2 * i], matrix[2 * i + 1]);
    ctx->gates.add(std::move(g));
    return finish(ctx, QLAM_OK, "", nullptr);
  });
}

qlam_status qlam_program_parse(qlam_context* ctx, const char* source, qlam_program** out) {
  if (!ctx || !source || !out) return QLAM_ERR_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, nullptr, [&] {
    auto* p = new qlam_program{qlam::parse(source, ctx->gates)};
    *out = p;
    return finish(ctx, QLAM_OK, "", nullptr);
  });
}

qlam_status qlam_program_load(qlam_context* ctx, const char* path, qlam_program** out) {
  if (!ctx || !path || !out) return QLAM_ERR_ARGUMENT;
  *out = nullptr;
  std::ifstream in(path);
  if (!in) return finish(ctx, QLAM_ERR_IO, std::string("cannot open '") + path + "'", nullptr);
  std::stringstream ss;
  ss << in.rdbuf();
  return qlam_program_parse(ctx, ss.str().c_str(), out);
}

void qlam_program_destroy(qlam_program* program) { delete program; }

char* qlam_program_text(const qlam_program* program) {
  return program ? duplicate(qlam::pretty(program->term)) : nullptr;
}

qlam_status qlam_check(qlam_context* ctx, const qlam_program* program, const char* type, int explain, char** report) {
  if (!ctx || !program) return QLAM_ERR_ARGUMENT;
  return guarded(ctx, report, [&] {
    const TermPtr& m = program->term;
    qlam::CheckResult r;
    if (type) {
      r = qlam::check({}, m, qlam::parse_type(type));
    } else {
      qlam::InferResult inferred = qlam::infer(m);
      if (inferred.type) {
        r = qlam::check({}, m, *inferred.type);
      } else if (inferred.simple_failure) {
        r.error = qlam::simple_typing_error(*inferred.simple_failure, m);
      } else {
        // No decoration exists; checking at the bang-free skeleton locates the failure.
        r = qlam::check({}, m, qlam::lift(inferred.simple->type));
        if (r) return finish(ctx, QLAM_ERR_INTERNAL, "internal error: inference and checking disagree\n", report);
      }
    }
    if (!r) return finish(ctx, QLAM_ERR_TYPE, "type error: " + qlam::format_error(*r.error) + "\n", report);
    return finish(ctx, QLAM_OK, check_success(*r.derivation, explain != 0), report);
  });
}

qlam_status qlam_infer(qlam_context* ctx, const qlam_program* program, int all, char** report) {
  if (!ctx || !program) return QLAM_ERR_ARGUMENT;
  return guarded(ctx, report, [&] {
    qlam::InferResult r = qlam::infer(program->term);
    if (!r.type)
      return finish(ctx, QLAM_ERR_UNTYPABLE,
                    "untypable (phase " + std::to_string(r.failed_phase) + "): " + r.message + "\n", report);
    std::string out;
    if (all) {
      for (const QType& t : qlam::infer_all(program->term)) out += qlam::to_string(t) + "\n";
    } else {
      out = qlam::to_string(*r.type) + "\n";
    }
    return finish(ctx, QLAM_OK, out, report);
  });
}

qlam_status qlam_run(qlam_context* ctx, const qlam_program* program, const qlam_options* options, char** report) {
  if (!ctx || !program) return QLAM_ERR_ARGUMENT;
  const qlam_options o = options ? *options : defaults();
  return guarded(ctx, report, [&] {
    qlam_status status = QLAM_OK;
    std::string out;
    if (!guard(program, o, status, out)) return finish(ctx, status, out, report);
    qlam::RunResult r = qlam::run(qlam::initial_state(program->term), ctx->gates, o.seed, o.max_steps);
    double path = 1.0;
    for (const auto& e : r.trace) {
      path *= e.probability;
      out += (o.machine ? "step\t" : "") + qlam::format_state_line(e.index, e.probability, e.state, o.machine != 0) +
             "\n";
    }
    const auto& s = r.final_state;
    std::string outcome;
    switch (r.outcome) {
      case qlam::RunOutcome::Value: outcome = "value"; break;
      case qlam::RunOutcome::Error: outcome = "error"; status = QLAM_ERR_RUNTIME; break;
      case qlam::RunOutcome::Exhausted: outcome = "exhausted"; status = QLAM_ERR_EXHAUSTED; break;
    }
    if (o.machine) {
      out += outcome + "\t" + qlam::canonical_key(s) + "\t" + general12(path) + "\t" +
             qlam::format_amplitudes(s.q, true) + "\n";
    } else {
      out += outcome + ": " + qlam::canonical_key(s);
      if (r.outcome == qlam::RunOutcome::Error) out += "  (" + r.error + ")";
      if (r.outcome == qlam::RunOutcome::Exhausted) out += "  (after " + std::to_string(o.max_steps) + " steps)";
      out += "\nstate: " + qlam::format_amplitudes(s.q, false) + "\n";
    }
    return finish(ctx, status, out, report);
  });
}

qlam_status qlam_explore(qlam_context* ctx, const qlam_program* program, const qlam_options* options, char** report) {
  if (!ctx || !program) return QLAM_ERR_ARGUMENT;
  const qlam_options o = options ? *options : defaults();
  return guarded(ctx, report, [&] {
    qlam_status status = QLAM_OK;
    std::string out;
    if (!guard(program, o, status, out)) return finish(ctx, status, out, report);
    qlam::Distribution d = qlam::explore(qlam::initial_state(program->term), ctx->gates, o.depth);
    if (o.machine) {
      for (const auto& t : d.terminals)
        out += "value\t" + qlam::canonical_key(t.state) + "\t" + general12(t.mass) + "\t" +
               qlam::format_amplitudes(t.state.q, true) + "\n";
      out += "pending\t\t" + general12(d.pending) + "\t\n";
      out += "error\t\t" + general12(d.error) + "\t\n";
    } else {
      for (const auto& [term, mass] : d.by_term()) {
        out += term + " : " + fixed9(mass);
        if (mass < qlam::kPruneEpsilon) out += "  (zero-probability branch)";
        out += "\n";
      }
      if (d.pending > 0) out += "# pending mass at depth " + std::to_string(o.depth) + ": " + fixed9(d.pending) + "\n";
      if (d.error > 0) out += "# error mass: " + fixed9(d.error) + "\n";
    }
    if (d.error > 0) status = QLAM_ERR_RUNTIME;
    return finish(ctx, status, out, report);
  });
}

qlam_status qlam_consistency(qlam_context* ctx, const qlam_program* program, const qlam_options* options,
                             char** report) {
  if (!ctx || !program) return QLAM_ERR_ARGUMENT;
  const qlam_options o = options ? *options : defaults();
  return guarded(ctx, report, [&] {
    qlam::ConsistencyResult r = qlam::check_consistency(qlam::initial_state(program->term), ctx->gates, o.depth);
    if (r.consistent) {
      return finish(ctx, QLAM_OK,
                    "consistent: no error state within depth " + std::to_string(o.depth) + " (" +
                        std::to_string(r.states_visited) + " states)\n",
                    report);
    }
    std::string out = "inconsistent: error state after " + std::to_string(r.path.size()) + " steps: " + r.error + "\n";
    for (std::size_t i = 0; i < r.path.size(); ++i)
      out += std::to_string(i + 1) + (o.machine ? "\t" : "  ") + qlam::canonical_key(r.path[i]) +
             (o.machine ? "\t" : "  ") + qlam::format_amplitudes(r.path[i].q, o.machine != 0) + "\n";
    return finish(ctx, QLAM_ERR_INCONSISTENT, out, report);
  });
}

qlam_status qlam_explore_distribution(qlam_context* ctx, const qlam_program* program, uint64_t depth,
                                      qlam_distribution** out) {
  if (!ctx || !program || !out) return QLAM_ERR_ARGUMENT;
  *out = nullptr;
  return guarded(ctx, nullptr, [&] {
    qlam::Distribution d = qlam::explore(qlam::initial_state(program->term), ctx->gates, depth);
    auto* r = new qlam_distribution;
    for (const auto& [term, mass] : d.by_term()) r->entries.emplace_back(term, mass);
    r->pending = d.pending;
    r->error = d.error;
    *out = r;
    return finish(ctx, QLAM_OK, "", nullptr);
  });
}

size_t qlam_distribution_size(const qlam_distribution* d) { return d ? d->entries.size() : 0; }

const char* qlam_distribution_term(const qlam_distribution* d, size_t i) {
  return d && i < d->entries.size() ? d->entries[i].first.c_str() : nullptr;
}

double qlam_distribution_mass(const qlam_distribution* d, size_t i) {
  return d && i < d->entries.size() ? d->entries[i].second : 0.0;
}

double qlam_distribution_pending(const qlam_distribution* d) { return d ? d->pending : 0.0; }

double qlam_distribution_error(const qlam_distribution* d) { return d ? d->error : 0.0; }

void qlam_distribution_destroy(qlam_distribution* d) { delete d; }

void qlam_string_free(char* s) { std::free(s); }

}  // extern "C"
