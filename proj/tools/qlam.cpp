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

// Command-line front end. Links only the C interface.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "qlam/qlam.h"

namespace {

int exit_code(qlam_status s) {
  switch (s) {
    case QLAM_OK: return 0;
    case QLAM_ERR_TYPE:
    case QLAM_ERR_UNTYPABLE: return 1;
    case QLAM_ERR_PARSE:
    case QLAM_ERR_IO:
    case QLAM_ERR_ARGUMENT: return 2;
    case QLAM_ERR_RUNTIME:
    case QLAM_ERR_INCONSISTENT: return 3;
    case QLAM_ERR_EXHAUSTED: return 4;
    case QLAM_ERR_INTERNAL: return 70;
  }
  return 70;
}

struct Args {
  std::string file;
  std::string type;
  std::string gates;
  qlam_options options{};
  bool machine = false;
  bool explain = false;
  bool unsafe = false;
  bool all = false;
};

void emit(char* report, bool ok) {
  if (!report) return;
  std::fputs(report, ok ? stdout : stderr);
  qlam_string_free(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlam: type checking, inference and evaluation for the quantum lambda calculus"};
  app.require_subcommand(1);
  Args a;
  qlam_options_init(&a.options);

  auto* check = app.add_subcommand("check", "check a program, at --type or at an inferred type");
  auto* infer = app.add_subcommand("infer", "infer a type");
  auto* run = app.add_subcommand("run", "sample one reduction path and print its trace");
  auto* explore = app.add_subcommand("explore", "exhaustively expand reductions and print the distribution");
  auto* consistency = app.add_subcommand("consistency", "search all reachable states for an error state");

  for (auto* sub : {check, infer, run, explore, consistency}) {
    sub->add_option("file", a.file, "program source")->required();
    sub->add_option("--gates", a.gates, "gate table file");
  }
  check->add_option("--type", a.type, "target type");
  check->add_flag("--explain", a.explain, "print the derivation");
  infer->add_flag("--all", a.all, "print every type reachable by decorating the root");
  for (auto* sub : {run, explore, consistency}) {
    sub->add_flag("--machine", a.machine, "tab-separated output");
  }
  for (auto* sub : {run, explore}) sub->add_flag("--unsafe", a.unsafe, "evaluate without type checking first");
  run->add_option("--seed", a.options.seed, "random seed")->capture_default_str();
  run->add_option("--max-steps", a.options.max_steps, "step budget")->check(CLI::PositiveNumber);
  for (auto* sub : {explore, consistency})
    sub->add_option("--depth", a.options.depth, "reduction depth")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  a.options.machine = a.machine;
  a.options.unsafe = a.unsafe;

  qlam_context* ctx = qlam_context_create();
  if (!ctx) return 70;
  qlam_status status = QLAM_OK;
  if (!a.gates.empty()) status = qlam_context_load_gates(ctx, a.gates.c_str());
  qlam_program* program = nullptr;
  if (status == QLAM_OK) status = qlam_program_load(ctx, a.file.c_str(), &program);
  if (status != QLAM_OK) {
    std::fprintf(stderr, "qlam: %s\n", qlam_context_last_error(ctx));
    qlam_context_destroy(ctx);
    return exit_code(status);
  }

  char* report = nullptr;
  if (check->parsed())
    status = qlam_check(ctx, program, a.type.empty() ? nullptr : a.type.c_str(), a.explain, &report);
  else if (infer->parsed())
    status = qlam_infer(ctx, program, a.all, &report);
  else if (run->parsed())
    status = qlam_run(ctx, program, &a.options, &report);
  else if (explore->parsed())
    status = qlam_explore(ctx, program, &a.options, &report);
  else
    status = qlam_consistency(ctx, program, &a.options, &report);

  // Evaluation reports stay on stdout even when the outcome is an error.
  const bool to_stdout = status == QLAM_OK || ((run->parsed() || explore->parsed() || consistency->parsed()) &&
                                               (status == QLAM_ERR_RUNTIME || status == QLAM_ERR_EXHAUSTED ||
                                                status == QLAM_ERR_INCONSISTENT));
  emit(report, to_stdout);
  qlam_program_destroy(program);
  qlam_context_destroy(ctx);
  return exit_code(status);
}
