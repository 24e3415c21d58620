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


// The bundled programs, read from the source tree.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qlam/quantum.hpp"
#include "qlam/syntax.hpp"

#ifndef QLAM_PROGRAMS_DIR
#error "QLAM_PROGRAMS_DIR must name the programs directory"
#endif

namespace qlam::testing {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TermPtr load_program(const std::string& relative) {
  return parse(read_file(std::filesystem::path(QLAM_PROGRAMS_DIR) / relative), GateTable::builtin());
}

struct NamedProgram {
  std::string name;
  TermPtr term;
};

/// The well-typed corpus, sorted by file name.
inline std::vector<NamedProgram> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(QLAM_PROGRAMS_DIR) / "corpus"))
    if (e.path().extension() == ".qlam") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedProgram> out;
  for (const auto& f : files) out.push_back({f.stem().string(), parse(read_file(f), GateTable::builtin())});
  return out;
}

}  // namespace qlam::testing
