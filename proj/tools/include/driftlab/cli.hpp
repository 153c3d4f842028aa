// Copyright 2026 The driftlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "driftlab/interval.hpp"

namespace driftlab::cli {

enum class Format { kPlain, kJson, kCsv };

/// Settings shared by every command.
struct RunConfig {
  Precision precision;
  std::uint64_t scan_budget = 10'000'000;
  std::uint64_t brute_budget = 1'000'000;
  Format format = Format::kPlain;
  std::uint64_t seed = 0;
};

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kBudget = 3,
  kPrecision = 4,
  kWrongCase = 5,
};

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace driftlab::cli
