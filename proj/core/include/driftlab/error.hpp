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

#include <stdexcept>
#include <string>

namespace driftlab {

/// Base class for every error raised by the library. `kind()` lets front ends
/// map failures to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    kInvalidArgument,
    kBudgetExceeded,
    kPrecisionExhausted,
    kWrongCase,
    kContradiction,
    kSearchExhausted,
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(Kind::kInvalidArgument, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(Kind::kBudgetExceeded, what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error(Kind::kPrecisionExhausted, what) {}
};

class WrongCase : public Error {
 public:
  explicit WrongCase(const std::string& what) : Error(Kind::kWrongCase, what) {}
};

/// A verified value disagreed with a claim. Indicates an implementation bug.
class Contradiction : public Error {
 public:
  explicit Contradiction(const std::string& what) : Error(Kind::kContradiction, what) {}
};

class SearchExhausted : public Error {
 public:
  explicit SearchExhausted(const std::string& what) : Error(Kind::kSearchExhausted, what) {}
};

}  // namespace driftlab
