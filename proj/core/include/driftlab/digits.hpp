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

#include <gmpxx.h>

#include <cstdint>
#include <string_view>
#include <vector>

namespace driftlab {

using Digit = std::uint32_t;

/// Base-q expansion of a nonnegative integer, least-significant digit first.
/// Zero is the empty sequence; there is never a most-significant zero digit.
class DigitString {
 public:
  DigitString(const mpz_class& value, std::uint32_t base);

  std::uint32_t base() const { return base_; }
  const std::vector<Digit>& digits() const { return digits_; }
  const mpz_class& value() const { return value_; }
  std::size_t size() const { return digits_.size(); }

  /// Digit at position i (weight q^i), 0 beyond the top.
  Digit at(std::size_t i) const { return i < digits_.size() ? digits_[i] : 0; }

  /// Sum of all digits.
  mpz_class digit_sum() const;

 private:
  std::uint32_t base_;
  std::vector<Digit> digits_;
  mpz_class value_;
};

void check_base(std::uint32_t q);

DigitString to_digits(const mpz_class& n, std::uint32_t q);

/// Σ digits[i] q^i. Digits must lie in [0, q).
mpz_class from_digits(const std::vector<Digit>& digits, std::uint32_t q);

mpz_class digit_sum(const mpz_class& n, std::uint32_t q);

/// Machine-word version used in inner loops.
constexpr std::uint64_t digit_sum_u64(std::uint64_t n, std::uint64_t q) {
  std::uint64_t s = 0;
  while (n != 0) {
    s += n % q;
    n /= q;
  }
  return s;
}

/// Parses unbounded decimal text ("0", "123...") into a nonnegative integer.
mpz_class parse_natural(std::string_view text);

}  // namespace driftlab
