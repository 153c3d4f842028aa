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

#include "driftlab/digits.hpp"

#include <string>

#include "driftlab/error.hpp"

namespace driftlab {

void check_base(std::uint32_t q) {
  if (q < 2) throw InvalidArgument("invalid base " + std::to_string(q) + ": base must be >= 2");
}

DigitString::DigitString(const mpz_class& value, std::uint32_t base)
    : base_(base), value_(value) {
  check_base(base);
  if (value < 0) throw InvalidArgument("digit expansion requires a nonnegative integer");
  mpz_class rest = value;
  mpz_class digit;
  while (rest != 0) {
    mpz_fdiv_qr_ui(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), base);
    digits_.push_back(static_cast<Digit>(digit.get_ui()));
  }
}

mpz_class DigitString::digit_sum() const {
  mpz_class s = 0;
  for (Digit e : digits_) s += e;
  return s;
}

DigitString to_digits(const mpz_class& n, std::uint32_t q) { return DigitString(n, q); }

mpz_class from_digits(const std::vector<Digit>& digits, std::uint32_t q) {
  check_base(q);
  mpz_class value = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it >= q) throw InvalidArgument("digit out of range for base " + std::to_string(q));
    value = value * q + *it;
  }
  return value;
}

mpz_class digit_sum(const mpz_class& n, std::uint32_t q) { return to_digits(n, q).digit_sum(); }

mpz_class parse_natural(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw InvalidArgument("not a nonnegative decimal integer: '" + std::string(text) + "'");
    }
  }
  return mpz_class(std::string(text), 10);
}

}  // namespace driftlab
