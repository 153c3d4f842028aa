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

#include <string>

namespace driftlab {

/// Exact rational with positive denominator, always kept in lowest terms.
using ExactRational = mpq_class;

inline ExactRational make_rational(const mpz_class& num, const mpz_class& den) {
  ExactRational r(num, den);
  r.canonicalize();
  return r;
}

/// Renders as "p/q" even for integers ("3/1", "0/1").
inline std::string to_fraction_string(const ExactRational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline int sign_of(const ExactRational& r) { return sgn(r); }

/// ⌈num/den⌉ for den > 0.
inline mpz_class ceil_div(const mpz_class& num, const mpz_class& den) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace driftlab
