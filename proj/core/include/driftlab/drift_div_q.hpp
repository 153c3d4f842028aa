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
#include <optional>
#include <string>
#include <vector>

#include "driftlab/counting.hpp"
#include "driftlab/rational.hpp"

namespace driftlab {

/// Pieces of the exact decomposition of g(N) when d | q and m = q. Only the
/// two lowest digit blocks contribute; every higher block sums to zero.
struct ClosedFormBreakdown {
  std::uint32_t eps0 = 0;
  std::uint32_t eps1 = 0;
  std::uint32_t digit_sum_mod_q = 0;
  /// j − s_q(N) + ε1 + ε0 (mod q)
  std::uint32_t alpha = 0;
  /// j − s_q(N) + ε0 (mod q)
  std::uint32_t beta = 0;
  /// Contribution of n sharing all digits of N above position 1.
  ExactRational form1_value;
  /// Contribution of n sharing all digits of N above position 0.
  ExactRational form2_value;
  /// (1/q)⌈(N−a)/d⌉ − N/(dq)
  ExactRational correction;
  ExactRational g;
};

/// Requires d | q and m = q; throws WrongCase otherwise.
void require_divides_q(const Quintuple& p);

ClosedFormBreakdown closed_form_g(const Quintuple& p, const mpz_class& n_bound);

/// D_{j'}(q^r) = count_{j'}(q^r) − (1/q) #{n < q^r : n ≡ a (mod d)}.
ExactRational block_deviation(const Quintuple& p, std::uint32_t j_prime, std::uint32_t r);

/// True iff block_deviation(p, j', r) == 0. Requires r >= 2.
bool check_block_vanishing(const Quintuple& p, std::uint32_t j_prime, std::uint32_t r);

enum class Sign { kNegative, kPositive };

std::string to_string(Sign sign);

/// All N whose two lowest digits are (eps1, eps0) and whose digit sum mod q
/// lies in `digit_sum_classes`; g is constant on the family.
struct WitnessFamily {
  explicit WitnessFamily(const Quintuple& p) : quintuple(p) {}

  Quintuple quintuple;
  Sign sign = Sign::kNegative;
  std::uint32_t eps1 = 0;
  std::uint32_t eps0 = 0;
  /// Allowed values of s_q(N) mod q, ascending.
  std::vector<std::uint32_t> digit_sum_classes;
  /// Smallest divisor μ of q such that the allowed classes are a union of
  /// residue classes mod μ (1 means unconstrained).
  std::uint32_t constraint_modulus = 1;
  /// Value of g on every member, validated by exact counting.
  ExactRational predicted_g;
  std::vector<mpz_class> members;

  /// The textbook recipe this search started from.
  std::string recipe;
  /// True when the recipe's (ε1, ε0) yielded the family.
  bool from_recipe = false;
  /// The constant the recipe displays, and whether it matched.
  ExactRational recipe_g;
  bool recipe_g_matches = false;
  /// The recipe's digit-sum condition, and whether it equals the validated set.
  std::string recipe_constraint;
  bool recipe_constraint_matches = false;

  std::string constraint_text() const;
};

WitnessFamily witness(const Quintuple& p, Sign sign, std::size_t member_count = 5);
inline WitnessFamily witness_negative(const Quintuple& p) { return witness(p, Sign::kNegative); }
inline WitnessFamily witness_positive(const Quintuple& p) { return witness(p, Sign::kPositive); }

/// An N >= 1 with the given two low digits and digit sum ≡ sigma (mod q),
/// built by adding a single digit at position 2 (two digits when N would be 0).
mpz_class canonical_representative(std::uint32_t q, std::uint32_t eps1, std::uint32_t eps0,
                                   std::uint32_t sigma);

}  // namespace driftlab
