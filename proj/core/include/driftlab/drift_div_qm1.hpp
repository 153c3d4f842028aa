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
#include <utility>
#include <vector>

#include "driftlab/counting.hpp"
#include "driftlab/interval.hpp"
#include "driftlab/rational.hpp"
#include "driftlab/unity.hpp"

namespace driftlab {

/// Requires d >= 2, d | q − 1 and m = q; throws WrongCase otherwise.
void require_divides_q_minus_1(const Quintuple& p);

/// One summand ω^{−j} ε^{−a} ((1−ε)/(1−ωε))^k of the deviation formula.
///
/// For z = e^{2πi x} with 0 < x < 1, 1 − z = 2 sin(πx) e^{iπ(x − 1/2)}, so
/// the value (1−ε)/(1−ωε) has modulus sin(π x_ε)/sin(π x_ωε) and argument
/// π(x_ε − x_ωε), both exact in the turn fractions x.
struct Term {
  UnityRoot omega;
  UnityRoot eps;
  UnityRoot omega_eps;
  /// ω^{−j} ε^{−a}
  UnityRoot weight;
  /// ε = 1, ω ≠ 1: the numerator 1 − ε vanishes.
  bool is_zero = false;
  /// arg(value)/π in (−1, 1); meaningful only when !is_zero.
  mpq_class arg_over_pi;
  Interval magnitude;

  /// value/|value| as an exact root of unity.
  UnityRoot direction() const { return UnityRoot::from_turns(arg_over_pi / 2); }
  ComplexInterval value(unsigned bits) const;
};

/// All qd − 1 pairs (ω, ε) ∈ U(q) × U(d) with ωε ≠ 1, ω-major order.
std::vector<Term> enumerate_terms(const Quintuple& p, unsigned bits = 128);

/// Decides |value(x)| == |value(y)| exactly, as a vanishing sum of roots of
/// unity. Both terms must be non-zero.
bool magnitudes_equal(const Term& x, const Term& y);

/// True when the non-zero term values are pairwise distinct. Values with
/// equal directions are separated by magnitude, exactly if enclosures touch.
bool term_values_distinct(const std::vector<Term>& terms);

/// Exact-argument law: 2·arg(value) + arg(ω) ≡ 0 (mod 2π).
bool argument_law_holds(const Term& t);

/// Magnitude classes of the non-zero terms, largest first. Distinct classes
/// have disjoint enclosures; equal magnitudes are proven exactly.
struct MagnitudeClass {
  std::vector<std::size_t> members;
  Interval magnitude;
};

std::vector<MagnitudeClass> magnitude_classes(const std::vector<Term>& terms);

struct Deviation {
  /// E_{a,j}(k) − q^{k−1}/d
  ExactRational value;
  /// E_{a,j}(k)
  mpz_class count;
  unsigned bits = 0;
  double residual = 0.0;
};

/// Evaluates (1/(dq)) Σ ω^{−j} ε^{−a} ((1−ε)/(1−ωε))^k, recovers the integer
/// E_{a,j}(k) and returns the exact deviation. Requires k >= 1.
Deviation E_exact(const Quintuple& p, std::uint64_t k, const Precision& precision = {});

struct CPrimeValue {
  std::uint64_t k = 0;
  CycloSum exact;
  ComplexInterval value;
  bool exact_zero = false;
  bool exact_real = false;
};

struct AsymptoticProfile {
  explicit AsymptoticProfile(const Quintuple& p) : quintuple(p) {}

  Quintuple quintuple;
  unsigned bits = 0;
  std::vector<Term> terms;
  /// Largest modulus among the non-zero term values.
  Interval R;
  std::vector<std::size_t> maximal_terms;
  std::size_t h = 0;
  /// Second-largest modulus, absent when every non-zero term is maximal.
  std::optional<Interval> R2;
  std::size_t nonmaximal_nonzero = 0;
  std::size_t magnitude_class_count = 0;
  /// The value 1 is not among the maximal terms.
  bool one_excluded = false;
  /// Period of (r_i/R)^k, lcm of the orders of the directions.
  std::uint64_t M = 1;
  std::vector<CPrimeValue> cprime;
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  Interval c1_abs;
  Interval c2;
  ComplexInterval zero_sum;
  bool zero_sum_exact = false;
};

AsymptoticProfile profile(const Quintuple& p, const Precision& precision = {});

/// R and its maximal class alone, without the c′ table. Valid for any q >= 3
/// and d >= 2 with d | q − 1 (a and j are irrelevant).
struct Radius {
  Interval R;
  std::size_t h = 0;
  unsigned bits = 0;
};
Radius dominant_radius(std::uint32_t q, std::uint32_t d, const Precision& precision = {});

struct RGt1Witness {
  UnityRoot eps0;
  UnityRoot omega0;
  /// |1 − ε0| / |1 − ω0 ε0|
  Interval ratio;
  unsigned bits = 0;
};

/// ε0 with Re ε0 < 0 and ω0 with Re(ε0 ω0) >= 0, giving a term of modulus > 1.
RGt1Witness find_r_gt1_witness(const Quintuple& p, const Precision& precision = {});

/// Smallest k >= 1 with count·R2^k < min(c1, c2)·R^k, decided with outward
/// rounding.
std::uint64_t dominance_threshold(const AsymptoticProfile& profile);

struct VerifiedPoint {
  std::uint64_t k = 0;
  ExactRational deviation;
  mpz_class count;
  int sign = 0;
  bool dp_checked = false;
  /// The certificate asserts this point's sign.
  bool claimed = false;
};

struct CertifyOptions {
  Precision precision;
  /// Cross-check E against digit DP when q^k does not exceed this.
  std::uint64_t dp_budget = 10'000'000;
};

struct Certificate {
  Certificate(const Quintuple& p, AsymptoticProfile prof) : quintuple(p), profile(std::move(prof)) {}

  Quintuple quintuple;
  AsymptoticProfile profile;
  std::uint64_t k_star = 1;
  std::uint64_t k_check = 0;
  std::vector<VerifiedPoint> verified_range;
  std::size_t negative_claims = 0;
  std::size_t positive_claims = 0;
};

/// Builds the profile, the dominance threshold, and verifies every k in
/// [1, k_check]. Throws Contradiction if a verified point breaks a claim.
Certificate certify_oscillation(const Quintuple& p, std::uint64_t k_check,
                                const CertifyOptions& options = {});

}  // namespace driftlab
