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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "driftlab/counting.hpp"
#include "driftlab/interval.hpp"

namespace driftlab {

/// e^{2πi t/n} in canonical form: 0 <= t < n, gcd(t, n) = 1, and t = 0 forces n = 1.
class UnityRoot {
 public:
  UnityRoot() = default;
  /// Any integer t and n >= 1; reduced on construction.
  UnityRoot(std::int64_t t, std::uint64_t n);

  static UnityRoot identity() { return {}; }
  /// The primitive root ω_n = e^{2πi/n}.
  static UnityRoot primitive(std::uint64_t n) { return UnityRoot(1, n); }
  /// e^{2πi x} for rational x.
  static UnityRoot from_turns(const mpq_class& x);

  std::uint64_t t() const { return t_; }
  std::uint64_t n() const { return n_; }
  /// Multiplicative order; equals n in canonical form.
  std::uint64_t order() const { return n_; }
  bool is_identity() const { return t_ == 0; }
  /// Argument as a fraction of a full turn, in [0, 1).
  mpq_class turns() const { return mpq_class(t_, n_); }

  UnityRoot inverse() const;
  UnityRoot conj() const { return inverse(); }
  UnityRoot pow(std::int64_t k) const;
  friend UnityRoot operator*(const UnityRoot& x, const UnityRoot& y);
  friend bool operator==(const UnityRoot&, const UnityRoot&) = default;
  friend std::strong_ordering operator<=>(const UnityRoot& x, const UnityRoot& y) {
    return static_cast<Wide>(x.t_) * y.n_ <=> static_cast<Wide>(y.t_) * x.n_;
  }

  /// Exact sign of the real part: +1, 0 or −1.
  int real_sign() const;

  ComplexInterval enclose(unsigned bits) const;

  std::string to_string() const;

 private:
  __extension__ using Wide = unsigned __int128;
  std::uint64_t t_ = 0;
  std::uint64_t n_ = 1;
};

/// All elements of U(n) in the order ω_n^0, ω_n^1, ..., ω_n^{n−1}.
std::vector<UnityRoot> roots_of_unity(std::uint64_t n);

/// Exact element Σ c_i ζ_i of a cyclotomic field, ζ_i roots of unity and c_i
/// integers. Zero-testing reduces modulo the cyclotomic polynomial.
class CycloSum {
 public:
  void add(const mpz_class& coefficient, const UnityRoot& root);
  void add(const CycloSum& other);
  CycloSum times(const UnityRoot& root) const;
  CycloSum conj() const;
  CycloSum negate() const;

  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<mpz_class, UnityRoot>>& terms() const { return terms_; }

  /// Coordinates in the power basis {1, ζ_L, ..., ζ_L^{φ(L)−1}} where L is
  /// the lcm of the term orders.
  std::vector<mpz_class> reduced_coordinates(std::uint64_t* conductor = nullptr) const;

  bool is_zero() const;
  /// The exact value when it is rational.
  bool rational_value(mpq_class* out) const;
  /// Exact test that the element is real.
  bool is_real() const;

  ComplexInterval enclose(unsigned bits) const;

 private:
  std::vector<std::pair<mpz_class, UnityRoot>> terms_;
};

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<mpz_class>& cyclotomic_polynomial(std::uint64_t n);

enum class FilterRoute { kExact, kInterval };

/// Keeps a_k for k ≡ l (mod n), zero elsewhere, computed as
/// (1/n) Σ_s ω_n^{−ls} f(ω_n^s x).
std::vector<mpz_class> residue_filter(const std::vector<mpz_class>& coeffs, std::uint64_t n,
                                      std::uint64_t l, FilterRoute route = FilterRoute::kExact,
                                      const Precision& precision = {});

/// P(w, e) = Π_{i<k} Σ_{l<q} w^l e^{l q^i} for w ∈ U(m), e ∈ U(d).
ComplexInterval evaluate_P(const Quintuple& p, std::uint64_t k, const UnityRoot& w,
                           const UnityRoot& e, unsigned bits);

struct FilterCount {
  mpz_class value;
  unsigned bits = 0;
  /// Upper bound on |Re − value| at the accepted precision.
  double residual = 0.0;
};

/// #{n < q^k : n ≡ a (mod d), s_q(n) ≡ j (mod m)} from the root-of-unity
/// double sum (1/(dm)) Σ_{ω∈U(m), ε∈U(d)} ω^{−j} ε^{−a} P(ω, ε).
FilterCount count_via_filter(const Quintuple& p, std::uint64_t k, const Precision& precision = {});

}  // namespace driftlab
