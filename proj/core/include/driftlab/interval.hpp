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
#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "driftlab/error.hpp"

namespace driftlab {

/// Precision schedule: start at `start_bits`, double on every failed
/// certification, give up above `cap_bits`.
struct Precision {
  unsigned start_bits = 128;
  unsigned cap_bits = 4096;
};

/// Thrown inside a computation when the current working precision cannot
/// certify a result. `with_escalation` turns it into a retry.
class PrecisionInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs `fn(bits)` at increasing precision until it stops throwing
/// PrecisionInsufficient. Returns the result together with the bits used.
template <typename Fn>
auto with_escalation(const Precision& precision, Fn&& fn) {
  unsigned bits = precision.start_bits;
  while (true) {
    try {
      return std::make_pair(fn(bits), bits);
    } catch (const PrecisionInsufficient& e) {
      if (bits >= precision.cap_bits) {
        throw PrecisionExhausted(std::string("precision exhausted at ") + std::to_string(bits) +
                                 " bits: " + e.what());
      }
      bits = std::min(bits * 2, precision.cap_bits);
    }
  }
}

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
 public:
  explicit Interval(unsigned bits = 128);
  Interval(long value, unsigned bits);
  Interval(const mpz_class& value, unsigned bits);
  Interval(const mpq_class& value, unsigned bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval pi(unsigned bits);
  /// [lo, hi] rounded outward to `bits`.
  static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, unsigned bits);

  unsigned bits() const { return bits_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const mpq_class& value) const;

  /// Upper bound on hi − lo.
  double width_upper() const;
  /// True when hi − lo < 2^exponent, decided exactly.
  bool width_below_pow2(long exponent) const;

  /// Sign of every member: +1, −1, or 0 if the interval straddles zero.
  int certain_sign() const;

  double mid_double() const;
  /// Nearest integer to the midpoint.
  mpz_class nearest_integer() const;

  /// Decimal midpoint with enough digits for `bits`, and an upward-rounded
  /// radius that also covers the decimal rounding of the midpoint.
  std::pair<std::string, std::string> to_mid_rad_strings() const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator-=(const Interval& b) { return *this = *this - b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  Interval pow(unsigned long exponent) const;
  Interval sqr() const;
  Interval sqrt() const;
  /// Natural log; requires a positive interval.
  Interval log() const;
  Interval abs() const;

  /// Intersection of two enclosures of the same quantity.
  Interval intersect(const Interval& other) const;
  Interval hull(const Interval& other) const;

  /// a.hi < b.lo
  friend bool certainly_less(const Interval& a, const Interval& b);
  friend bool overlaps(const Interval& a, const Interval& b);

 private:
  void init(unsigned bits);

  unsigned bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Enclosure of cos(π x) for rational x.
Interval cos_pi(const mpq_class& x, unsigned bits);
/// Enclosure of sin(π x) for rational x.
Interval sin_pi(const mpq_class& x, unsigned bits);

/// Rectangular complex enclosure.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(unsigned bits = 128) : re(bits), im(bits) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  unsigned bits() const { return re.bits(); }

  ComplexInterval conj() const { return {re, -im}; }
  ComplexInterval scale(const Interval& s) const { return {re * s, im * s}; }
  Interval abs_sqr() const { return re.sqr() + im.sqr(); }
  Interval abs() const { return abs_sqr().sqrt(); }
  ComplexInterval pow(unsigned long exponent) const;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
  ComplexInterval& operator+=(const ComplexInterval& b) { return *this = *this + b; }
  ComplexInterval& operator*=(const ComplexInterval& b) { return *this = *this * b; }
};

/// If `z` certainly lies within `tolerance` of a single integer (real part)
/// and within `tolerance` of the real axis, stores that integer and an upper
/// bound on |Re z − integer| and returns true.
bool certified_integer(const ComplexInterval& z, const mpq_class& tolerance, mpz_class* out,
                       double* residual = nullptr);

}  // namespace driftlab
