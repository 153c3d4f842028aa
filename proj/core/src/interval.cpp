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

#include "driftlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace driftlab {

namespace {

unsigned join_bits(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

struct MpfrTemp {
  mpfr_t v;
  explicit MpfrTemp(unsigned bits) { mpfr_init2(v, bits); }
  ~MpfrTemp() { mpfr_clear(v); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
};

std::string mpfr_to_string(const char* format, mpfr_srcptr value, int digits) {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, format, digits, value);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

}  // namespace

void Interval::init(unsigned bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  bits_ = bits;
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
}

Interval::Interval(unsigned bits) {
  init(bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, unsigned bits) {
  init(bits);
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const mpz_class& value, unsigned bits) {
  init(bits);
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& value, unsigned bits) {
  init(bits);
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  init(other.bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  init(other.bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (bits_ != other.bits_) {
    mpfr_set_prec(lo_, other.bits_);
    mpfr_set_prec(hi_, other.bits_);
    bits_ = other.bits_;
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other && bits_ == other.bits_) {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
  }
  return *this = static_cast<const Interval&>(other);
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, unsigned bits) {
  if (mpfr_cmp(lo, hi) > 0) throw InvalidArgument("interval endpoints out of order");
  Interval out(bits);
  mpfr_set(out.lo_, lo, MPFR_RNDD);
  mpfr_set(out.hi_, hi, MPFR_RNDU);
  return out;
}

Interval Interval::pi(unsigned bits) {
  Interval out(bits);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

bool Interval::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

double Interval::width_upper() const {
  MpfrTemp w(bits_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::width_below_pow2(long exponent) const {
  MpfrTemp w(bits_ + 2);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_cmp_ui_2exp(w.v, 1, exponent) < 0;
}

int Interval::certain_sign() const {
  if (is_positive()) return 1;
  if (is_negative()) return -1;
  return 0;
}

double Interval::mid_double() const {
  MpfrTemp m(bits_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

mpz_class Interval::nearest_integer() const {
  MpfrTemp m(bits_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  mpfr_round(m.v, m.v);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), m.v, MPFR_RNDN);
  return out;
}

std::pair<std::string, std::string> Interval::to_mid_rad_strings() const {
  const int digits = static_cast<int>(std::ceil(bits_ * 0.30102999566398120)) + 1;
  MpfrTemp mid(bits_ + 1);
  mpfr_add(mid.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);

  MpfrTemp rad(64);
  MpfrTemp tmp(bits_ + 1);
  mpfr_sub(tmp.v, hi_, mid.v, MPFR_RNDU);
  mpfr_set(rad.v, tmp.v, MPFR_RNDU);
  mpfr_sub(tmp.v, mid.v, lo_, MPFR_RNDU);
  if (mpfr_cmp(tmp.v, rad.v) > 0) mpfr_set(rad.v, tmp.v, MPFR_RNDU);

  std::string mid_text = mpfr_to_string("%.*RNe", mid.v, digits - 1);

  // Widen by the decimal rounding error unless the text is exact.
  MpfrTemp parsed(4 * static_cast<unsigned>(digits) * 4 + bits_);
  const int inexact = mpfr_set_str(parsed.v, mid_text.c_str(), 10, MPFR_RNDN);
  if (inexact != 0 || mpfr_cmp(parsed.v, mid.v) != 0) {
    MpfrTemp err(64);
    mpfr_sub(err.v, parsed.v, mid.v, MPFR_RNDU);
    mpfr_abs(err.v, err.v, MPFR_RNDU);
    if (inexact != 0) {
      MpfrTemp slack(64);
      mpfr_abs(slack.v, mid.v, MPFR_RNDU);
      mpfr_mul_2si(slack.v, slack.v, -static_cast<long>(mpfr_get_prec(parsed.v)) + 1, MPFR_RNDU);
      mpfr_add(err.v, err.v, slack.v, MPFR_RNDU);
    }
    mpfr_add(rad.v, rad.v, err.v, MPFR_RNDU);
  }
  std::string rad_text = mpfr_to_string("%.*RUe", rad.v, 6);
  return {mid_text, rad_text};
}

Interval Interval::operator-() const {
  Interval out(bits_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(join_bits(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(join_bits(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const unsigned bits = join_bits(a, b);
  Interval out(bits);
  if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
    mpfr_mul(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return out;
  }
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  MpfrTemp down(bits);
  MpfrTemp up(bits);
  bool first = true;
  for (mpfr_srcptr x : as) {
    for (mpfr_srcptr y : bs) {
      mpfr_mul(down.v, x, y, MPFR_RNDD);
      mpfr_mul(up.v, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(down.v, out.lo_) < 0) mpfr_set(out.lo_, down.v, MPFR_RNDD);
      if (first || mpfr_cmp(up.v, out.hi_) > 0) mpfr_set(out.hi_, up.v, MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw PrecisionInsufficient("interval division by an enclosure of zero");
  const unsigned bits = join_bits(a, b);
  Interval inv(bits);
  // 1/[lo, hi] = [1/hi, 1/lo] for intervals of one sign.
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::pow(unsigned long exponent) const {
  if (exponent == 0) return Interval(1L, bits_);
  if (exponent % 2 == 0 && mpfr_sgn(lo_) < 0) return abs().pow(exponent);
  // Odd powers are monotone; even powers of nonnegative intervals too.
  Interval out(bits_);
  mpfr_pow_ui(out.lo_, lo_, exponent, MPFR_RNDD);
  mpfr_pow_ui(out.hi_, hi_, exponent, MPFR_RNDU);
  return out;
}

Interval Interval::sqr() const { return pow(2); }

Interval Interval::sqrt() const {
  if (is_negative()) throw PrecisionInsufficient("sqrt of a negative interval");
  Interval out(bits_);
  if (mpfr_sgn(lo_) <= 0) {
    mpfr_set_zero(out.lo_, 1);
  } else {
    mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::log() const {
  if (!is_positive()) throw PrecisionInsufficient("log of an interval not bounded away from 0");
  Interval out(bits_);
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval out(bits_);
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  if (mpfr_cmp(hi_, out.hi_) > 0) mpfr_set(out.hi_, hi_, MPFR_RNDU);
  return out;
}

Interval Interval::intersect(const Interval& other) const {
  Interval out(join_bits(*this, other));
  mpfr_max(out.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_min(out.hi_, hi_, other.hi_, MPFR_RNDU);
  if (mpfr_cmp(out.lo_, out.hi_) > 0) {
    throw Contradiction("disjoint enclosures of the same quantity");
  }
  return out;
}

Interval Interval::hull(const Interval& other) const {
  Interval out(join_bits(*this, other));
  mpfr_min(out.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, hi_, other.hi_, MPFR_RNDU);
  return out;
}

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_) != 0; }

bool overlaps(const Interval& a, const Interval& b) {
  return !certainly_less(a, b) && !certainly_less(b, a);
}

namespace {

// cos(π r) for r in [0, 1/2], not one of the exact special values.
Interval cos_pi_reduced(const mpq_class& r, unsigned bits) {
  const Interval x = Interval::pi(bits) * Interval(r, bits);
  // |cos(x) − cos(p)| ≤ |x − p| for the sample point p = x.lo.
  MpfrTemp width(bits);
  mpfr_sub(width.v, x.hi(), x.lo(), MPFR_RNDU);
  MpfrTemp c(bits);

  MpfrTemp lo(bits);
  MpfrTemp hi(bits);
  mpfr_cos(c.v, x.lo(), MPFR_RNDD);
  mpfr_sub(lo.v, c.v, width.v, MPFR_RNDD);
  mpfr_cos(c.v, x.lo(), MPFR_RNDU);
  mpfr_add(hi.v, c.v, width.v, MPFR_RNDU);
  if (mpfr_cmp_si(lo.v, -1) < 0) mpfr_set_si(lo.v, -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.v, 1) > 0) mpfr_set_si(hi.v, 1, MPFR_RNDU);
  return Interval::from_endpoints(lo.v, hi.v, bits);
}

}  // namespace

Interval cos_pi(const mpq_class& x, unsigned bits) {
  // Reduce to r in [0, 2).
  mpq_class r = x;
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (whole % 2 != 0) whole -= 1;
  r -= whole;
  if (r >= 2) r -= 2;

  // cos(π r) = cos(π (2 − r)) folds (1, 2) onto (0, 1).
  if (r > 1) r = 2 - r;
  bool negate = false;
  if (r > mpq_class(1, 2)) {
    r = 1 - r;
    negate = true;
  }

  Interval out(bits);
  if (r == 0) {
    out = Interval(1L, bits);
  } else if (r == mpq_class(1, 2)) {
    out = Interval(0L, bits);
  } else if (r == mpq_class(1, 3)) {
    out = Interval(mpq_class(1, 2), bits);
  } else {
    out = cos_pi_reduced(r, bits);
  }
  return negate ? -out : out;
}

Interval sin_pi(const mpq_class& x, unsigned bits) { return cos_pi(mpq_class(1, 2) - x, bits); }

ComplexInterval ComplexInterval::pow(unsigned long exponent) const {
  ComplexInterval result(Interval(1L, bits()), Interval(0L, bits()));
  ComplexInterval base = *this;
  while (exponent != 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const Interval denom = b.abs_sqr();
  const ComplexInterval num = a * b.conj();
  return {num.re / denom, num.im / denom};
}

bool certified_integer(const ComplexInterval& z, const mpq_class& tolerance, mpz_class* out,
                       double* residual) {
  const unsigned bits = z.bits();
  const mpz_class nearest = z.re.nearest_integer();
  const Interval tol(tolerance, bits);
  const Interval offset = z.re - Interval(nearest, bits);
  if (!certainly_less(offset, tol) || !certainly_less(-tol, offset)) return false;
  if (!certainly_less(z.im, tol) || !certainly_less(-tol, z.im)) return false;
  *out = nearest;
  if (residual != nullptr) {
    MpfrTemp r(bits);
    mpfr_abs(r.v, offset.lo(), MPFR_RNDU);
    double worst = mpfr_get_d(r.v, MPFR_RNDU);
    mpfr_abs(r.v, offset.hi(), MPFR_RNDU);
    *residual = std::max(worst, mpfr_get_d(r.v, MPFR_RNDU));
  }
  return true;
}

}  // namespace driftlab
