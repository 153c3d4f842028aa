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

#include <gtest/gtest.h>

#include <cmath>

#include "driftlab/error.hpp"

namespace driftlab {
namespace {

TEST(IntervalTest, PointsAreExact) {
  const Interval x(3L, 128);
  EXPECT_TRUE(x.is_point());
  EXPECT_TRUE(x.contains(3));
  EXPECT_FALSE(x.contains(mpq_class(301, 100)));
  EXPECT_EQ(x.bits(), 128u);
}

TEST(IntervalTest, RationalEnclosureContainsValue) {
  const mpq_class third(1, 3);
  const Interval x(third, 64);
  EXPECT_FALSE(x.is_point());
  EXPECT_TRUE(x.contains(third));
  EXPECT_TRUE(x.width_below_pow2(-60));
}

TEST(IntervalTest, ArithmeticIsOutward) {
  const Interval third(mpq_class(1, 3), 128);
  const Interval sum = third + third + third;
  EXPECT_TRUE(sum.contains(1));
  const Interval prod = third * Interval(3L, 128);
  EXPECT_TRUE(prod.contains(1));
  const Interval q = Interval(1L, 128) / Interval(3L, 128);
  EXPECT_TRUE(overlaps(q, third));
  EXPECT_TRUE((third - third).contains_zero());
}

TEST(IntervalTest, DivisionByZeroNeedsPrecision) {
  const Interval zeroish = Interval(mpq_class(1, 3), 64) - Interval(mpq_class(1, 3), 64);
  EXPECT_THROW(Interval(1L, 64) / zeroish, PrecisionInsufficient);
}

TEST(IntervalTest, PowHandlesSignsAndZero) {
  const Interval x = Interval(-2L, 64).hull(Interval(1L, 64));
  const Interval sq = x.pow(2);
  EXPECT_TRUE(sq.contains(0));
  EXPECT_TRUE(sq.contains(4));
  EXPECT_FALSE(sq.contains(-1));
  EXPECT_TRUE(Interval(-2L, 64).pow(3).contains(-8));
  EXPECT_TRUE(Interval(0L, 64).pow(0).contains(1));
  const Interval nonneg = Interval(0L, 64).hull(Interval(2L, 64));
  EXPECT_TRUE(nonneg.pow(2).contains(4));
}

TEST(IntervalTest, CertainComparisons) {
  const Interval a(1L, 64);
  const Interval b(2L, 64);
  EXPECT_TRUE(certainly_less(a, b));
  EXPECT_FALSE(certainly_less(b, a));
  EXPECT_FALSE(overlaps(a, b));
  EXPECT_TRUE(overlaps(a, a.hull(b)));
  EXPECT_EQ(a.certain_sign(), 1);
  EXPECT_EQ((-a).certain_sign(), -1);
  EXPECT_EQ((a - a.hull(b)).certain_sign(), 0);
}

TEST(IntervalTest, IntersectDisjointIsContradiction) {
  EXPECT_THROW(Interval(1L, 64).intersect(Interval(2L, 64)), Contradiction);
  const Interval both = Interval(1L, 64).hull(Interval(3L, 64)).intersect(Interval(2L, 64));
  EXPECT_TRUE(both.is_point());
}

TEST(IntervalTest, PiAndLog) {
  const Interval pi = Interval::pi(256);
  EXPECT_NEAR(pi.mid_double(), M_PI, 1e-15);
  EXPECT_TRUE(pi.width_below_pow2(-250));
  EXPECT_TRUE(Interval(1L, 128).log().contains(0));
  EXPECT_NEAR(Interval(2L, 128).log().mid_double(), std::log(2.0), 1e-15);
}

TEST(IntervalTest, SqrtAndAbs) {
  EXPECT_TRUE(Interval(4L, 64).sqrt().contains(2));
  EXPECT_TRUE(Interval(-5L, 64).abs().contains(5));
}

TEST(IntervalTest, TrigSpecialValuesAreExact) {
  EXPECT_TRUE(cos_pi(0, 128).contains(1));
  EXPECT_TRUE(cos_pi(0, 128).is_point());
  EXPECT_TRUE(cos_pi(mpq_class(1, 2), 128).is_point());
  EXPECT_TRUE(cos_pi(mpq_class(1, 2), 128).contains(0));
  EXPECT_TRUE(cos_pi(mpq_class(1, 3), 128).contains(mpq_class(1, 2)));
  EXPECT_TRUE(cos_pi(1, 128).contains(-1));
  EXPECT_TRUE(sin_pi(mpq_class(1, 6), 128).contains(mpq_class(1, 2)));
  EXPECT_TRUE(sin_pi(mpq_class(-1, 2), 128).contains(-1));
  EXPECT_TRUE(sin_pi(7, 128).contains(0));
}

TEST(IntervalTest, TrigMatchesDouble) {
  for (int num = -40; num <= 40; ++num) {
    const mpq_class x(num, 17);
    const Interval c = cos_pi(x, 128);
    const Interval s = sin_pi(x, 128);
    EXPECT_NEAR(c.mid_double(), std::cos(M_PI * num / 17.0), 1e-14);
    EXPECT_NEAR(s.mid_double(), std::sin(M_PI * num / 17.0), 1e-14);
    EXPECT_TRUE(c.width_below_pow2(-100));
    EXPECT_TRUE((c.sqr() + s.sqr()).contains(1));
  }
}

TEST(IntervalTest, MidRadStringsCoverValue) {
  const Interval x(mpq_class(2, 3), 128);
  auto [mid, rad] = x.to_mid_rad_strings();
  EXPECT_EQ(mid.substr(0, 10), "6.66666666");
  EXPECT_NE(rad, "0.000000e+00");
  auto [mid2, rad2] = Interval(2L, 128).to_mid_rad_strings();
  EXPECT_EQ(rad2, "0.000000e+00");
  EXPECT_EQ(mid2.substr(0, 4), "2.00");
}

TEST(IntervalTest, NearestInteger) {
  EXPECT_EQ(Interval(mpq_class(7, 2) + mpq_class(1, 10), 64).nearest_integer(), 4);
  EXPECT_EQ(Interval(mpq_class(-29, 10), 64).nearest_integer(), -3);
}

TEST(ComplexIntervalTest, CertifiedInteger) {
  const ComplexInterval z(Interval(mpq_class(5) + mpq_class(1, 1000), 128),
                          Interval(mpq_class(1, 1000), 128));
  mpz_class n;
  double residual = 0;
  EXPECT_TRUE(certified_integer(z, mpq_class(1, 4), &n, &residual));
  EXPECT_EQ(n, 5);
  EXPECT_LT(residual, 0.01);
  const ComplexInterval half(Interval(mpq_class(11, 2), 128), Interval(0L, 128));
  EXPECT_FALSE(certified_integer(half, mpq_class(1, 4), &n, &residual));
}

TEST(ComplexIntervalTest, Algebra) {
  const ComplexInterval i(Interval(0L, 128), Interval(1L, 128));
  const ComplexInterval minus_one = i * i;
  EXPECT_TRUE(minus_one.re.contains(-1));
  EXPECT_TRUE(minus_one.im.contains(0));
  EXPECT_TRUE(i.pow(4).re.contains(1));
  EXPECT_TRUE(i.abs().contains(1));
  const ComplexInterval q = ComplexInterval(Interval(1L, 128), Interval(0L, 128)) / i;
  EXPECT_TRUE(q.im.contains(-1));
}

TEST(EscalationTest, RetriesThenGivesUp) {
  int calls = 0;
  auto [value, bits] = with_escalation(Precision{64, 1024}, [&](unsigned b) {
    ++calls;
    if (b < 256) throw PrecisionInsufficient("need more");
    return 42;
  });
  EXPECT_EQ(value, 42);
  EXPECT_EQ(bits, 256u);
  EXPECT_EQ(calls, 3);
  EXPECT_THROW(with_escalation(Precision{64, 128},
                               [](unsigned) -> int { throw PrecisionInsufficient("never"); }),
               PrecisionExhausted);
}

}  // namespace
}  // namespace driftlab
