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

#include "driftlab/drift_div_qm1.hpp"

#include <gtest/gtest.h>

#include "driftlab/error.hpp"

namespace driftlab {
namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> qm1_pairs(std::uint32_t q_max) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t q = 3; q <= q_max; ++q) {
    for (std::uint32_t d = 2; d < q; ++d) {
      if ((q - 1) % d == 0) out.emplace_back(q, d);
    }
  }
  return out;
}

mpz_class power(std::uint32_t q, std::uint64_t k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), q, k);
  return out;
}

TEST(TermsTest, CountAndZeros) {
  const auto terms = enumerate_terms(Quintuple(5, 1, 4, 2, 5));
  EXPECT_EQ(terms.size(), 5u * 4u - 1u);
  std::size_t zeros = 0;
  for (const auto& t : terms) {
    EXPECT_FALSE(t.omega_eps.is_identity());
    if (t.is_zero) {
      ++zeros;
      EXPECT_TRUE(t.eps.is_identity());
      EXPECT_TRUE(t.magnitude.contains(0));
    }
  }
  EXPECT_EQ(zeros, 4u);
}

TEST(TermsTest, ValuesMatchDirectEvaluation) {
  const auto terms = enumerate_terms(Quintuple(7, 2, 3, 4, 7), 128);
  for (const auto& t : terms) {
    if (t.is_zero) continue;
    const ComplexInterval one(Interval(1L, 128), Interval(0L, 128));
    const ComplexInterval direct = (one - t.eps.enclose(128)) / (one - t.omega_eps.enclose(128));
    const ComplexInterval v = t.value(128);
    EXPECT_TRUE(overlaps(direct.re, v.re));
    EXPECT_TRUE(overlaps(direct.im, v.im));
  }
}

TEST(TermsTest, ArgumentLaw) {
  for (auto [q, d] : qm1_pairs(20)) {
    for (const auto& t : enumerate_terms(Quintuple(q, 0, d, 0, q))) {
      EXPECT_TRUE(argument_law_holds(t)) << q << " " << d;
    }
  }
}

TEST(TermsTest, ConjugatePairsHaveEqualMagnitude) {
  const auto terms = enumerate_terms(Quintuple(7, 0, 6, 0, 7));
  for (std::size_t x = 0; x < terms.size(); ++x) {
    for (std::size_t y = 0; y < terms.size(); ++y) {
      if (terms[x].is_zero || terms[y].is_zero) continue;
      const bool conjugate =
          terms[x].omega == terms[y].omega.conj() && terms[x].eps == terms[y].eps.conj();
      if (conjugate) EXPECT_TRUE(magnitudes_equal(terms[x], terms[y]));
      if (!overlaps(terms[x].magnitude, terms[y].magnitude)) {
        EXPECT_FALSE(magnitudes_equal(terms[x], terms[y]));
      }
    }
  }
}

TEST(TermsTest, DistinctOnlyWhenOmegaOneIsCollapsed) {
  // ω = 1, ε ≠ 1 always gives the value 1, once per ε.
  EXPECT_TRUE(term_values_distinct(enumerate_terms(Quintuple(3, 0, 2, 0, 3))));
  for (auto [q, d] : qm1_pairs(20)) {
    auto terms = enumerate_terms(Quintuple(q, 0, d, 0, q));
    EXPECT_EQ(term_values_distinct(terms), d == 2) << q << " " << d;
    std::vector<Term> collapsed;
    bool kept_one = false;
    for (auto& t : terms) {
      if (t.omega.is_identity() && !t.is_zero) {
        if (kept_one) continue;
        kept_one = true;
      }
      collapsed.push_back(t);
    }
    EXPECT_TRUE(term_values_distinct(collapsed)) << q << " " << d;
  }
}

TEST(TermsTest, WrongCaseAndBadK) {
  EXPECT_THROW(enumerate_terms(Quintuple(10, 0, 2, 0, 10)), WrongCase);
  EXPECT_THROW(enumerate_terms(Quintuple(7, 0, 3, 0, 6)), WrongCase);
  EXPECT_THROW(E_exact(Quintuple(3, 0, 2, 0, 3), 0), InvalidArgument);
}

TEST(EExactTest, OracleValues) {
  const Quintuple p(3, 0, 2, 0, 3);
  const long counts[] = {1, 1, 2, 11, 46, 143, 386, 1051};
  const ExactRational deviations[] = {{1, 2},  {-1, 2}, {-5, 2}, {-5, 2},
                                      {11, 2}, {43, 2}, {43, 2}, {-85, 2}};
  for (std::uint64_t k = 1; k <= 8; ++k) {
    const Deviation dev = E_exact(p, k);
    EXPECT_EQ(dev.count, counts[k - 1]) << "k = " << k;
    EXPECT_EQ(dev.value, deviations[k - 1]) << "k = " << k;
    EXPECT_LT(dev.residual, 0.25);
  }
  EXPECT_EQ(E_exact(Quintuple(3, 1, 2, 0, 3), 1).value, ExactRational(-1, 2));
}

TEST(EExactTest, MatchesDigitDp) {
  for (auto [q, d] : qm1_pairs(7)) {
    for (std::uint32_t a = 0; a < d; ++a) {
      for (std::uint32_t j = 0; j < q; ++j) {
        const Quintuple p(q, a, d, j, q);
        for (std::uint64_t k = 1; k <= 5; ++k) {
          EXPECT_EQ(E_exact(p, k).count, dp_count(p, power(q, k))) << p.to_string() << " " << k;
        }
      }
    }
  }
}

TEST(EExactTest, LargeKNeedsMorePrecision) {
  const Quintuple p(3, 0, 2, 0, 3);
  const Deviation dev = E_exact(p, 200);
  EXPECT_GT(dev.bits, 128u);
  EXPECT_EQ(dev.count, dp_count(p, power(3, 200)));
}

TEST(ProfileTest, BaseThreeGolden) {
  const AsymptoticProfile prof = profile(Quintuple(3, 0, 2, 0, 3));
  EXPECT_TRUE(prof.R.contains(2));
  EXPECT_TRUE(prof.R.width_below_pow2(-67));
  EXPECT_EQ(prof.h, 2u);
  EXPECT_EQ(prof.M, 6u);
  const long expected[] = {2, 1, -1, -2, -1, 1};
  ASSERT_EQ(prof.cprime.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) {
    mpq_class v;
    ASSERT_TRUE(prof.cprime[k].exact.rational_value(&v));
    EXPECT_EQ(v, expected[k]) << "k = " << k;
    EXPECT_TRUE(prof.cprime[k].exact_real);
  }
  EXPECT_EQ(prof.k1, 3u);
  EXPECT_EQ(prof.k2, 0u);
  EXPECT_TRUE(prof.zero_sum_exact);
  EXPECT_TRUE(prof.zero_sum.re.contains_zero());
  EXPECT_TRUE(prof.one_excluded);
  EXPECT_EQ(dominance_threshold(prof), 1u);
}

TEST(ProfileTest, StructuralProperties) {
  for (auto [q, d] : qm1_pairs(13)) {
    const AsymptoticProfile prof = profile(Quintuple(q, d - 1, d, 1, q));
    EXPECT_TRUE(certainly_less(Interval(1L, prof.bits), prof.R));
    EXPECT_EQ((2 * q) % prof.M, 0u) << q << " " << d;
    EXPECT_TRUE(prof.zero_sum_exact);
    EXPECT_TRUE(prof.zero_sum.re.contains_zero());
    EXPECT_TRUE(prof.zero_sum.im.contains_zero());
    for (const auto& c : prof.cprime) {
      EXPECT_TRUE(c.value.im.contains_zero());
      EXPECT_TRUE(c.exact_real);
    }
    EXPECT_TRUE(prof.c1_abs.is_positive());
    EXPECT_TRUE(prof.c2.is_positive());
  }
}

TEST(ProfileTest, DominantRadiusAgreesWithProfile) {
  for (auto [q, d] : qm1_pairs(11)) {
    const Radius r = dominant_radius(q, d);
    const AsymptoticProfile prof = profile(Quintuple(q, 0, d, 0, q));
    EXPECT_TRUE(overlaps(r.R, prof.R));
    EXPECT_EQ(r.h, prof.h);
  }
}

TEST(ProfileTest, RGreaterThanOneWitness) {
  const RGt1Witness w = find_r_gt1_witness(Quintuple(3, 0, 2, 0, 3));
  EXPECT_EQ(w.eps0, UnityRoot(1, 2));
  EXPECT_EQ(w.eps0.real_sign(), -1);
  EXPECT_GE((w.eps0 * w.omega0).real_sign(), 0);
  EXPECT_TRUE(w.ratio.contains(2));
  for (auto [q, d] : qm1_pairs(30)) {
    const RGt1Witness x = find_r_gt1_witness(Quintuple(q, 0, d, 0, q));
    EXPECT_TRUE(certainly_less(Interval(1L, x.bits), x.ratio));
  }
}

TEST(CertifyTest, BaseThree) {
  const Certificate cert = certify_oscillation(Quintuple(3, 0, 2, 0, 3), 12);
  EXPECT_EQ(cert.k_star, 1u);
  EXPECT_EQ(cert.profile.M, 6u);
  ASSERT_EQ(cert.verified_range.size(), 12u);
  EXPECT_EQ(cert.negative_claims, 2u);
  EXPECT_EQ(cert.positive_claims, 2u);
  for (const auto& v : cert.verified_range) {
    EXPECT_TRUE(v.dp_checked);
    if (v.k % 6 == 3) EXPECT_LT(v.sign, 0);
    if (v.k % 6 == 0) EXPECT_GT(v.sign, 0);
  }
}

TEST(CertifyTest, ThresholdIsSound) {
  // Beyond k_star the dominant terms fix the sign on both residues.
  for (auto [q, d] : qm1_pairs(8)) {
    const Quintuple p(q, 1, d, q - 1, q);
    const AsymptoticProfile prof = profile(p);
    const Certificate cert = certify_oscillation(p, dominance_threshold(prof) + 2 * prof.M);
    EXPECT_GE(cert.negative_claims, 1u) << q << " " << d;
    EXPECT_GE(cert.positive_claims, 1u) << q << " " << d;
  }
}

TEST(CertifyTest, WrongCase) {
  EXPECT_THROW(certify_oscillation(Quintuple(10, 0, 4, 0, 10), 5), WrongCase);
  EXPECT_THROW(certify_oscillation(Quintuple(3, 0, 2, 0, 3), 0), InvalidArgument);
}

}  // namespace
}  // namespace driftlab
