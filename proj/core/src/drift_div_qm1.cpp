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

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "driftlab/error.hpp"

namespace driftlab {

void require_divides_q_minus_1(const Quintuple& p) {
  if (p.case_tag() != CaseTag::kDividesQMinus1) {
    throw WrongCase("quintuple " + p.to_string() + " is not in the d | q-1 case (" +
                    to_string(p.case_tag()) + ")");
  }
  if (p.m() != p.q()) throw WrongCase("quintuple " + p.to_string() + " has m != q");
}

ComplexInterval Term::value(unsigned bits) const {
  if (is_zero) return ComplexInterval(bits);
  return direction().enclose(bits).scale(magnitude);
}

namespace {

Interval term_magnitude(const UnityRoot& eps, const UnityRoot& omega_eps, unsigned bits) {
  return sin_pi(eps.turns(), bits) / sin_pi(omega_eps.turns(), bits);
}

std::vector<Term> build_terms(std::uint32_t q, std::uint32_t d, std::uint32_t a, std::uint32_t j,
                              unsigned bits) {
  std::vector<Term> terms;
  terms.reserve(std::size_t{q} * d);
  for (const auto& omega : roots_of_unity(q)) {
    for (const auto& eps : roots_of_unity(d)) {
      const UnityRoot we = omega * eps;
      if (we.is_identity()) continue;
      Term t;
      t.omega = omega;
      t.eps = eps;
      t.omega_eps = we;
      t.weight = omega.pow(-static_cast<std::int64_t>(j)) * eps.pow(-static_cast<std::int64_t>(a));
      t.is_zero = eps.is_identity();
      if (t.is_zero) {
        t.magnitude = Interval(0L, bits);
      } else {
        t.arg_over_pi = eps.turns() - we.turns();
        t.magnitude = term_magnitude(eps, we, bits);
      }
      terms.push_back(std::move(t));
    }
  }
  return terms;
}

// 2cos(πz) = e^{iπz} + e^{−iπz}
void add_two_cos(CycloSum& sum, const mpz_class& sign, const mpq_class& z) {
  sum.add(sign, UnityRoot::from_turns(z / 2));
  sum.add(sign, UnityRoot::from_turns(-z / 2));
}

Interval min_lower(const Interval& x, const Interval& y) {
  return certainly_less(y, x) || mpfr_cmp(y.lo(), x.lo()) < 0 ? y : x;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

}  // namespace

std::vector<Term> enumerate_terms(const Quintuple& p, unsigned bits) {
  require_divides_q_minus_1(p);
  return build_terms(p.q(), p.d(), p.a(), p.j(), bits);
}

bool magnitudes_equal(const Term& x, const Term& y) {
  if (x.is_zero || y.is_zero) throw InvalidArgument("magnitude comparison needs non-zero terms");
  // sin(πx1)/sin(πy1) = sin(πx2)/sin(πy2) ⇔ sin(πx1) sin(πy2) − sin(πx2) sin(πy1) = 0,
  // and 2 sin A sin B = cos(A − B) − cos(A + B).
  const mpq_class x1 = x.eps.turns();
  const mpq_class y1 = x.omega_eps.turns();
  const mpq_class x2 = y.eps.turns();
  const mpq_class y2 = y.omega_eps.turns();
  CycloSum diff;
  add_two_cos(diff, 1, x1 - y2);
  add_two_cos(diff, -1, x1 + y2);
  add_two_cos(diff, -1, x2 - y1);
  add_two_cos(diff, 1, x2 + y1);
  return diff.is_zero();
}

bool term_values_distinct(const std::vector<Term>& terms) {
  std::map<UnityRoot, std::vector<std::size_t>> by_direction;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i].is_zero) by_direction[terms[i].direction()].push_back(i);
  }
  for (const auto& [direction, group] : by_direction) {
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const Term& s = terms[group[x]];
        const Term& t = terms[group[y]];
        if (overlaps(s.magnitude, t.magnitude) && magnitudes_equal(s, t)) return false;
      }
    }
  }
  return true;
}

bool argument_law_holds(const Term& t) {
  if (t.is_zero) return true;
  // arg/π + x_ω must be an integer.
  const mpq_class s = t.arg_over_pi + t.omega.turns();
  return s.get_den() == 1;
}

std::vector<MagnitudeClass> magnitude_classes(const std::vector<Term>& terms) {
  std::vector<std::size_t> nonzero;
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].is_zero) continue;
    nonzero.push_back(i);
    index[{terms[i].omega.t(), terms[i].omega.n(), terms[i].eps.t(), terms[i].eps.n()}] = i;
  }

  // Conjugate pairs (ω̄, ε̄) have conjugate values and equal moduli.
  DisjointSets sets(terms.size());
  for (std::size_t i : nonzero) {
    const UnityRoot w = terms[i].omega.conj();
    const UnityRoot e = terms[i].eps.conj();
    auto it = index.find({w.t(), w.n(), e.t(), e.n()});
    if (it != index.end()) sets.unite(i, it->second);
  }

  std::map<std::size_t, MagnitudeClass> by_root;
  for (std::size_t i : nonzero) {
    const std::size_t root = sets.find(i);
    auto it = by_root.find(root);
    if (it == by_root.end()) {
      by_root.emplace(root, MagnitudeClass{{i}, terms[i].magnitude});
    } else {
      it->second.members.push_back(i);
      it->second.magnitude = it->second.magnitude.intersect(terms[i].magnitude);
    }
  }
  std::vector<MagnitudeClass> classes;
  for (auto& [root, cls] : by_root) classes.push_back(std::move(cls));

  // Overlapping enclosures are either proven equal or need more precision.
  bool merged = true;
  while (merged) {
    merged = false;
    std::sort(classes.begin(), classes.end(), [](const MagnitudeClass& x, const MagnitudeClass& y) {
      return mpfr_cmp(x.magnitude.lo(), y.magnitude.lo()) < 0;
    });
    for (std::size_t i = 0; i + 1 < classes.size() && !merged; ++i) {
      for (std::size_t k = i + 1; k < classes.size(); ++k) {
        if (certainly_less(classes[i].magnitude, classes[k].magnitude)) break;
        if (!magnitudes_equal(terms[classes[i].members[0]], terms[classes[k].members[0]])) {
          throw PrecisionInsufficient("cannot separate distinct term magnitudes");
        }
        auto& into = classes[i];
        into.members.insert(into.members.end(), classes[k].members.begin(), classes[k].members.end());
        into.magnitude = into.magnitude.intersect(classes[k].magnitude);
        classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(k));
        merged = true;
        break;
      }
    }
  }
  std::reverse(classes.begin(), classes.end());
  for (auto& cls : classes) std::sort(cls.members.begin(), cls.members.end());
  return classes;
}

Deviation E_exact(const Quintuple& p, std::uint64_t k, const Precision& precision) {
  require_divides_q_minus_1(p);
  if (k == 0) throw InvalidArgument("E_exact requires k >= 1");
  const std::uint32_t q = p.q();
  const std::uint32_t d = p.d();
  mpz_class q_pow;
  mpz_ui_pow_ui(q_pow.get_mpz_t(), q, k - 1);
  const ExactRational main_term = make_rational(q_pow, d);

  double residual = 0.0;
  auto [count, bits] = with_escalation(precision, [&](unsigned b) {
    const auto terms = build_terms(q, d, p.a(), p.j(), b);
    ComplexInterval sum(b);
    for (const auto& t : terms) {
      if (t.is_zero) continue;
      const UnityRoot rotation = t.weight * t.direction().pow(static_cast<std::int64_t>(k));
      sum += rotation.enclose(b).scale(t.magnitude.pow(k));
    }
    const Interval scale(mpq_class(1, std::uint64_t{d} * q), b);
    ComplexInterval total = sum.scale(scale);
    total.re += Interval(main_term, b);
    mpz_class rounded;
    if (!certified_integer(total, mpq_class(1, 4), &rounded, &residual)) {
      throw PrecisionInsufficient("deviation sum not within 1/4 of an integer");
    }
    return rounded;
  });
  return Deviation{ExactRational(count) - main_term, count, bits, residual};
}

namespace {

AsymptoticProfile build_profile(const Quintuple& p, unsigned bits) {
  AsymptoticProfile prof{p};
  prof.bits = bits;
  prof.terms = build_terms(p.q(), p.d(), p.a(), p.j(), bits);
  const auto classes = magnitude_classes(prof.terms);
  if (classes.empty()) throw Contradiction("no non-zero terms");
  prof.magnitude_class_count = classes.size();

  const MagnitudeClass& top = classes.front();
  prof.R = top.magnitude;
  prof.maximal_terms = top.members;
  prof.h = top.members.size();
  if (classes.size() > 1) prof.R2 = classes[1].magnitude;
  for (std::size_t c = 1; c < classes.size(); ++c) prof.nonmaximal_nonzero += classes[c].members.size();

  const Interval one(1L, bits);
  if (!certainly_less(one, prof.R)) {
    if (certainly_less(prof.R, one) || prof.R.is_point()) {
      throw Contradiction("largest term modulus is not above 1 for " + p.to_string());
    }
    throw PrecisionInsufficient("cannot certify R > 1");
  }
  prof.one_excluded = std::none_of(prof.maximal_terms.begin(), prof.maximal_terms.end(),
                                   [&](std::size_t i) {
                                     return prof.terms[i].arg_over_pi == 0 &&
                                            prof.terms[i].magnitude.contains(1);
                                   });

  std::uint64_t period = 1;
  for (std::size_t i : prof.maximal_terms) period = std::lcm(period, prof.terms[i].direction().order());
  prof.M = period;

  CycloSum total_exact;
  ComplexInterval total(bits);
  for (std::uint64_t k = 0; k < period; ++k) {
    CPrimeValue c;
    c.k = k;
    for (std::size_t i : prof.maximal_terms) {
      const Term& t = prof.terms[i];
      c.exact.add(1, t.weight * t.direction().pow(static_cast<std::int64_t>(k)));
    }
    c.value = c.exact.enclose(bits);
    if (!c.value.im.contains_zero()) throw Contradiction("c'(k) enclosure excludes the real axis");
    c.exact_real = c.exact.is_real();
    if (c.value.re.contains_zero()) {
      c.exact_zero = c.exact.is_zero();
      if (!c.exact_zero) throw PrecisionInsufficient("cannot decide the sign of c'(k)");
    }
    total_exact.add(c.exact);
    total += c.value;
    prof.cprime.push_back(std::move(c));
  }
  prof.zero_sum = total;
  prof.zero_sum_exact = total_exact.is_zero();

  // Most negative and largest positive c'(k); ties go to the smallest k.
  auto pick = [&](bool want_min) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < prof.cprime.size(); ++k) {
      const Interval& x = prof.cprime[k].value.re;
      const Interval& y = prof.cprime[best].value.re;
      if (want_min ? certainly_less(x, y) : certainly_less(y, x)) {
        best = k;
      } else if (overlaps(x, y)) {
        CycloSum diff = prof.cprime[k].exact;
        diff.add(prof.cprime[best].exact.negate());
        if (!diff.is_zero()) throw PrecisionInsufficient("cannot order c'(k) values");
      }
    }
    return best;
  };
  prof.k1 = pick(true);
  prof.k2 = pick(false);
  const Interval& c1 = prof.cprime[prof.k1].value.re;
  const Interval& c2 = prof.cprime[prof.k2].value.re;
  if (!c1.is_negative() || !c2.is_positive()) {
    throw Contradiction("c'(k) does not take both signs for " + p.to_string());
  }
  prof.c1_abs = -c1;
  prof.c2 = c2;
  return prof;
}

}  // namespace

AsymptoticProfile profile(const Quintuple& p, const Precision& precision) {
  require_divides_q_minus_1(p);
  return with_escalation(precision, [&](unsigned b) { return build_profile(p, b); }).first;
}

Radius dominant_radius(std::uint32_t q, std::uint32_t d, const Precision& precision) {
  const Quintuple p(q, 0, d, 0, q);
  require_divides_q_minus_1(p);
  auto [radius, bits] = with_escalation(precision, [&](unsigned b) {
    const auto terms = build_terms(q, d, 0, 0, b);
    const auto classes = magnitude_classes(terms);
    if (classes.empty()) throw Contradiction("no non-zero terms");
    return Radius{classes.front().magnitude, classes.front().members.size(), b};
  });
  radius.bits = bits;
  return radius;
}

RGt1Witness find_r_gt1_witness(const Quintuple& p, const Precision& precision) {
  require_divides_q_minus_1(p);
  for (const auto& eps : roots_of_unity(p.d())) {
    if (eps.real_sign() >= 0) continue;
    for (const auto& omega : roots_of_unity(p.q())) {
      const UnityRoot we = omega * eps;
      if (we.is_identity() || we.real_sign() < 0) continue;
      auto [ratio, bits] = with_escalation(precision, [&](unsigned b) {
        Interval r = term_magnitude(eps, we, b);
        if (!certainly_less(Interval(1L, b), r)) throw PrecisionInsufficient("ratio not above 1");
        return r;
      });
      return RGt1Witness{eps, omega, ratio, bits};
    }
  }
  throw Contradiction("no (eps0, omega0) pair found for " + p.to_string());
}

std::uint64_t dominance_threshold(const AsymptoticProfile& prof) {
  if (prof.nonmaximal_nonzero == 0 || !prof.R2) return 1;
  const unsigned bits = prof.bits;
  const Interval count(static_cast<long>(prof.nonmaximal_nonzero), bits);
  const Interval c_min = min_lower(prof.c1_abs, prof.c2);
  const Interval& R = prof.R;
  const Interval& R2 = *prof.R2;

  auto holds = [&](std::uint64_t k) {
    return certainly_less(count * R2.pow(k), c_min * R.pow(k));
  };

  // k·log(R/R2) > log(count/c_min) for every k above the bound below.
  const Interval gap = (R / R2).log();
  const Interval need = (count / c_min).log();
  if (!gap.is_positive()) throw PrecisionInsufficient("R and R2 not separated");
  std::uint64_t upper = 1;
  if (!need.is_negative()) {
    mpfr_t ratio;
    mpfr_init2(ratio, bits);
    mpfr_div(ratio, need.hi(), gap.lo(), MPFR_RNDU);
    mpfr_floor(ratio, ratio);
    upper = mpfr_get_ui(ratio, MPFR_RNDU) + 1;
    mpfr_clear(ratio);
  }
  while (!holds(upper)) upper *= 2;
  std::uint64_t lo = 1;
  while (lo < upper) {
    const std::uint64_t mid = lo + (upper - lo) / 2;
    if (holds(mid)) {
      upper = mid;
    } else {
      lo = mid + 1;
    }
  }
  return upper;
}

Certificate certify_oscillation(const Quintuple& p, std::uint64_t k_check,
                                const CertifyOptions& options) {
  require_divides_q_minus_1(p);
  if (k_check == 0) throw InvalidArgument("k_check must be >= 1");
  Certificate cert{p, profile(p, options.precision)};
  cert.k_check = k_check;
  cert.k_star = dominance_threshold(cert.profile);
  const std::uint64_t M = cert.profile.M;

  mpz_class q_pow = 1;
  for (std::uint64_t k = 1; k <= k_check; ++k) {
    q_pow *= p.q();
    const Deviation dev = E_exact(p, k, options.precision);
    VerifiedPoint point;
    point.k = k;
    point.deviation = dev.value;
    point.count = dev.count;
    point.sign = sgn(dev.value);
    if (q_pow <= mpz_class(std::to_string(options.dp_budget))) {
      const mpz_class dp = dp_count(p, q_pow);
      if (dp != dev.count) {
        throw Contradiction("digit DP gives " + dp.get_str() + " but the root-of-unity sum gives " +
                            dev.count.get_str() + " at k = " + std::to_string(k));
      }
      point.dp_checked = true;
    }
    if (k >= cert.k_star) {
      if (k % M == cert.profile.k1) {
        point.claimed = true;
        ++cert.negative_claims;
        if (point.sign >= 0) {
          throw Contradiction("deviation at k = " + std::to_string(k) + " is not negative");
        }
      } else if (k % M == cert.profile.k2) {
        point.claimed = true;
        ++cert.positive_claims;
        if (point.sign <= 0) {
          throw Contradiction("deviation at k = " + std::to_string(k) + " is not positive");
        }
      }
    }
    cert.verified_range.push_back(std::move(point));
  }
  return cert;
}

}  // namespace driftlab
