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

#include "driftlab/unity.hpp"

#include <map>
#include <numeric>

#include "driftlab/error.hpp"

namespace driftlab {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

std::uint64_t reduce_mod(i128 t, std::uint64_t n) {
  i128 r = t % static_cast<i128>(n);
  if (r < 0) r += n;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

UnityRoot::UnityRoot(std::int64_t t, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("root of unity order must be >= 1");
  const std::uint64_t r = reduce_mod(t, n);
  if (r == 0) return;
  const std::uint64_t g = std::gcd(r, n);
  t_ = r / g;
  n_ = n / g;
}

UnityRoot UnityRoot::from_turns(const mpq_class& x) {
  if (!mpz_fits_ulong_p(x.get_den_mpz_t())) throw InvalidArgument("root of unity order too large");
  const std::uint64_t n = x.get_den().get_ui();
  mpz_class t;
  mpz_fdiv_r_ui(t.get_mpz_t(), x.get_num_mpz_t(), n);
  return UnityRoot(static_cast<std::int64_t>(t.get_ui()), n);
}

UnityRoot UnityRoot::inverse() const {
  if (t_ == 0) return {};
  UnityRoot out;
  out.t_ = n_ - t_;
  out.n_ = n_;
  return out;
}

UnityRoot UnityRoot::pow(std::int64_t k) const {
  if (t_ == 0) return {};
  const std::uint64_t r = reduce_mod(static_cast<i128>(t_) * k, n_);
  return UnityRoot(static_cast<std::int64_t>(r), n_);
}

UnityRoot operator*(const UnityRoot& x, const UnityRoot& y) {
  const std::uint64_t l = std::lcm(x.n_, y.n_);
  const u128 t = (static_cast<u128>(x.t_) * (l / x.n_) + static_cast<u128>(y.t_) * (l / y.n_)) % l;
  return UnityRoot(static_cast<std::int64_t>(t), l);
}

int UnityRoot::real_sign() const {
  // Re e^{2πi t/n} > 0 iff t/n ∈ [0, 1/4) ∪ (3/4, 1).
  const u128 four_t = static_cast<u128>(t_) * 4;
  if (four_t < n_) return 1;
  if (four_t == n_) return 0;
  if (four_t < static_cast<u128>(n_) * 3) return -1;
  if (four_t == static_cast<u128>(n_) * 3) return 0;
  return 1;
}

ComplexInterval UnityRoot::enclose(unsigned bits) const {
  const mpq_class two_x(2 * t_, n_);
  return {cos_pi(two_x, bits), sin_pi(two_x, bits)};
}

std::string UnityRoot::to_string() const {
  return "e^(2pi i " + std::to_string(t_) + "/" + std::to_string(n_) + ")";
}

std::vector<UnityRoot> roots_of_unity(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("U(n) requires n >= 1");
  std::vector<UnityRoot> out;
  out.reserve(n);
  for (std::uint64_t t = 0; t < n; ++t) out.emplace_back(static_cast<std::int64_t>(t), n);
  return out;
}

std::vector<mpz_class> residue_filter(const std::vector<mpz_class>& coeffs, std::uint64_t n,
                                      std::uint64_t l, FilterRoute route,
                                      const Precision& precision) {
  if (n == 0) throw InvalidArgument("invalid modulus n = 0 for the residue filter");
  const std::size_t len = coeffs.size();
  std::vector<mpz_class> out(len);

  if (route == FilterRoute::kExact) {
    for (std::size_t k = 0; k < len; ++k) {
      // Coefficient of x^k in Σ_s ω^{−ls} f(ω^s x) is a_k Σ_s ω^{s(k−l)}.
      CycloSum acc;
      for (std::uint64_t s = 0; s < n; ++s) {
        const i128 exponent = static_cast<i128>(s) * (static_cast<i128>(k) - static_cast<i128>(l));
        acc.add(coeffs[k], UnityRoot(static_cast<std::int64_t>(reduce_mod(exponent, n)), n));
      }
      mpq_class value;
      if (!acc.rational_value(&value) || value.get_den() != 1 ||
          !mpz_divisible_ui_p(value.get_num_mpz_t(), n)) {
        throw Contradiction("residue filter produced a non-integer coefficient");
      }
      out[k] = value.get_num() / n;
    }
    return out;
  }

  auto [values, bits] = with_escalation(precision, [&](unsigned b) {
    std::vector<mpz_class> rounded(len);
    const Interval inv_n(mpq_class(1, n), b);
    for (std::size_t k = 0; k < len; ++k) {
      ComplexInterval acc(b);
      const ComplexInterval a_k(Interval(coeffs[k], b), Interval(0L, b));
      for (std::uint64_t s = 0; s < n; ++s) {
        const i128 exponent = static_cast<i128>(s) * (static_cast<i128>(k) - static_cast<i128>(l));
        const UnityRoot root(static_cast<std::int64_t>(reduce_mod(exponent, n)), n);
        acc += a_k * root.enclose(b);
      }
      if (!certified_integer(acc.scale(inv_n), mpq_class(1, 4), &rounded[k])) {
        throw PrecisionInsufficient("residue filter coefficient not isolated");
      }
    }
    return rounded;
  });
  (void)bits;
  return values;
}

ComplexInterval evaluate_P(const Quintuple& p, std::uint64_t k, const UnityRoot& w,
                           const UnityRoot& e, unsigned bits) {
  if (k == 0) throw InvalidArgument("evaluate_P requires k >= 1");
  if (p.m() % w.order() != 0) throw InvalidArgument("w must lie in U(m)");
  if (p.d() % e.order() != 0) throw InvalidArgument("e must lie in U(d)");
  const std::uint64_t q = p.q();
  const std::uint64_t n_e = e.order();

  // Factor i depends on i only through q^i mod ord(e); count multiplicities,
  // skipping whole periods of the eventually periodic residue sequence.
  std::map<std::uint64_t, std::uint64_t> multiplicity;
  std::map<std::uint64_t, std::uint64_t> first_seen;
  std::vector<std::uint64_t> sequence;
  std::uint64_t r = 1 % n_e;
  std::uint64_t i = 0;
  for (; i < k; ++i) {
    auto [it, inserted] = first_seen.emplace(r, i);
    if (!inserted) break;
    sequence.push_back(r);
    ++multiplicity[r];
    r = static_cast<std::uint64_t>((static_cast<u128>(r) * q) % n_e);
  }
  if (i < k) {
    const std::uint64_t start = first_seen[r];
    const std::uint64_t period = i - start;
    const std::uint64_t remaining = k - i;
    const std::uint64_t cycles = remaining / period;
    for (std::uint64_t t = start; t < i; ++t) multiplicity[sequence[t]] += cycles;
    for (std::uint64_t t = 0; t < remaining % period; ++t) ++multiplicity[sequence[start + t]];
  }

  ComplexInterval product(Interval(1L, bits), Interval(0L, bits));
  for (const auto& [residue, count] : multiplicity) {
    CycloSum factor;
    for (std::uint64_t l = 0; l < q; ++l) {
      const UnityRoot term =
          w.pow(static_cast<std::int64_t>(l)) *
          e.pow(static_cast<std::int64_t>((static_cast<u128>(l) * residue) % n_e));
      factor.add(1, term);
    }
    product = product * factor.enclose(bits).pow(count);
  }
  return product;
}

FilterCount count_via_filter(const Quintuple& p, std::uint64_t k, const Precision& precision) {
  if (k == 0) throw InvalidArgument("count_via_filter requires k >= 1");
  const auto omegas = roots_of_unity(p.m());
  const auto epsilons = roots_of_unity(p.d());
  double residual = 0.0;
  auto [value, bits] = with_escalation(precision, [&](unsigned b) {
    ComplexInterval total(b);
    for (const auto& omega : omegas) {
      for (const auto& eps : epsilons) {
        const UnityRoot weight = omega.pow(-static_cast<std::int64_t>(p.j())) *
                                 eps.pow(-static_cast<std::int64_t>(p.a()));
        total += weight.enclose(b) * evaluate_P(p, k, omega, eps, b);
      }
    }
    const Interval scale(mpq_class(1, std::uint64_t{p.d()} * p.m()), b);
    mpz_class rounded;
    if (!certified_integer(total.scale(scale), mpq_class(1, 4), &rounded, &residual)) {
      throw PrecisionInsufficient("filter count not within 1/4 of an integer");
    }
    return rounded;
  });
  return FilterCount{value, bits, residual};
}

}  // namespace driftlab
