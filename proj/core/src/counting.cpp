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

#include "driftlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "driftlab/digits.hpp"
#include "driftlab/error.hpp"

namespace driftlab {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kDividesQ:
      return "DIVIDES_Q";
    case CaseTag::kDividesQMinus1:
      return "DIVIDES_Q_MINUS_1";
    case CaseTag::kBothTrivial:
      return "BOTH_TRIVIAL";
    case CaseTag::kUncovered:
      return "UNCOVERED";
  }
  return "UNCOVERED";
}

CaseTag classify(std::uint32_t q, std::uint32_t d) {
  check_base(q);
  if (d == 0) throw InvalidArgument("modulus d must be >= 1");
  if (d == 1) return CaseTag::kBothTrivial;
  if (q % d == 0) return CaseTag::kDividesQ;
  if ((q - 1) % d == 0) return CaseTag::kDividesQMinus1;
  return CaseTag::kUncovered;
}

Quintuple::Quintuple(std::uint32_t q, std::uint32_t a, std::uint32_t d, std::uint32_t j,
                     std::uint32_t m)
    : q_(q), a_(a), d_(d), j_(j), m_(m) {
  check_base(q);
  if (d == 0) throw InvalidArgument("modulus d must be >= 1");
  if (m == 0) throw InvalidArgument("modulus m must be >= 1");
  if (a >= d) throw InvalidArgument("residue a must satisfy 0 <= a < d");
  if (j >= m) throw InvalidArgument("residue j must satisfy 0 <= j < m");
}

std::string Quintuple::to_string() const {
  return "(" + std::to_string(q_) + "," + std::to_string(a_) + "," + std::to_string(d_) + "," +
         std::to_string(j_) + "," + std::to_string(m_) + ")";
}

mpz_class brute_count(const Quintuple& p, const mpz_class& n_bound, std::uint64_t budget) {
  if (n_bound < 0) throw InvalidArgument("N must be nonnegative");
  if (n_bound > mpz_class(std::to_string(budget))) {
    throw BudgetExceeded("brute-force count refused: N = " + n_bound.get_str() +
                         " exceeds the budget of " + std::to_string(budget));
  }
  const std::uint64_t n_max = n_bound.get_ui();
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n < n_max; ++n) {
    if (qualifies(p, n)) ++count;
  }
  return mpz_class(std::to_string(count));
}

namespace {

std::uint64_t mod_sub(std::uint64_t x, std::uint64_t y, std::uint64_t mod) {
  return (x % mod + mod - y % mod) % mod;
}

// Counts n < N from the little-endian digits of N. `Count` must hold q^len.
template <typename Count>
Count dp_count_digits(const Quintuple& p, const std::vector<Digit>& digits) {
  const std::uint64_t q = p.q();
  const std::uint64_t d = p.d();
  const std::uint64_t m = p.m();
  const std::size_t len = digits.size();
  if (len == 0) return Count(0);

  std::vector<std::uint64_t> weight_mod_d(len);
  std::uint64_t w = 1 % d;
  for (std::size_t i = 0; i < len; ++i) {
    weight_mod_d[i] = w;
    w = (w * (q % d)) % d;
  }

  // Digit sum and value mod d of the digits strictly above position i.
  std::vector<std::uint64_t> sum_above(len, 0);
  std::vector<std::uint64_t> value_above(len, 0);
  for (std::size_t i = len - 1; i > 0; --i) {
    sum_above[i - 1] = (sum_above[i] + digits[i]) % m;
    value_above[i - 1] = (value_above[i] + digits[i] * weight_mod_d[i]) % d;
  }

  // free_counts[s * d + v]: strings of i free digits with digit sum ≡ s (mod m)
  // and value ≡ v (mod d).
  std::vector<Count> free_counts(m * d, Count(0));
  std::vector<Count> next(m * d, Count(0));
  free_counts[0] = Count(1);

  Count total(0);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::uint64_t delta = 0; delta < digits[i]; ++delta) {
      const std::uint64_t s_need = mod_sub(p.j(), sum_above[i] + delta, m);
      const std::uint64_t v_need = mod_sub(p.a(), value_above[i] + delta * weight_mod_d[i], d);
      total += free_counts[s_need * d + v_need];
    }
    if (i + 1 == len) break;
    std::fill(next.begin(), next.end(), Count(0));
    for (std::uint64_t s = 0; s < m; ++s) {
      for (std::uint64_t v = 0; v < d; ++v) {
        const Count& c = free_counts[s * d + v];
        if (c == 0) continue;
        for (std::uint64_t delta = 0; delta < q; ++delta) {
          const std::uint64_t s2 = (s + delta) % m;
          const std::uint64_t v2 = (v + delta * weight_mod_d[i]) % d;
          next[s2 * d + v2] += c;
        }
      }
    }
    free_counts.swap(next);
  }
  return total;
}

std::vector<Digit> digits_u64(std::uint64_t n, std::uint64_t q) {
  std::vector<Digit> out;
  while (n != 0) {
    out.push_back(static_cast<Digit>(n % q));
    n /= q;
  }
  return out;
}

}  // namespace

std::uint64_t dp_count_u64(const Quintuple& p, std::uint64_t n_bound) {
  return dp_count_digits<std::uint64_t>(p, digits_u64(n_bound, p.q()));
}

mpz_class dp_count(const Quintuple& p, const mpz_class& n_bound) {
  if (n_bound < 0) throw InvalidArgument("N must be nonnegative");
  if (mpz_fits_ulong_p(n_bound.get_mpz_t()) && sizeof(unsigned long) >= sizeof(std::uint64_t)) {
    return mpz_class(std::to_string(dp_count_u64(p, n_bound.get_ui())));
  }
  return dp_count_digits<mpz_class>(p, to_digits(n_bound, p.q()).digits());
}

ExactRational g_exact(const Quintuple& p, const mpz_class& n_bound) {
  const mpz_class dm = mpz_class(p.d()) * p.m();
  return ExactRational(dp_count(p, n_bound)) - make_rational(n_bound, dm);
}

GelfondExponent gelfond_exponent(std::uint32_t q, std::uint32_t m, const Precision& precision) {
  check_base(q);
  if (m < 2) throw InvalidArgument("invalid modulus m = " + std::to_string(m) + ": need m >= 2");
  auto [value, bits] = with_escalation(precision, [&](unsigned b) {
    const Interval numerator = Interval(static_cast<long>(q), b) * sin_pi(mpq_class(1, 2 * m), b);
    const Interval denominator = sin_pi(mpq_class(1, 2ul * m * q), b);
    const Interval two_log_q = Interval(2L, b) * Interval(static_cast<long>(q), b).log();
    Interval lambda = (numerator / denominator).log() / two_log_q;
    if (!certainly_less(lambda, Interval(1L, b))) {
      throw PrecisionInsufficient("cannot certify lambda < 1");
    }
    return lambda;
  });
  return GelfondExponent{std::move(value), true, bits};
}

ScanSegment scan_segment(const Quintuple& p, std::uint64_t first, std::uint64_t last,
                         const std::function<void(std::uint64_t, std::int64_t)>& on_point) {
  if (first == 0 || first > last) throw InvalidArgument("scan segment must satisfy 1 <= first <= last");
  const std::uint64_t q = p.q();
  const std::uint64_t d = p.d();
  const std::uint64_t m = p.m();
  const std::int64_t dm = static_cast<std::int64_t>(d * m);

  // n runs over first, first+1, ...; count = #{x < n qualifying}.
  std::vector<std::uint64_t> digits;
  for (std::uint64_t x = first; x != 0; x /= q) digits.push_back(x % q);
  std::uint64_t digit_total = 0;
  for (auto e : digits) digit_total += e;
  std::uint64_t n = first;
  std::uint64_t n_mod_d = first % d;
  std::uint64_t count = dp_count_u64(p, first);

  ScanSegment seg;
  seg.first = first;
  seg.last = last;
  bool have_extremes = false;
  for (std::uint64_t big_n = first;; ++big_n) {
    const std::int64_t scaled =
        static_cast<std::int64_t>(count) * dm - static_cast<std::int64_t>(big_n);
    if (on_point) on_point(big_n, scaled);
    const int sign = (scaled > 0) - (scaled < 0);
    if (sign > 0) ++seg.positive_count;
    if (sign < 0) ++seg.negative_count;
    if (sign == 0) ++seg.zero_count;
    if (sign != 0) {
      if (seg.first_sign == 0) seg.first_sign = sign;
      if (seg.last_sign != 0 && seg.last_sign != sign) ++seg.sign_changes;
      seg.last_sign = sign;
      if (big_n >= 2) {
        const double ratio = std::log(std::fabs(static_cast<double>(scaled) / static_cast<double>(dm))) /
                             std::log(static_cast<double>(big_n));
        if (!seg.has_envelope || ratio > seg.envelope) seg.envelope = ratio;
        seg.has_envelope = true;
      }
    }
    if (!have_extremes || scaled < seg.min_scaled) {
      seg.min_scaled = scaled;
      seg.argmin = big_n;
    }
    if (!have_extremes || scaled > seg.max_scaled) {
      seg.max_scaled = scaled;
      seg.argmax = big_n;
    }
    have_extremes = true;
    if (big_n == last) break;

    // Fold in n = big_n itself, then advance to n + 1.
    if (n_mod_d == p.a() && digit_total % m == p.j()) ++count;
    std::size_t i = 0;
    while (true) {
      if (i == digits.size()) digits.push_back(0);
      if (digits[i] + 1 < q) {
        ++digits[i];
        ++digit_total;
        break;
      }
      digit_total -= digits[i];
      digits[i] = 0;
      ++i;
    }
    ++n;
    n_mod_d = (n_mod_d + 1) % d;
  }
  return seg;
}

ScanSegment merge(const ScanSegment& left, const ScanSegment& right) {
  if (right.first != left.last + 1) throw InvalidArgument("scan segments are not adjacent");
  ScanSegment out;
  out.first = left.first;
  out.last = right.last;
  out.sign_changes = left.sign_changes + right.sign_changes;
  if (left.last_sign != 0 && right.first_sign != 0 && left.last_sign != right.first_sign) {
    ++out.sign_changes;
  }
  out.first_sign = left.first_sign != 0 ? left.first_sign : right.first_sign;
  out.last_sign = right.last_sign != 0 ? right.last_sign : left.last_sign;
  if (right.min_scaled < left.min_scaled) {
    out.min_scaled = right.min_scaled;
    out.argmin = right.argmin;
  } else {
    out.min_scaled = left.min_scaled;
    out.argmin = left.argmin;
  }
  if (right.max_scaled > left.max_scaled) {
    out.max_scaled = right.max_scaled;
    out.argmax = right.argmax;
  } else {
    out.max_scaled = left.max_scaled;
    out.argmax = left.argmax;
  }
  out.positive_count = left.positive_count + right.positive_count;
  out.negative_count = left.negative_count + right.negative_count;
  out.zero_count = left.zero_count + right.zero_count;
  out.has_envelope = left.has_envelope || right.has_envelope;
  out.envelope = std::max(left.envelope, right.envelope);
  return out;
}

ScanReport scan(const Quintuple& p, std::uint64_t n_max, const ScanOptions& options) {
  if (n_max == 0) throw InvalidArgument("scan requires N_max >= 1");
  if (n_max > options.budget) {
    throw BudgetExceeded("scan refused: N_max = " + std::to_string(n_max) +
                         " exceeds the budget of " + std::to_string(options.budget));
  }
  const std::uint64_t dm = std::uint64_t{p.d()} * p.m();
  if (dm != 0 && n_max > static_cast<std::uint64_t>(INT64_MAX) / (dm + 1)) {
    throw InvalidArgument("scan range too large for 64-bit scaled arithmetic");
  }

  ScanSegment total;
  const unsigned workers = options.on_point ? 1u : std::max(1u, options.workers);
  if (workers == 1 || n_max < 2 * workers) {
    total = scan_segment(p, 1, n_max, options.on_point);
  } else {
    std::vector<ScanSegment> parts(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = n_max / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t first = 1 + w * chunk;
      const std::uint64_t last = (w + 1 == workers) ? n_max : (w + 1) * chunk;
      threads.emplace_back([&parts, &p, w, first, last] { parts[w] = scan_segment(p, first, last); });
    }
    for (auto& t : threads) t.join();
    total = parts[0];
    for (unsigned w = 1; w < workers; ++w) total = merge(total, parts[w]);
  }

  ScanReport report{p};
  report.n_max = n_max;
  report.sign_changes = total.sign_changes;
  report.min_g = make_rational(mpz_class(std::to_string(total.min_scaled)), mpz_class(std::to_string(dm)));
  report.argmin = total.argmin;
  report.max_g = make_rational(mpz_class(std::to_string(total.max_scaled)), mpz_class(std::to_string(dm)));
  report.argmax = total.argmax;
  report.positive_count = total.positive_count;
  report.negative_count = total.negative_count;
  report.zero_count = total.zero_count;
  if (p.m() >= 2) report.lambda = gelfond_exponent(p.q(), p.m(), options.precision);
  if (total.has_envelope) report.empirical_envelope = total.envelope;
  return report;
}

}  // namespace driftlab
