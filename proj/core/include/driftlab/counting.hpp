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
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "driftlab/interval.hpp"
#include "driftlab/rational.hpp"

namespace driftlab {

/// Which drift regime the pair (q, d) falls into.
enum class CaseTag {
  kDividesQ,         // d | q, d >= 2
  kDividesQMinus1,   // d | q - 1, d >= 2
  kBothTrivial,      // d = 1
  kUncovered,
};

std::string to_string(CaseTag tag);

CaseTag classify(std::uint32_t q, std::uint32_t d);

/// The parameters (q, a, d, j, m): count n < N with n ≡ a (mod d) and
/// s_q(n) ≡ j (mod m).
class Quintuple {
 public:
  Quintuple(std::uint32_t q, std::uint32_t a, std::uint32_t d, std::uint32_t j, std::uint32_t m);

  std::uint32_t q() const { return q_; }
  std::uint32_t a() const { return a_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t j() const { return j_; }
  std::uint32_t m() const { return m_; }
  CaseTag case_tag() const { return classify(q_, d_); }

  Quintuple with_j(std::uint32_t j) const { return Quintuple(q_, a_, d_, j, m_); }
  Quintuple with_a(std::uint32_t a) const { return Quintuple(q_, a, d_, j_, m_); }

  /// "(q,a,d,j,m)"
  std::string to_string() const;

  friend bool operator==(const Quintuple&, const Quintuple&) = default;

 private:
  std::uint32_t q_;
  std::uint32_t a_;
  std::uint32_t d_;
  std::uint32_t j_;
  std::uint32_t m_;
};

inline constexpr std::uint64_t kDefaultBruteBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultScanBudget = 10'000'000;

/// Does n satisfy both congruences?
inline bool qualifies(const Quintuple& p, std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t x = n; x != 0; x /= p.q()) s += x % p.q();
  return n % p.d() == p.a() && s % p.m() == p.j();
}

/// Direct enumeration of 0 <= n < N. Refuses N above `budget`.
mpz_class brute_count(const Quintuple& p, const mpz_class& n_bound,
                      std::uint64_t budget = kDefaultBruteBudget);

/// Digit dynamic programming over the base-q digits of N. Exact for any N.
mpz_class dp_count(const Quintuple& p, const mpz_class& n_bound);

/// Word-sized fast path of dp_count.
std::uint64_t dp_count_u64(const Quintuple& p, std::uint64_t n_bound);

/// g(N) = count(N) − N/(dm).
ExactRational g_exact(const Quintuple& p, const mpz_class& n_bound);

struct GelfondExponent {
  Interval value;
  /// Certified hi < 1.
  bool below_one = false;
  unsigned bits = 0;
};

/// λ = log(q sin(π/2m) / sin(π/2mq)) / (2 log q), enclosed with outward
/// rounding and certified below 1.
GelfondExponent gelfond_exponent(std::uint32_t q, std::uint32_t m, const Precision& precision = {});

struct ScanReport {
  explicit ScanReport(const Quintuple& p) : quintuple(p) {}

  Quintuple quintuple;
  std::uint64_t n_max = 0;
  /// Sign flips between consecutive nonzero values of g (zeros are skipped).
  std::uint64_t sign_changes = 0;
  ExactRational min_g;
  std::uint64_t argmin = 0;
  ExactRational max_g;
  std::uint64_t argmax = 0;
  std::uint64_t positive_count = 0;
  std::uint64_t negative_count = 0;
  std::uint64_t zero_count = 0;
  /// Present when m >= 2.
  std::optional<GelfondExponent> lambda;
  /// max over N >= 2 with g(N) != 0 of log|g(N)| / log N. Diagnostic only.
  std::optional<double> empirical_envelope;
};

struct ScanOptions {
  std::uint64_t budget = kDefaultScanBudget;
  unsigned workers = 1;
  Precision precision;
  /// Called for every N in order with g(N)·d·m (an integer).
  std::function<void(std::uint64_t n, std::int64_t g_times_dm)> on_point;
};

/// Exact g(N) for every 1 <= N <= n_max, updated incrementally.
ScanReport scan(const Quintuple& p, std::uint64_t n_max, const ScanOptions& options = {});

/// Partial result over N in [first, last]; merge() stitches adjacent pieces.
struct ScanSegment {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  std::uint64_t sign_changes = 0;
  int first_sign = 0;  // sign of the first nonzero g in the segment
  int last_sign = 0;   // sign of the last nonzero g in the segment
  std::int64_t min_scaled = 0;
  std::uint64_t argmin = 0;
  std::int64_t max_scaled = 0;
  std::uint64_t argmax = 0;
  std::uint64_t positive_count = 0;
  std::uint64_t negative_count = 0;
  std::uint64_t zero_count = 0;
  double envelope = -std::numeric_limits<double>::infinity();
  bool has_envelope = false;
};

ScanSegment scan_segment(const Quintuple& p, std::uint64_t first, std::uint64_t last,
                         const std::function<void(std::uint64_t, std::int64_t)>& on_point = {});

/// Combines two segments where `right.first == left.last + 1`.
ScanSegment merge(const ScanSegment& left, const ScanSegment& right);

}  // namespace driftlab
