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

#include <map>
#include <mutex>
#include <numeric>

#include "driftlab/error.hpp"
#include "driftlab/unity.hpp"

namespace driftlab {

namespace {

int mobius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

// Φ_n = Π_{e | n} (x^e − 1)^{μ(n/e)}
std::vector<mpz_class> compute_cyclotomic(std::uint64_t n) {
  std::vector<std::uint64_t> up;
  std::vector<std::uint64_t> down;
  for (std::uint64_t e = 1; e <= n; ++e) {
    if (n % e != 0) continue;
    const int mu = mobius(n / e);
    if (mu == 1) up.push_back(e);
    if (mu == -1) down.push_back(e);
  }
  std::vector<mpz_class> poly{1};
  for (std::uint64_t e : up) {
    std::vector<mpz_class> next(poly.size() + e, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + e] += poly[i];
      next[i] -= poly[i];
    }
    poly.swap(next);
  }
  for (std::uint64_t e : down) {
    // poly = quotient · (x^e − 1)  ⇒  quotient[i] = quotient[i − e] − poly[i].
    std::vector<mpz_class> quotient(poly.size() - e, 0);
    for (std::size_t i = 0; i < quotient.size(); ++i) {
      quotient[i] = -poly[i];
      if (i >= e) quotient[i] += quotient[i - e];
    }
    poly.swap(quotient);
  }
  // The product over μ = +1 carries a sign (−1)^{#up − #down}; Φ_n is monic.
  if (poly.back() < 0) {
    for (auto& c : poly) c = -c;
  }
  return poly;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("cyclotomic polynomial index must be >= 1");
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<mpz_class>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_cyclotomic(n)).first;
  return it->second;
}

void CycloSum::add(const mpz_class& coefficient, const UnityRoot& root) {
  if (coefficient == 0) return;
  terms_.emplace_back(coefficient, root);
}

void CycloSum::add(const CycloSum& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

CycloSum CycloSum::times(const UnityRoot& root) const {
  CycloSum out;
  for (const auto& [c, z] : terms_) out.terms_.emplace_back(c, z * root);
  return out;
}

CycloSum CycloSum::conj() const {
  CycloSum out;
  for (const auto& [c, z] : terms_) out.terms_.emplace_back(c, z.conj());
  return out;
}

CycloSum CycloSum::negate() const {
  CycloSum out;
  for (const auto& [c, z] : terms_) out.terms_.emplace_back(-c, z);
  return out;
}

std::vector<mpz_class> CycloSum::reduced_coordinates(std::uint64_t* conductor) const {
  std::uint64_t l = 1;
  for (const auto& term : terms_) l = std::lcm(l, term.second.order());
  if (conductor != nullptr) *conductor = l;

  std::map<std::uint64_t, mpz_class> sparse;
  for (const auto& [c, z] : terms_) sparse[z.t() * (l / z.n())] += c;

  const auto& phi = cyclotomic_polynomial(l);
  const std::size_t degree = phi.size() - 1;
  std::vector<mpz_class> r(std::max<std::size_t>(l, degree), 0);
  for (const auto& [exponent, c] : sparse) r[exponent] += c;
  if (l == 1) return {r[0]};

  // Long division by the monic Φ_L from the top.
  for (std::size_t i = r.size(); i-- > degree;) {
    if (r[i] == 0) continue;
    const mpz_class c = r[i];
    const std::size_t shift = i - degree;
    for (std::size_t t = 0; t <= degree; ++t) r[shift + t] -= c * phi[t];
  }
  r.resize(degree);
  return r;
}

bool CycloSum::is_zero() const {
  for (const auto& c : reduced_coordinates()) {
    if (c != 0) return false;
  }
  return true;
}

bool CycloSum::rational_value(mpq_class* out) const {
  const auto coords = reduced_coordinates();
  for (std::size_t i = 1; i < coords.size(); ++i) {
    if (coords[i] != 0) return false;
  }
  *out = coords.empty() ? mpq_class(0) : mpq_class(coords[0]);
  return true;
}

bool CycloSum::is_real() const {
  CycloSum diff = *this;
  diff.add(conj().negate());
  return diff.is_zero();
}

ComplexInterval CycloSum::enclose(unsigned bits) const {
  ComplexInterval total(bits);
  for (const auto& [c, z] : terms_) total += z.enclose(bits).scale(Interval(c, bits));
  return total;
}

}  // namespace driftlab
