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

#include "driftlab/drift_div_q.hpp"

#include <algorithm>
#include <map>

#include "driftlab/digits.hpp"
#include "driftlab/error.hpp"

namespace driftlab {

namespace {

std::uint32_t mod_q(std::int64_t x, std::uint32_t q) {
  const std::int64_t r = x % static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

ExactRational frac(std::int64_t num, std::int64_t den) {
  return make_rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

}  // namespace

void require_divides_q(const Quintuple& p) {
  if (p.q() % p.d() != 0) {
    throw WrongCase("quintuple " + p.to_string() + " is not in the d | q case");
  }
  if (p.m() != p.q()) {
    throw WrongCase("quintuple " + p.to_string() + " has m != q");
  }
}

ClosedFormBreakdown closed_form_g(const Quintuple& p, const mpz_class& n_bound) {
  require_divides_q(p);
  if (n_bound < 0) throw InvalidArgument("N must be nonnegative");
  const std::uint32_t q = p.q();
  const std::uint32_t d = p.d();
  const std::uint32_t a = p.a();
  const DigitString ds = to_digits(n_bound, q);

  ClosedFormBreakdown out;
  out.eps0 = ds.at(0);
  out.eps1 = ds.at(1);
  mpz_class sum_mod;
  mpz_fdiv_r_ui(sum_mod.get_mpz_t(), ds.digit_sum().get_mpz_t(), q);
  out.digit_sum_mod_q = static_cast<std::uint32_t>(sum_mod.get_ui());
  const std::int64_t j = p.j();
  out.alpha = mod_q(j - out.digit_sum_mod_q + out.eps1 + out.eps0, q);
  out.beta = mod_q(j - out.digit_sum_mod_q + out.eps0, q);

  // Block at position 1: δ < ε1, then a free last digit i0 ≡ a (mod d) with
  // i0 ≡ α − δ (mod q); each δ also carries −(q/d)·(1/q).
  std::int64_t hits1 = 0;
  for (std::uint32_t delta = 0; delta < out.eps1; ++delta) {
    const std::uint32_t i0 = mod_q(static_cast<std::int64_t>(out.alpha) - delta, q);
    if (i0 % d == a) ++hits1;
  }
  out.form1_value = frac(hits1, 1) - frac(out.eps1, d);

  // Block at position 0: δ < ε0 with δ ≡ a (mod d) and δ ≡ β (mod q).
  const std::int64_t hits2 = (out.beta < out.eps0 && out.beta % d == a) ? 1 : 0;
  const mpz_class ceil_low = ceil_div(mpz_class(static_cast<long>(out.eps0) - static_cast<long>(a)), d);
  out.form2_value = ExactRational(hits2) - make_rational(ceil_low, q);

  const mpz_class ceil_all = ceil_div(n_bound - a, d);
  out.correction = make_rational(ceil_all, q) - make_rational(n_bound, mpz_class(d) * q);

  out.g = out.form1_value + out.form2_value + out.correction;
  return out;
}

ExactRational block_deviation(const Quintuple& p, std::uint32_t j_prime, std::uint32_t r) {
  require_divides_q(p);
  if (j_prime >= p.q()) throw InvalidArgument("residue j' must lie in [0, q)");
  mpz_class block;
  mpz_ui_pow_ui(block.get_mpz_t(), p.q(), r);
  const mpz_class count = dp_count(p.with_j(j_prime), block);
  const mpz_class in_class = ceil_div(block - p.a(), p.d());
  return ExactRational(count) - make_rational(in_class, p.q());
}

bool check_block_vanishing(const Quintuple& p, std::uint32_t j_prime, std::uint32_t r) {
  if (r < 2) throw InvalidArgument("block vanishing is stated for r >= 2");
  return block_deviation(p, j_prime, r) == 0;
}

std::string to_string(Sign sign) { return sign == Sign::kPositive ? "positive" : "negative"; }

mpz_class canonical_representative(std::uint32_t q, std::uint32_t eps1, std::uint32_t eps0,
                                   std::uint32_t sigma) {
  check_base(q);
  if (eps1 >= q || eps0 >= q || sigma >= q) throw InvalidArgument("digit or class out of range");
  const std::uint32_t extra = mod_q(static_cast<std::int64_t>(sigma) - eps1 - eps0, q);
  const mpz_class q2 = mpz_class(q) * q;
  mpz_class n = mpz_class(extra) * q2 + mpz_class(eps1) * q + eps0;
  if (n == 0) {
    // Digits (1, q−1) above position 1: digit sum q ≡ 0.
    n = mpz_class(q - 1) * q2 + q2 * q;
  }
  return n;
}

std::string WitnessFamily::constraint_text() const {
  if (constraint_modulus == 1) return "none";
  std::vector<std::uint32_t> classes;
  for (auto s : digit_sum_classes) {
    const std::uint32_t c = s % constraint_modulus;
    if (std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
  }
  std::sort(classes.begin(), classes.end());
  std::string out = "s_q(N) mod " + std::to_string(constraint_modulus) + " in {";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(classes[i]);
  }
  return out + "}";
}

namespace {

struct Recipe {
  std::string text;
  std::uint32_t eps1;
  std::uint32_t eps0;
  ExactRational g;
  std::string constraint;
  std::vector<std::uint32_t> classes;
};

Recipe textbook_recipe(const Quintuple& p, Sign sign) {
  const std::int64_t q = p.q();
  const std::int64_t d = p.d();
  const std::int64_t a = p.a();
  const std::int64_t j = p.j();
  std::vector<std::uint32_t> all(p.q());
  for (std::uint32_t s = 0; s < p.q(); ++s) all[s] = s;

  Recipe r;
  if (sign == Sign::kNegative && a != 0) {
    r = {"eps1 = 0, eps0 = a", 0, static_cast<std::uint32_t>(a), -frac(a, q * d), "none", all};
  } else if (sign == Sign::kNegative) {
    std::vector<std::uint32_t> classes;
    for (std::uint32_t s = 0; s < p.q(); ++s) {
      if (mod_q(static_cast<std::int64_t>(s) - (j + 1), p.d()) != 0) classes.push_back(s);
    }
    r = {"eps1 = 1, eps0 = a, s_q(N) != j+1 (mod d)", 1, 0, -frac(1, d),
         "s_q(N) != j+1 (mod d)", classes};
  } else if (a + 1 < q) {
    r = {"eps1 = 0, eps0 = a+1", 0, static_cast<std::uint32_t>(a + 1),
         ExactRational(1) + frac(1, d) - frac(a + 1, q * d) - frac(1, q), "none", all};
  } else {
    r = {"eps1 = 1, eps0 = 0, s_q(N) == j+2 (mod q)", 1, 0, ExactRational(1) - frac(1, d),
         "s_q(N) == j+2 (mod q)", {mod_q(j + 2, p.q())}};
  }
  return r;
}

// g as a function of s_q(N) mod q for fixed low digits.
std::vector<ExactRational> g_by_class(const Quintuple& p, std::uint32_t eps1, std::uint32_t eps0) {
  std::vector<ExactRational> out;
  out.reserve(p.q());
  for (std::uint32_t sigma = 0; sigma < p.q(); ++sigma) {
    out.push_back(closed_form_g(p, canonical_representative(p.q(), eps1, eps0, sigma)).g);
  }
  return out;
}

bool pick_class(const std::vector<ExactRational>& values, Sign sign, const ExactRational& preferred,
                ExactRational* chosen, std::vector<std::uint32_t>* classes) {
  std::map<ExactRational, std::vector<std::uint32_t>> groups;
  for (std::uint32_t s = 0; s < values.size(); ++s) {
    const int sg = sgn(values[s]);
    if ((sign == Sign::kPositive && sg > 0) || (sign == Sign::kNegative && sg < 0)) {
      groups[values[s]].push_back(s);
    }
  }
  if (groups.empty()) return false;
  auto best = groups.end();
  if (groups.count(preferred) != 0) {
    best = groups.find(preferred);
  } else {
    for (auto it = groups.begin(); it != groups.end(); ++it) {
      if (best == groups.end() || it->second.size() > best->second.size()) best = it;
    }
  }
  *chosen = best->first;
  *classes = best->second;
  return true;
}

std::uint32_t constraint_modulus_of(const std::vector<std::uint32_t>& classes, std::uint32_t q) {
  std::vector<bool> in(q, false);
  for (auto s : classes) in[s] = true;
  for (std::uint32_t mu = 1; mu <= q; ++mu) {
    if (q % mu != 0) continue;
    bool closed = true;
    for (std::uint32_t s = 0; s < q && closed; ++s) {
      if (in[s] != in[(s + mu) % q]) closed = false;
    }
    if (closed) return mu;
  }
  return q;
}

}  // namespace

WitnessFamily witness(const Quintuple& p, Sign sign, std::size_t member_count) {
  require_divides_q(p);
  const std::uint32_t q = p.q();
  const Recipe recipe = textbook_recipe(p, sign);

  WitnessFamily family{p};
  family.sign = sign;
  family.recipe = recipe.text;
  family.recipe_g = recipe.g;
  family.recipe_constraint = recipe.constraint;

  bool found = false;
  if (pick_class(g_by_class(p, recipe.eps1, recipe.eps0), sign, recipe.g, &family.predicted_g,
                 &family.digit_sum_classes)) {
    family.eps1 = recipe.eps1;
    family.eps0 = recipe.eps0;
    family.from_recipe = true;
    found = true;
  }
  for (std::uint32_t e1 = 0; e1 < q && !found; ++e1) {
    for (std::uint32_t e0 = 0; e0 < q && !found; ++e0) {
      if (pick_class(g_by_class(p, e1, e0), sign, recipe.g, &family.predicted_g,
                     &family.digit_sum_classes)) {
        family.eps1 = e1;
        family.eps0 = e0;
        found = true;
      }
    }
  }
  if (!found) {
    throw SearchExhausted("no " + to_string(sign) + " witness family for " + p.to_string());
  }

  family.constraint_modulus = constraint_modulus_of(family.digit_sum_classes, q);
  family.recipe_g_matches = family.from_recipe && family.predicted_g == recipe.g;
  family.recipe_constraint_matches =
      family.from_recipe && family.digit_sum_classes == recipe.classes;

  // Members: h·q² + ε1·q + ε0 for h = 0, 1, 2, ... in the allowed classes.
  const mpz_class q2 = mpz_class(q) * q;
  for (mpz_class h = 0; family.members.size() < member_count; ++h) {
    const mpz_class n = h * q2 + mpz_class(family.eps1) * q + family.eps0;
    if (n == 0) continue;
    mpz_class sigma;
    mpz_fdiv_r_ui(sigma.get_mpz_t(), digit_sum(n, q).get_mpz_t(), q);
    const auto s = static_cast<std::uint32_t>(sigma.get_ui());
    if (!std::binary_search(family.digit_sum_classes.begin(), family.digit_sum_classes.end(), s)) {
      continue;
    }
    const ExactRational g = g_exact(p, n);
    if (g != family.predicted_g || closed_form_g(p, n).g != family.predicted_g) {
      throw Contradiction("witness member N = " + n.get_str() + " has g = " +
                          to_fraction_string(g) + ", expected " +
                          to_fraction_string(family.predicted_g));
    }
    family.members.push_back(n);
  }
  return family;
}

}  // namespace driftlab
