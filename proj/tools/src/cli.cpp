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

#include "driftlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "driftlab/counting.hpp"
#include "driftlab/digits.hpp"
#include "driftlab/drift_div_q.hpp"
#include "driftlab/drift_div_qm1.hpp"
#include "driftlab/error.hpp"
#include "driftlab/unity.hpp"

namespace driftlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchema = 1;

// Rendered result of a command: the JSON artifact plus the rows shown in
// plain and csv formats.
struct Output {
  Json doc;
  std::vector<std::pair<std::string, std::string>> rows;
  // Plain format prints values only.
  bool bare = false;
};

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

Json to_json(const Quintuple& p) {
  return Json{{"q", p.q()}, {"a", p.a()}, {"d", p.d()}, {"j", p.j()}, {"m", p.m()}};
}

Json to_json(const Interval& x) {
  auto [mid, rad] = x.to_mid_rad_strings();
  return Json{{"mid", mid}, {"rad", rad}, {"bits", x.bits()}};
}

Json to_json(const ComplexInterval& z) { return Json{{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

Json to_json(const UnityRoot& z) { return Json{{"t", z.t()}, {"n", z.n()}}; }

std::string text(const Interval& x) {
  auto [mid, rad] = x.to_mid_rad_strings();
  return mid + " +/- " + rad;
}

std::string text(const ExactRational& r) { return to_fraction_string(r); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Temporary sibling file renamed into place on commit, removed otherwise.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
    stream_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!stream_) throw InvalidArgument("cannot open " + tmp_ + " for writing");
  }
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile() {
    if (!committed_) {
      stream_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

  std::ostream& stream() { return stream_; }

  void commit() {
    stream_.close();
    if (!stream_) throw std::runtime_error("failed writing " + tmp_);
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream stream_;
  bool committed_ = false;
};

struct QuintupleArgs {
  std::uint32_t q = 0;
  std::uint32_t d = 0;
  std::uint32_t m = 0;
  std::uint32_t a = 0;
  std::uint32_t j = 0;

  Quintuple make() const { return Quintuple(q, a, d, j, m); }
  Quintuple make_with_m_eq_q() const { return Quintuple(q, a, d, j, q); }
};

void add_quintuple_options(CLI::App* cmd, QuintupleArgs& args, bool with_m) {
  cmd->add_option("--q", args.q, "Base q >= 2")->required();
  cmd->add_option("--d", args.d, "Modulus d >= 1")->required();
  if (with_m) cmd->add_option("--m", args.m, "Digit-sum modulus m >= 1")->required();
  cmd->add_option("--a", args.a, "Residue a mod d")->required();
  cmd->add_option("--j", args.j, "Residue j mod m")->required();
}

Output cmd_classify(std::uint32_t q, std::uint32_t d) {
  check_base(q);
  if (d == 0) throw InvalidArgument("d must be >= 1");
  const std::string tag = to_string(classify(q, d));
  Output o;
  o.doc = header("classify");
  o.doc["q"] = q;
  o.doc["d"] = d;
  o.doc["case"] = tag;
  o.rows = {{"case", tag}};
  o.bare = true;
  return o;
}

Output cmd_count(const Quintuple& p, const std::string& n_text, const std::string& algo,
                 bool show_g, const RunConfig& config) {
  const mpz_class n = parse_natural(n_text);
  mpz_class count;
  Json extra;
  if (algo == "brute") {
    count = brute_count(p, n, config.brute_budget);
  } else if (algo == "dp") {
    count = dp_count(p, n);
  } else {
    std::uint64_t k = 0;
    mpz_class power = 1;
    while (power < n) {
      power *= p.q();
      ++k;
    }
    if (power != n || k == 0) {
      throw InvalidArgument("the filter algorithm needs N = q^k with k >= 1");
    }
    const FilterCount fc = count_via_filter(p, k, config.precision);
    count = fc.value;
    extra["k"] = k;
    extra["bits"] = fc.bits;
  }
  Output o;
  o.doc = header("count");
  o.doc["quintuple"] = to_json(p);
  o.doc["N"] = n.get_str();
  o.doc["algorithm"] = algo;
  for (auto& [key, value] : extra.items()) o.doc[key] = value;
  o.doc["count"] = count.get_str();
  o.rows = {{"count", count.get_str()}};
  if (show_g) {
    const ExactRational g =
        ExactRational(count) - make_rational(n, mpz_class(p.d()) * p.m());
    o.doc["g"] = text(g);
    o.rows.emplace_back("g", text(g));
  }
  o.bare = true;
  return o;
}

Output cmd_g(const Quintuple& p, const std::string& n_text) {
  const mpz_class n = parse_natural(n_text);
  const mpz_class count = dp_count(p, n);
  const ExactRational main_term = make_rational(n, mpz_class(p.d()) * p.m());
  const ExactRational g = ExactRational(count) - main_term;
  Output o;
  o.doc = header("g");
  o.doc["quintuple"] = to_json(p);
  o.doc["N"] = n.get_str();
  o.doc["case"] = to_string(p.case_tag());
  o.doc["count"] = count.get_str();
  o.doc["main_term"] = text(main_term);
  o.doc["g"] = text(g);
  o.rows = {{"g", text(g)}, {"count", count.get_str()}, {"main_term", text(main_term)},
            {"case", to_string(p.case_tag())}};
  if (p.case_tag() == CaseTag::kDividesQ && p.m() == p.q()) {
    const ClosedFormBreakdown b = closed_form_g(p, n);
    o.doc["closed_form"] = Json{{"eps0", b.eps0},
                                {"eps1", b.eps1},
                                {"digit_sum_mod_q", b.digit_sum_mod_q},
                                {"alpha", b.alpha},
                                {"beta", b.beta},
                                {"form1", text(b.form1_value)},
                                {"form2", text(b.form2_value)},
                                {"correction", text(b.correction)},
                                {"g", text(b.g)}};
    o.rows.emplace_back("closed_form_g", text(b.g));
  }
  return o;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Output cmd_scan(const Quintuple& p, std::uint64_t n_max, unsigned workers,
                const std::string& csv_path, std::uint64_t spot_checks, const RunConfig& config,
                std::ostream& out) {
  if (n_max == 0) throw InvalidArgument("N_max must be >= 1");
  if (n_max > config.scan_budget) {
    throw BudgetExceeded("N_max = " + std::to_string(n_max) + " exceeds the scan budget " +
                         std::to_string(config.scan_budget));
  }
  const bool csv_stdout = config.format == Format::kCsv;
  std::optional<AtomicFile> csv_file;
  if (!csv_path.empty()) csv_file.emplace(csv_path);

  std::set<std::uint64_t> samples;
  if (spot_checks > 0) {
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, n_max);
    for (std::uint64_t i = 0; i < spot_checks; ++i) samples.insert(pick(rng));
  }
  std::uint64_t spot_passed = 0;

  const std::int64_t dm = static_cast<std::int64_t>(p.d()) * p.m();
  const char* csv_header = "N,g_num,g_den,sign\n";
  if (csv_stdout) out << csv_header;
  if (csv_file) csv_file->stream() << csv_header;

  ScanOptions options;
  options.budget = config.scan_budget;
  options.workers = workers;
  options.precision = config.precision;
  if (csv_stdout || csv_file || !samples.empty()) {
    options.on_point = [&](std::uint64_t n, std::int64_t scaled) {
      if (csv_stdout || csv_file) {
        const std::int64_t g = std::gcd(scaled, dm);
        const std::string row = std::to_string(n) + "," + std::to_string(scaled / g) + "," +
                                std::to_string(dm / g) + "," +
                                std::to_string((scaled > 0) - (scaled < 0)) + "\n";
        if (csv_stdout) out << row;
        if (csv_file) csv_file->stream() << row;
      }
      if (samples.count(n) != 0) {
        const ExactRational expected = g_exact(p, mpz_class(std::to_string(n)));
        if (expected != make_rational(mpz_class(std::to_string(scaled)), mpz_class(dm))) {
          throw Contradiction("scan disagrees with g_exact at N = " + std::to_string(n));
        }
        ++spot_passed;
      }
    };
  }
  const ScanReport r = scan(p, n_max, options);
  if (csv_file) csv_file->commit();

  Output o;
  o.doc = header("scan");
  o.doc["quintuple"] = to_json(p);
  o.doc["case"] = to_string(p.case_tag());
  o.doc["n_max"] = r.n_max;
  o.doc["sign_changes"] = r.sign_changes;
  o.doc["min_g"] = text(r.min_g);
  o.doc["argmin"] = r.argmin;
  o.doc["max_g"] = text(r.max_g);
  o.doc["argmax"] = r.argmax;
  o.doc["positive_count"] = r.positive_count;
  o.doc["negative_count"] = r.negative_count;
  o.doc["zero_count"] = r.zero_count;
  if (r.lambda) {
    o.doc["lambda"] = to_json(r.lambda->value);
    o.doc["lambda_below_one"] = r.lambda->below_one;
  }
  if (r.empirical_envelope) o.doc["empirical_envelope"] = fixed6(*r.empirical_envelope);
  if (spot_checks > 0) {
    o.doc["spot_checks"] = Json{{"seed", config.seed}, {"samples", samples.size()},
                                {"passed", spot_passed}};
  }
  o.rows = {{"n_max", std::to_string(r.n_max)},
            {"sign_changes", std::to_string(r.sign_changes)},
            {"min_g", text(r.min_g) + " at N = " + std::to_string(r.argmin)},
            {"max_g", text(r.max_g) + " at N = " + std::to_string(r.argmax)},
            {"positive/negative/zero", std::to_string(r.positive_count) + "/" +
                                           std::to_string(r.negative_count) + "/" +
                                           std::to_string(r.zero_count)}};
  if (r.lambda) o.rows.emplace_back("lambda", text(r.lambda->value));
  if (r.empirical_envelope) o.rows.emplace_back("empirical_envelope", fixed6(*r.empirical_envelope));
  if (spot_checks > 0) {
    o.rows.emplace_back("spot_checks", std::to_string(spot_passed) + "/" +
                                           std::to_string(samples.size()) + " passed");
  }
  return o;
}

Output cmd_witness(const Quintuple& p, const std::string& sign_text, std::size_t members) {
  if (sign_text != "neg" && sign_text != "pos") throw InvalidArgument("--sign must be neg or pos");
  const Sign sign = sign_text == "pos" ? Sign::kPositive : Sign::kNegative;
  const WitnessFamily w = witness(p, sign, members);
  Json member_list = Json::array();
  std::string member_text;
  for (const auto& n : w.members) {
    member_list.push_back(n.get_str());
    member_text += (member_text.empty() ? "" : " ") + n.get_str();
  }
  Output o;
  o.doc = header("witness");
  o.doc["quintuple"] = to_json(p);
  o.doc["sign"] = to_string(sign);
  o.doc["eps1"] = w.eps1;
  o.doc["eps0"] = w.eps0;
  o.doc["digit_sum_classes"] = w.digit_sum_classes;
  o.doc["constraint_modulus"] = w.constraint_modulus;
  o.doc["constraint"] = w.constraint_text();
  o.doc["g"] = text(w.predicted_g);
  o.doc["members"] = member_list;
  o.doc["recipe"] = Json{{"text", w.recipe},
                         {"used", w.from_recipe},
                         {"g", text(w.recipe_g)},
                         {"g_matches", w.recipe_g_matches},
                         {"constraint", w.recipe_constraint},
                         {"constraint_matches", w.recipe_constraint_matches}};
  o.rows = {{"g", text(w.predicted_g)},
            {"eps1", std::to_string(w.eps1)},
            {"eps0", std::to_string(w.eps0)},
            {"constraint", w.constraint_text()},
            {"members", member_text}};
  return o;
}

Json profile_json(const AsymptoticProfile& prof) {
  Json j;
  j["bits"] = prof.bits;
  j["R"] = to_json(prof.R);
  j["h"] = prof.h;
  j["R2"] = prof.R2 ? to_json(*prof.R2) : Json(nullptr);
  j["magnitude_classes"] = prof.magnitude_class_count;
  j["nonmaximal_nonzero"] = prof.nonmaximal_nonzero;
  j["one_excluded"] = prof.one_excluded;
  Json maximal = Json::array();
  for (std::size_t i : prof.maximal_terms) {
    const Term& t = prof.terms[i];
    maximal.push_back(Json{{"omega", to_json(t.omega)},
                           {"eps", to_json(t.eps)},
                           {"weight", to_json(t.weight)},
                           {"direction", to_json(t.direction())},
                           {"arg_over_pi", text(t.arg_over_pi)},
                           {"magnitude", to_json(t.magnitude)}});
  }
  j["maximal_terms"] = maximal;
  j["M"] = prof.M;
  Json table = Json::array();
  for (const auto& c : prof.cprime) {
    table.push_back(Json{{"k", c.k},
                         {"re", to_json(c.value.re)},
                         {"im", to_json(c.value.im)},
                         {"exact_real", c.exact_real},
                         {"exact_zero", c.exact_zero}});
  }
  j["cprime"] = table;
  j["k1"] = prof.k1;
  j["k2"] = prof.k2;
  j["c1_abs"] = to_json(prof.c1_abs);
  j["c2"] = to_json(prof.c2);
  j["zero_sum"] = to_json(prof.zero_sum);
  j["zero_sum_exact"] = prof.zero_sum_exact;
  return j;
}

std::string cprime_text(const AsymptoticProfile& prof) {
  std::string s;
  for (const auto& c : prof.cprime) {
    std::ostringstream v;
    v.precision(6);
    v << c.value.re.mid_double();
    s += (s.empty() ? "" : " ") + v.str();
  }
  return s;
}

Output cmd_profile(const Quintuple& p, const RunConfig& config) {
  const AsymptoticProfile prof = profile(p, config.precision);
  Output o;
  o.doc = header("profile");
  o.doc["quintuple"] = to_json(p);
  const Json body = profile_json(prof);
  for (const auto& [key, value] : body.items()) o.doc[key] = value;
  o.rows = {{"R", text(prof.R)},
            {"h", std::to_string(prof.h)},
            {"M", std::to_string(prof.M)},
            {"c'", cprime_text(prof)},
            {"k1", std::to_string(prof.k1)},
            {"k2", std::to_string(prof.k2)},
            {"zero_sum_exact", prof.zero_sum_exact ? "true" : "false"}};
  return o;
}

Output cmd_certify(const Quintuple& p, std::uint64_t k_check, std::uint64_t dp_budget,
                   const RunConfig& config) {
  CertifyOptions options;
  options.precision = config.precision;
  options.dp_budget = dp_budget;
  const Certificate cert = certify_oscillation(p, k_check, options);
  const AsymptoticProfile& prof = cert.profile;

  Json points = Json::array();
  std::size_t dp_checked = 0;
  for (const auto& v : cert.verified_range) {
    points.push_back(Json{{"k", v.k},
                          {"count", v.count.get_str()},
                          {"deviation", text(v.deviation)},
                          {"sign", v.sign},
                          {"dp_checked", v.dp_checked},
                          {"claimed", v.claimed}});
    if (v.dp_checked) ++dp_checked;
  }
  Output o;
  o.doc = header("certify");
  o.doc["quintuple"] = to_json(p);
  o.doc["profile"] = profile_json(prof);
  o.doc["k_star"] = cert.k_star;
  o.doc["k_check"] = cert.k_check;
  o.doc["dp_budget"] = dp_budget;
  o.doc["claims"] = Json{
      {"negative", Json{{"residue", prof.k1}, {"modulus", prof.M}, {"verified", cert.negative_claims}}},
      {"positive", Json{{"residue", prof.k2}, {"modulus", prof.M}, {"verified", cert.positive_claims}}}};
  o.doc["verified_range"] = points;
  o.rows = {{"R", text(prof.R)},
            {"M", std::to_string(prof.M)},
            {"k1", std::to_string(prof.k1)},
            {"k2", std::to_string(prof.k2)},
            {"k_star", std::to_string(cert.k_star)},
            {"verified", "k = 1.." + std::to_string(cert.k_check) + " (" +
                             std::to_string(dp_checked) + " cross-checked by digit DP)"},
            {"negative_claims", std::to_string(cert.negative_claims)},
            {"positive_claims", std::to_string(cert.positive_claims)}};
  return o;
}

Output cmd_lambda(std::uint32_t q, std::uint32_t m, const RunConfig& config) {
  const GelfondExponent ge = gelfond_exponent(q, m, config.precision);
  Output o;
  o.doc = header("gelfond-lambda");
  o.doc["q"] = q;
  o.doc["m"] = m;
  o.doc["lambda"] = to_json(ge.value);
  o.doc["below_one"] = ge.below_one;
  o.rows = {{"lambda", text(ge.value)}, {"below_one", ge.below_one ? "true" : "false"}};
  return o;
}

void render(const Output& o, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson:
      out << o.doc.dump(2) << "\n";
      break;
    case Format::kCsv:
      out << "key,value\n";
      for (const auto& [k, v] : o.rows) out << csv_field(k) << "," << csv_field(v) << "\n";
      break;
    case Format::kPlain:
      for (const auto& [k, v] : o.rows) {
        if (o.bare) {
          out << v << "\n";
        } else {
          out << k << ": " << v << "\n";
        }
      }
      break;
  }
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::kInvalidArgument:
      return kInputError;
    case Error::Kind::kBudgetExceeded:
      return kBudget;
    case Error::Kind::kPrecisionExhausted:
      return kPrecision;
    case Error::Kind::kWrongCase:
      return kWrongCase;
    default:
      return kFailure;
  }
}

unsigned resolve_precision(const std::optional<unsigned>& flag) {
  unsigned bits = 128;
  if (const char* env = std::getenv("DRIFTLAB_PRECISION"); env != nullptr && *env != '\0') {
    const mpz_class v = parse_natural(env);
    if (!v.fits_uint_p()) throw InvalidArgument("DRIFTLAB_PRECISION out of range");
    bits = static_cast<unsigned>(v.get_ui());
  }
  if (flag) bits = *flag;
  if (bits < 64 || bits > 4096) throw InvalidArgument("precision must lie in [64, 4096] bits");
  return bits;
}

}  // namespace

void write_atomically(const std::string& path, const std::string& contents) {
  AtomicFile file(path);
  file.stream() << contents;
  file.commit();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact digit-sum residue counting and drift analysis", "driftlab"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "plain";
  std::optional<unsigned> precision_flag;
  std::string out_path;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--precision", precision_flag, "Starting precision in bits [64, 4096]");
  app.add_option("--scan-budget", config.scan_budget, "Largest N_max accepted by scan")
      ->check(CLI::PositiveNumber);
  app.add_option("--brute-budget", config.brute_budget, "Largest N accepted by brute counting")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Seed for sampled checks");
  app.add_option("--out", out_path, "Also write the JSON artifact to this file");

  std::uint32_t cq = 0;
  std::uint32_t cd = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Which drift regime (q, d) falls into");
  classify_cmd->add_option("--q", cq, "Base q >= 2")->required();
  classify_cmd->add_option("--d", cd, "Modulus d >= 1")->required();

  QuintupleArgs count_args;
  std::string count_n;
  std::string algo = "dp";
  bool show_g = false;
  auto* count_cmd = app.add_subcommand("count", "Count n < N in both residue classes");
  add_quintuple_options(count_cmd, count_args, true);
  count_cmd->add_option("--N", count_n, "Bound N (decimal)")->required();
  count_cmd->add_option("--algo", algo, "brute, dp or filter")
      ->check(CLI::IsMember({"brute", "dp", "filter"}));
  count_cmd->add_flag("--show-g", show_g, "Also print g(N)");

  QuintupleArgs g_args;
  std::string g_n;
  auto* g_cmd = app.add_subcommand("g", "Exact error term g(N)");
  add_quintuple_options(g_cmd, g_args, true);
  g_cmd->add_option("--N", g_n, "Bound N (decimal)")->required();

  QuintupleArgs scan_args;
  std::uint64_t n_max = 0;
  unsigned workers = 1;
  std::string csv_path;
  std::uint64_t spot_checks = 0;
  auto* scan_cmd = app.add_subcommand("scan", "g(N) for every 1 <= N <= N_max");
  add_quintuple_options(scan_cmd, scan_args, true);
  scan_cmd->add_option("--n-max", n_max, "Largest N")->required();
  scan_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--csv", csv_path, "Write N,g_num,g_den,sign rows to this file");
  scan_cmd->add_option("--spot-checks", spot_checks, "Random N re-checked by digit DP");

  QuintupleArgs witness_args;
  std::string sign_text;
  std::size_t members = 5;
  auto* witness_cmd = app.add_subcommand("witness", "Family of N with g of one sign (d | q)");
  add_quintuple_options(witness_cmd, witness_args, false);
  witness_cmd->add_option("--sign", sign_text, "neg or pos")->required();
  witness_cmd->add_option("--members", members, "Members to list")->check(CLI::PositiveNumber);

  QuintupleArgs profile_args;
  auto* profile_cmd = app.add_subcommand("profile", "Asymptotic profile of E(k) (d | q-1)");
  add_quintuple_options(profile_cmd, profile_args, false);

  QuintupleArgs certify_args;
  std::uint64_t k_check = 24;
  std::uint64_t dp_budget = 10'000'000;
  auto* certify_cmd = app.add_subcommand("certify", "Oscillation certificate (d | q-1)");
  add_quintuple_options(certify_cmd, certify_args, false);
  certify_cmd->add_option("--k-check", k_check, "Verify every k up to this")
      ->check(CLI::PositiveNumber);
  certify_cmd->add_option("--dp-budget", dp_budget, "Cross-check by digit DP while q^k <= this");

  std::uint32_t lq = 0;
  std::uint32_t lm = 0;
  auto* lambda_cmd = app.add_subcommand("gelfond-lambda", "Gelfond exponent for (q, m)");
  lambda_cmd->add_option("--q", lq, "Base q >= 2")->required();
  lambda_cmd->add_option("--m", lm, "Digit-sum modulus m >= 2")->required();

  std::vector<const char*> argv{"driftlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    config.precision = Precision{resolve_precision(precision_flag), 4096};
    config.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kPlain;

    Output o;
    if (classify_cmd->parsed()) {
      o = cmd_classify(cq, cd);
    } else if (count_cmd->parsed()) {
      o = cmd_count(count_args.make(), count_n, algo, show_g, config);
    } else if (g_cmd->parsed()) {
      o = cmd_g(g_args.make(), g_n);
    } else if (scan_cmd->parsed()) {
      o = cmd_scan(scan_args.make(), n_max, workers, csv_path, spot_checks, config, out);
    } else if (witness_cmd->parsed()) {
      const Quintuple p = witness_args.make_with_m_eq_q();
      require_divides_q(p);
      o = cmd_witness(p, sign_text, members);
    } else if (profile_cmd->parsed()) {
      o = cmd_profile(profile_args.make_with_m_eq_q(), config);
    } else if (certify_cmd->parsed()) {
      o = cmd_certify(certify_args.make_with_m_eq_q(), k_check, dp_budget, config);
    } else {
      o = cmd_lambda(lq, lm, config);
    }

    if (!out_path.empty()) write_atomically(out_path, o.doc.dump(2) + "\n");
    if (!(scan_cmd->parsed() && config.format == Format::kCsv)) render(o, config.format, out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace driftlab::cli
