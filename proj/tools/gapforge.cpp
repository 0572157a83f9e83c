// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gapforge: maximal prime gaps, gap bounds, zeta zeros and friends.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "CLI11.hpp"
#include "gapforge/duality.hpp"
#include "gapforge/error.hpp"
#include "gapforge/factorizer.hpp"
#include "gapforge/gap_bounds.hpp"
#include "gapforge/gap_lab.hpp"
#include "gapforge/gap_scan.hpp"
#include "gapforge/report.hpp"
#include "gapforge/sieve.hpp"
#include "gapforge/zeta.hpp"

namespace gf = gapforge;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string format = "csv";
  std::string out;
  unsigned threads = 1;

  gf::OutputFormat output_format() const { return format == "json" ? gf::OutputFormat::Json : gf::OutputFormat::Csv; }
};

void emit(const Common& common, const gf::Table& table) {
  if (common.out.empty()) {
    gf::write_table(std::cout, table, common.output_format());
    return;
  }
  std::ofstream file(common.out);
  if (!file) throw gf::PreconditionError("cannot write " + common.out);
  gf::write_table(file, table, common.output_format());
}

std::string data_path(const char* name) { return (std::filesystem::path(GAPFORGE_DATA_DIR) / name).string(); }

// Natural log of a decimal integer of any size.
double log_of_decimal(const std::string& digits) {
  mpz_class v;
  if (digits.empty() || v.set_str(digits, 10) != 0 || v < 2)
    throw gf::PreconditionError("'" + digits + "' is not an integer >= 2");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

// ---- scan ----------------------------------------------------------------

struct ScanArgs {
  std::uint64_t limit = 0;
  std::string checkpoint;
  std::optional<std::uint64_t> max_segments;
};

int run_scan(const Common& common, const ScanArgs& args) {
  gf::ScanOptions options;
  options.threads = common.threads;
  options.max_segments = args.max_segments;
  std::optional<gf::ScanCheckpoint> resume;
  if (!args.checkpoint.empty()) {
    resume = gf::load_checkpoint(args.checkpoint);
    options.on_checkpoint = [&](const gf::ScanCheckpoint& c) { gf::save_checkpoint(args.checkpoint, c); };
  }
  const auto result = gf::max_gap_scan(args.limit, resume, options);
  if (!args.checkpoint.empty()) gf::save_checkpoint(args.checkpoint, result.checkpoint);

  gf::Table t{{"index", "gap", "lower_prime", "upper_prime"}, {}};
  for (const auto& r : result.records) t.add({r.index, r.gap, r.lower_prime, r.upper_prime()});
  emit(common, t);
  if (!result.complete)
    std::cerr << "# scan stopped at " << result.checkpoint.position << " of " << args.limit
              << (args.checkpoint.empty() ? "" : "; rerun with the same --checkpoint to resume") << '\n';
  return kOk;
}

// ---- verify-table ----------------------------------------------------------

struct BoundArgs {
  std::string model = "PAPER_RH";
  bool literal_exponent = false;
};

gf::BoundModel resolve_model(const BoundArgs& args) {
  const auto name = gf::parse_bound_name(args.model);
  if (!name) throw gf::PreconditionError("unknown bound model '" + args.model + "'");
  if (args.literal_exponent) {
    if (*name != gf::BoundName::Thm2Ii) throw gf::PreconditionError("--literal-exponent applies to THM2_II only");
    return gf::BoundModel::thm2_literal();
  }
  return gf::BoundModel::make(*name);
}

int run_verify_table(const Common& common, const BoundArgs& bound, const std::string& fixture) {
  const auto rows = gf::load_table_fixture(fixture);
  const auto check = gf::verify_table(rows, resolve_model(bound));

  gf::Table t{{"index", "gap", "lower_prime", "u_paper", "u_computed", "u_rounded", "u_matches", "bound", "ratio",
               "violated", "domain_flagged"},
              {}};
  for (const auto& r : check.rows)
    t.add({r.row.record.index, r.row.record.gap, r.row.record.lower_prime, r.row.u_paper, r.u_computed, r.u_rounded,
           r.u_matches, r.bound.bound, r.bound.ratio, r.bound.violated, r.bound.domain_flagged});
  emit(common, t);
  std::cerr << "# " << check.rows.size() << " rows, " << check.u_mismatches << " U mismatches, " << check.violations
            << " violations of " << bound.model << " for p >= 3: " << (check.passed() ? "PASS" : "FAIL") << '\n';
  return check.passed() ? kOk : kVerifyFailed;
}

// ---- zeta ------------------------------------------------------------------

struct ZetaArgs {
  double T = 0.0;
  std::string report = "zeros";
  double band = 1000.0;
};

int run_zeta(const Common& common, const ZetaArgs& args) {
  const auto zeros = gf::find_zeros(args.T);
  const double main = gf::zero_count_main_term(args.T);
  std::cerr << "# T=" << args.T << " zeros=" << zeros.size() << " main_term=" << gf::format_fixed(main, 3)
            << " S(T)=" << gf::format_fixed(static_cast<double>(zeros.size()) - main, 3) << '\n';

  if (args.report == "zeros") {
    gf::Table t{{"ordinal", "gamma", "tol"}, {}};
    for (const auto& z : zeros) t.add({z.ordinal, z.gamma, z.tol});
    emit(common, t);
  } else if (args.report == "spacing") {
    gf::Table t{{"n", "gamma", "delta", "thm11_bound", "thm10_bound", "average", "thm11_violated", "thm10_violated"},
                {}};
    if (zeros.size() >= 2)
      for (const auto& r : gf::spacing_report(zeros))
        t.add({r.n, r.gamma, r.delta, r.thm11_bound, r.thm10_bound, r.average, r.thm11_violated, r.thm10_violated});
    emit(common, t);
  } else if (args.report == "bands") {
    gf::Table t{{"lo", "hi", "pairs", "mean_delta", "thm11_violations", "thm11_fraction", "thm10_violations",
                 "thm10_fraction"},
                {}};
    if (zeros.size() >= 2) {
      const auto rows = gf::spacing_report(zeros);
      for (const auto& b : gf::spacing_bands(rows, args.band))
        t.add({b.lo, b.hi, b.pairs, b.mean_delta, b.thm11_violations, b.thm11_fraction(), b.thm10_violations,
               b.thm10_fraction()});
    }
    emit(common, t);
  } else {  // count
    const auto c = gf::count_zeros(args.T);
    gf::Table t{{"T", "exact", "main_term", "s_of_t", "von_mangoldt"}, {}};
    t.add({c.T, c.exact, c.main_term, c.s_of_t, gf::von_mangoldt_main_term(c.T)});
    emit(common, t);
  }
  return kOk;
}

// ---- duality ---------------------------------------------------------------

struct DualityArgs {
  std::vector<std::uint64_t> n;
  std::string zeros;
  std::optional<std::uint64_t> k;
};

// Zeros through ordinal n_max, computed at the smallest height that covers
// them (bounded by the 1e4 ceiling of find_zeros).
std::vector<gf::ZetaZero> zeros_covering(std::uint64_t n_max) {
  double lo = 10.5, hi = 1e4;
  if (gf::zero_count_main_term(hi) < static_cast<double>(n_max))
    throw gf::MissingData("gamma_" + std::to_string(n_max) + " lies above 1e4; supply --zeros");
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gf::zero_count_main_term(mid) < static_cast<double>(n_max) + 3.0 ? lo : hi) = mid;
  }
  return gf::find_zeros(std::min(1e4, hi + 5.0));
}

int run_duality(const Common& common, const DualityArgs& args) {
  const std::uint64_t n_max = args.n.empty() ? 0 : *std::max_element(args.n.begin(), args.n.end());
  const std::uint64_t need = n_max + args.k.value_or(0);
  std::vector<gf::ZetaZero> zeros;
  if (!args.zeros.empty()) {
    std::ifstream in(args.zeros);
    if (!in) throw gf::MissingData("cannot open " + args.zeros);
    zeros = gf::read_zero_csv(in);
  } else if (need > 0) {
    zeros = zeros_covering(need);
  }
  const auto primes = gf::first_primes(std::max<std::uint64_t>(need, 1));

  if (args.k) {
    gf::Table t{{"n", "k", "residual"}, {}};
    for (auto n : args.n) t.add({n, *args.k, gf::eq7_residual(n, *args.k, primes, zeros)});
    emit(common, t);
    return kOk;
  }
  gf::Table t{{"n", "p_n", "gamma_n", "ratio", "predicted_ratio", "rel_dev"}, {}};
  for (const auto& r : gf::duality_table(args.n, primes, zeros))
    t.add({r.n, r.p_n, r.gamma_n, r.ratio, r.predicted_ratio, r.rel_dev});
  emit(common, t);
  return kOk;
}

// ---- construct ---------------------------------------------------------------

struct ConstructArgs {
  std::uint64_t m = 0;
  std::string kind = "factorial";
  bool elements = false;
};

int run_construct(const Common& common, const ConstructArgs& args) {
  const auto run = args.kind == "primorial" ? gf::primorial_run(args.m) : gf::factorial_run(args.m);
  const bool ok = gf::verify_run(run);
  if (args.elements) {
    gf::Table t{{"offset", "element", "witness"}, {}};
    for (std::uint64_t i = 0; i < run.length; ++i)
      t.add({i, run.element(i).get_str(), run.witness_divisors[i]});
    emit(common, t);
  } else {
    gf::Table t{{"m", "construction", "start", "length", "verified", "log_p", "paper_bound", "bound_satisfied"}, {}};
    if (run.construction == gf::Construction::Factorial && args.m >= 3) {
      const auto c = gf::factorial_gap_bound_check(args.m);
      t.add({args.m, std::string(gf::to_string(run.construction)), run.start.get_str(), run.length, ok, c.log_p,
             c.paper_bound, c.satisfied});
    } else {
      const double nan = std::nan("");
      t.add({args.m, std::string(gf::to_string(run.construction)), run.start.get_str(), run.length, ok, nan, nan,
             false});
    }
    emit(common, t);
  }
  return ok ? kOk : kVerifyFailed;
}

// ---- factor ------------------------------------------------------------------

int run_factor(const Common& common, const std::vector<std::uint64_t>& values, const std::string& check_fixture) {
  if (check_fixture.empty()) {
    gf::Table t{{"n", "factors", "line"}, {}};
    for (auto n : values) {
      const auto f = gf::factorize(n);
      t.add({n, gf::format_factors(f.factors), gf::format_factorization(f)});
    }
    emit(common, t);
    return kOk;
  }

  // Compare against a printed list. A row that disagrees is accepted as a
  // printing error only when the printed factors do not multiply back to n.
  gf::Table t{{"offset", "n", "printed", "computed", "printed_product", "printed_product_is_n", "matches"}, {}};
  bool ok = true;
  for (const auto& row : gf::load_factorization_fixture(check_fixture)) {
    const auto c = gf::check_printed(row);
    const bool sound = c.computed.product() == mpz_class(static_cast<unsigned long>(row.n));
    t.add({row.offset, row.n, row.printed, gf::format_factors(c.computed.factors), c.printed_product.get_str(),
           c.printed_product_is_n, c.matches});
    if (!sound || (!c.matches && c.printed_product_is_n)) ok = false;
    if (!c.matches)
      std::cerr << "# discrepancy at offset " << row.offset << ": printed " << row.printed << " = "
                << c.printed_product.get_str() << " != " << row.n << "; true factorization "
                << gf::format_factorization(c.computed) << '\n';
  }
  emit(common, t);
  return ok ? kOk : kVerifyFailed;
}

// ---- stats -------------------------------------------------------------------

int run_stats(const Common& common, std::uint64_t limit, std::uint64_t m, std::vector<double> lambdas) {
  if (lambdas.empty())
    for (int i = 0; i <= 16; ++i) lambdas.push_back(0.25 * i);
  gf::Table t{{"lambda", "empirical", "poisson_model"}, {}};
  for (const auto& r : gf::empirical_gap_distribution(limit, m, lambdas, common.threads))
    t.add({r.lambda, r.empirical, r.poisson_model});
  emit(common, t);
  return kOk;
}

// ---- bound / interval --------------------------------------------------------

struct BoundValueArgs {
  BoundArgs model{""};
  std::string value;
  std::optional<double> log_p;
};

int run_bound(const Common& common, BoundValueArgs args) {
  // `bound 9551` means every model at p = 9551.
  if (args.value.empty() && !args.model.model.empty() &&
      args.model.model.find_first_not_of("0123456789") == std::string::npos) {
    args.value = args.model.model;
    args.model.model.clear();
  }
  double log_p = 0.0;
  if (args.log_p && !args.value.empty()) throw gf::PreconditionError("give either a value or --log-p, not both");
  if (args.log_p) {
    log_p = *args.log_p;
  } else if (!args.value.empty()) {
    log_p = log_of_decimal(args.value);
  } else {
    throw gf::PreconditionError("bound needs a prime (positional or --p) or --log-p");
  }
  if (!(log_p > 0.0) || !std::isfinite(log_p)) throw gf::PreconditionError("log p must be positive and finite");

  std::vector<gf::BoundModel> models;
  if (args.model.model.empty()) {
    models = gf::bound_catalog();
  } else {
    models.push_back(resolve_model(args.model));
  }
  gf::Table t{{"model", "kind", "log_p", "value", "value_1dp", "domain_flagged"}, {}};
  for (const auto& m : models) {
    const auto v = gf::evaluate_bound(m, gf::LogP{log_p});
    t.add({std::string(gf::to_string(m.name)), std::string(m.kind == gf::BoundKind::Upper ? "upper" : "lower"), log_p,
           v.value, gf::format_fixed(v.value, 1), v.domain_flagged});
  }
  emit(common, t);
  return kOk;
}

int run_interval(const Common& common, std::uint64_t d) {
  const auto iv = gf::first_occurrence_interval(d);
  const auto sh = gf::shanks_estimate(d);
  gf::Table t{{"d", "lo", "hi", "log_lo", "log_hi", "shanks_refined", "shanks_crude", "log_shanks_refined"}, {}};
  t.add({d, iv.lo, iv.hi, iv.log_lo, iv.log_hi, sh.refined, sh.crude, sh.log_refined});
  emit(common, t);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapforge - maximal prime gaps, gap bounds and zeta zeros"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", common.out, "Write output here instead of stdout");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Maximal gap records with both primes <= limit");
  scan_cmd->add_option("--limit", scan.limit)->required()->check(CLI::Range(std::uint64_t{3}, gf::kSieveCeiling - 2));
  scan_cmd->add_option("--checkpoint", scan.checkpoint, "Resume from / save progress to this file");
  scan_cmd->add_option("--max-segments", scan.max_segments, "Stop after this many segments");

  BoundArgs verify_bound;
  std::string fixture = data_path("table_s4.csv");
  auto* verify_cmd = app.add_subcommand("verify-table", "Recompute U and check a bound against the record table");
  verify_cmd->add_option("--model", verify_bound.model, "Bound model")->capture_default_str();
  verify_cmd->add_option("--fixture", fixture, "Table CSV")->capture_default_str();
  verify_cmd->add_flag("--literal-exponent", verify_bound.literal_exponent, "THM2_II with exponent 1.559458");

  ZetaArgs zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "Zeros of Z(t) up to height T");
  zeta_cmd->add_option("--T", zeta.T)->required();
  zeta_cmd->add_option("--report", zeta.report)->check(CLI::IsMember({"zeros", "spacing", "bands", "count"}));
  zeta_cmd->add_option("--band", zeta.band, "Band width for --report bands")->check(CLI::PositiveNumber);

  DualityArgs duality;
  auto* duality_cmd = app.add_subcommand("duality", "p_n against gamma_n");
  duality_cmd->add_option("--n", duality.n)->required()->delimiter(',')->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  duality_cmd->add_option("--zeros", duality.zeros, "Import zeros (ordinal,gamma,tol) instead of computing");
  duality_cmd->add_option("--k", duality.k, "Emit the zero-gap/prime-gap residual at offset k");

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "Runs of composites after m! or m#");
  construct_cmd->add_option("--m", construct.m)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{5000}));
  construct_cmd->add_option("--kind", construct.kind)->check(CLI::IsMember({"factorial", "primorial"}));
  construct_cmd->add_flag("--elements", construct.elements, "List every element with its witness");

  std::vector<std::uint64_t> factor_values;
  std::string factor_fixture;
  auto* factor_cmd = app.add_subcommand("factor", "Factor 64-bit integers");
  factor_cmd->add_option("values", factor_values)->check(CLI::Range(std::uint64_t{1}, ~std::uint64_t{0}));
  factor_cmd->add_option("--n", factor_values)->delimiter(',');
  auto* check_opt = factor_cmd->add_option("--check", factor_fixture, "Compare against a printed list (offset,n,printed)");
  check_opt->expected(0, 1)->default_str(data_path("interlacing_factorizations.csv"));

  std::uint64_t stats_limit = 0, stats_m = 0;
  std::vector<double> lambdas;
  auto* stats_cmd = app.add_subcommand("stats", "Normalized gap distribution against the Poisson model");
  stats_cmd->add_option("--limit", stats_limit)->required()->check(CLI::Range(std::uint64_t{10'000}, gf::kSieveCeiling - 2));
  stats_cmd->add_option("--m", stats_m)->check(CLI::Range(std::uint64_t{0}, std::uint64_t{1000}));
  stats_cmd->add_option("--lambda", lambdas)->delimiter(',')->check(CLI::NonNegativeNumber);

  BoundValueArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate gap bounds at p or log p");
  bound_cmd->add_option("MODEL", bound.model.model, "Bound model (all when omitted)");
  bound_cmd->add_option("P", bound.value, "The prime, any size");
  bound_cmd->add_option("--model", bound.model.model);
  bound_cmd->add_option("--p", bound.value);
  bound_cmd->add_option("--log-p", bound.log_p, "Natural log of the prime");
  bound_cmd->add_flag("--literal-exponent", bound.model.literal_exponent, "THM2_II with exponent 1.559458");

  std::uint64_t interval_d = 0;
  auto* interval_cmd = app.add_subcommand("interval", "Where a first gap of d is expected");
  interval_cmd->add_option("--d", interval_d)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*scan_cmd) return run_scan(common, scan);
    if (*verify_cmd) return run_verify_table(common, verify_bound, fixture);
    if (*zeta_cmd) return run_zeta(common, zeta);
    if (*duality_cmd) return run_duality(common, duality);
    if (*construct_cmd) return run_construct(common, construct);
    if (*factor_cmd) {
      if (*check_opt && factor_fixture.empty()) factor_fixture = data_path("interlacing_factorizations.csv");
      if (factor_values.empty() && factor_fixture.empty()) throw gf::PreconditionError("nothing to factor");
      return run_factor(common, factor_values, factor_fixture);
    }
    if (*stats_cmd) return run_stats(common, stats_limit, stats_m, lambdas);
    if (*bound_cmd) return run_bound(common, bound);
    if (*interval_cmd) return run_interval(common, interval_d);
  } catch (const gf::PreconditionError& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kUsage;
  } catch (const gf::FormatError& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kUsage;
  } catch (const gf::MissingData& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gapforge: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
