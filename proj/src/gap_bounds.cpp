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

#include "gapforge/gap_bounds.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gapforge/error.hpp"

namespace gapforge {

namespace {

struct CatalogEntry {
  BoundName name;
  std::string_view label;
  BoundKind kind;
  std::vector<BoundParam> params;
};

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {BoundName::Cramer, "CRAMER", BoundKind::Upper, {}},
      {BoundName::PaperRh, "PAPER_RH", BoundKind::Upper, {{"c", 2.0 * std::numbers::pi}}},
      {BoundName::RhClassic, "RH_CLASSIC", BoundKind::Upper, {}},
      {BoundName::VonKoch, "VONKOCH", BoundKind::Upper, {}},
      {BoundName::Huxley, "HUXLEY", BoundKind::Upper, {{"theta", 7.0 / 12.0}}},
      {BoundName::Bhp, "BHP", BoundKind::Upper, {{"c", 1.0}, {"exponent", 0.525}}},
      {BoundName::Thm2Ii, "THM2_II", BoundKind::Upper, {{"theta", 0.1559458}, {"epsilon", 0.0}}},
      {BoundName::WestzynthiusLower, "WESTZYNTHIUS_LOWER", BoundKind::Lower, {{"c", 1.0}}},
      {BoundName::PintzLower, "PINTZ_LOWER", BoundKind::Lower, {{"c", 2.0 * std::exp(std::numbers::egamma)}}},
      {BoundName::FactorialLower, "FACTORIAL_LOWER", BoundKind::Lower, {}},
  };
  return entries;
}

const CatalogEntry& entry(BoundName name) {
  for (const auto& e : catalog_entries()) {
    if (e.name == name) return e;
  }
  throw Error("unknown bound model");
}

// Iterated logs of p given L = log p: log2 = log L, log3 = log log2, ...
struct IteratedLogs {
  double l1, l2, l3, l4;
  explicit IteratedLogs(double log_p)
      : l1(log_p), l2(std::log(l1)), l3(std::log(l2)), l4(std::log(l3)) {}
};

bool positive(double x) { return x > 0.0 && !std::isnan(x); }

}  // namespace

double BoundModel::param(std::string_view key) const {
  for (const auto& p : params) {
    if (p.name == key) return p.value;
  }
  throw PreconditionError("bound model " + std::string(to_string(name)) + " has no parameter " +
                          std::string(key));
}

BoundModel& BoundModel::set(std::string_view key, double value) {
  if (!std::isfinite(value)) throw PreconditionError("bound parameters must be finite");
  for (auto& p : params) {
    if (p.name == key) {
      p.value = value;
      return *this;
    }
  }
  throw PreconditionError("bound model " + std::string(to_string(name)) + " has no parameter " +
                          std::string(key));
}

BoundModel BoundModel::make(BoundName name) {
  const auto& e = entry(name);
  return {e.name, e.kind, e.params};
}

BoundModel BoundModel::thm2_literal() { return make(BoundName::Thm2Ii).set("theta", 1.559458); }

std::string_view to_string(BoundName name) { return entry(name).label; }

std::optional<BoundName> parse_bound_name(std::string_view text) {
  for (const auto& e : catalog_entries()) {
    if (e.label == text) return e.name;
  }
  return std::nullopt;
}

std::vector<BoundModel> bound_catalog() {
  std::vector<BoundModel> out;
  for (const auto& e : catalog_entries()) out.push_back(BoundModel::make(e.name));
  return out;
}

BoundValue evaluate_bound(const BoundModel& model, LogP log_p) {
  const IteratedLogs lg(log_p.value);
  bool inner_ok = positive(lg.l1);
  double value = 0.0;
  switch (model.name) {
    case BoundName::Cramer:
      value = lg.l1 * lg.l1;
      break;
    case BoundName::PaperRh:
      value = model.param("c") * lg.l1 * lg.l1 / lg.l2;
      inner_ok = inner_ok && positive(lg.l2);
      break;
    case BoundName::RhClassic:
      value = std::exp(0.5 * lg.l1) * lg.l1;
      break;
    case BoundName::VonKoch:
      value = std::exp(0.5 * lg.l1) * lg.l1 * lg.l1;
      break;
    case BoundName::Huxley:
      value = std::exp(model.param("theta") * lg.l1);
      break;
    case BoundName::Bhp:
      value = model.param("c") * std::exp(model.param("exponent") * lg.l1);
      break;
    case BoundName::Thm2Ii:
      value = std::exp((model.param("theta") + model.param("epsilon")) * lg.l1);
      break;
    case BoundName::WestzynthiusLower:
      value = model.param("c") * lg.l1 * lg.l3 / lg.l4;
      inner_ok = inner_ok && positive(lg.l2) && positive(lg.l3) && positive(lg.l4);
      break;
    case BoundName::PintzLower:
      value = model.param("c") * lg.l1 * lg.l2 * lg.l4 / (lg.l3 * lg.l3);
      inner_ok = inner_ok && positive(lg.l2) && positive(lg.l3) && positive(lg.l4);
      break;
    case BoundName::FactorialLower:
      value = lg.l1 / lg.l2;
      inner_ok = inner_ok && positive(lg.l2);
      break;
  }
  return {value, !inner_ok || !std::isfinite(value) || value < 0.0};
}

BoundValue evaluate_bound(const BoundModel& model, std::uint64_t p) {
  if (p < 2) throw PreconditionError("evaluate_bound: p must be at least 2");
  return evaluate_bound(model, LogP{std::log(static_cast<double>(p))});
}

std::vector<BoundCheckRow> check_records(std::span<const GapRecord> records, const BoundModel& model) {
  std::vector<BoundCheckRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    const auto b = evaluate_bound(model, r.lower_prime);
    const auto gap = static_cast<double>(r.gap);
    BoundCheckRow row{r.index, r.gap, r.lower_prime, b.value, gap / b.value, false, b.domain_flagged};
    row.violated = model.kind == BoundKind::Upper ? gap > b.value : gap < b.value;
    rows.push_back(row);
  }
  return rows;
}

bool Interval::contains(double x) const {
  if (!(x > 0.0)) return false;
  const double lx = std::log(x);
  return log_lo < lx && lx < log_hi;
}

Interval first_occurrence_interval(std::uint64_t d) {
  if (d < 2) throw PreconditionError("first_occurrence_interval: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double root = std::sqrt(dd);
  Interval out;
  out.log_lo = std::log(0.122985) + 0.5 * std::log(dd) + root;
  out.log_hi = std::log(2.096) + std::log(dd) + root;
  out.lo = std::exp(out.log_lo);
  out.hi = std::exp(out.log_hi);
  return out;
}

ShanksEstimate shanks_estimate(std::uint64_t d) {
  if (d < 2) throw PreconditionError("shanks_estimate: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double ld = std::log(dd);
  ShanksEstimate out;
  out.log_refined = 0.5 * ld + 0.5 * std::sqrt(ld * ld + 4.0 * dd);
  out.log_crude = std::sqrt(dd);
  out.refined = std::exp(out.log_refined);
  out.crude = std::exp(out.log_crude);
  return out;
}

std::vector<TableRow> load_table_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("cannot open fixture " + path);
  std::vector<TableRow> rows;
  std::string line;
  // Leading '#' and blank lines are skipped.
  bool have_header = false;
  while (!have_header && std::getline(in, line)) have_header = !line.empty() && line[0] != '#';
  if (!have_header) return rows;
  if (line.rfind("index,gap,lower_prime,u_paper", 0) != 0) throw FormatError("fixture: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    TableRow row;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> row.record.index >> c1 >> row.record.gap >> c2 >> row.record.lower_prime >> c3 >>
          row.u_paper) ||
        c1 != ',' || c2 != ',' || c3 != ',') {
      throw FormatError("fixture: malformed row '" + line + "'");
    }
    rows.push_back(row);
  }
  return rows;
}

TableCheck verify_table(std::span<const TableRow> rows, const BoundModel& model) {
  const auto u_model = BoundModel::make(BoundName::PaperRh);
  TableCheck out;
  for (const auto& row : rows) {
    TableCheckRow check;
    check.row = row;
    check.u_computed = evaluate_bound(u_model, row.record.lower_prime).value;
    check.u_rounded = std::round(check.u_computed * 10.0) / 10.0;
    check.u_matches = std::abs(check.u_computed - row.u_paper) <= kUTolerance;
    const std::array<GapRecord, 1> one{row.record};
    check.bound = check_records(one, model).front();
    if (!check.u_matches) ++out.u_mismatches;
    if (check.bound.violated && row.record.lower_prime >= 3) ++out.violations;
    out.rows.push_back(check);
  }
  return out;
}

}  // namespace gapforge
