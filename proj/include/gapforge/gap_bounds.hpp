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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/gap_scan.hpp"

namespace gapforge {

enum class BoundName {
  Cramer,             // (log p)^2
  PaperRh,            // 2 pi (log p)^2 / log log p, the U(n) column
  RhClassic,          // p^(1/2) log p
  VonKoch,            // p^(1/2) (log p)^2
  Huxley,             // p^theta, theta = 7/12
  Bhp,                // c p^0.525
  Thm2Ii,             // p^(theta + eps)
  WestzynthiusLower,  // c log p log3 p / log4 p
  PintzLower,         // c log p log2 p log4 p / (log3 p)^2, c = 2 e^gamma
  FactorialLower,     // log p / log log p
};

enum class BoundKind { Upper, Lower };

struct BoundParam {
  std::string name;
  double value = 0.0;
};

struct BoundModel {
  BoundName name = BoundName::Cramer;
  BoundKind kind = BoundKind::Upper;
  std::vector<BoundParam> params;

  double param(std::string_view key) const;
  BoundModel& set(std::string_view key, double value);

  // Catalog entry with its default constants.
  static BoundModel make(BoundName name);
  // THM2_II with the exponent exactly as printed (1.559458) instead of
  // the zero-spacing value 0.1559458.
  static BoundModel thm2_literal();
};

std::string_view to_string(BoundName name);
std::optional<BoundName> parse_bound_name(std::string_view text);
std::vector<BoundModel> bound_catalog();

// Natural log of the prime. Every model is a function of log p alone, so
// inputs beyond 64 bits enter this way.
struct LogP {
  double value = 0.0;
};

struct BoundValue {
  double value = 0.0;
  // Set when an inner iterated log is <= 0 or the result is negative or
  // not finite; the value is still computed literally.
  bool domain_flagged = false;
};

BoundValue evaluate_bound(const BoundModel& model, LogP log_p);
BoundValue evaluate_bound(const BoundModel& model, std::uint64_t p);

struct BoundCheckRow {
  std::uint64_t index = 0;
  std::uint64_t gap = 0;
  std::uint64_t lower_prime = 0;
  double bound = 0.0;
  double ratio = 0.0;  // gap / bound
  bool violated = false;
  bool domain_flagged = false;
};

std::vector<BoundCheckRow> check_records(std::span<const GapRecord> records, const BoundModel& model);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double log_lo = 0.0;
  double log_hi = 0.0;

  // Containment decided in log space so huge d stays meaningful.
  bool contains(double x) const;
};

/// Conjectured bracket 0.122985 sqrt(d) e^sqrt(d) < p < 2.096 d e^sqrt(d)
/// for the first prime followed by a gap of d. d >= 2.
Interval first_occurrence_interval(std::uint64_t d);

struct ShanksEstimate {
  double refined = 0.0;      // sqrt(d) exp(0.5 sqrt(log^2 d + 4d))
  double crude = 0.0;        // exp(sqrt(d))
  double log_refined = 0.0;
  double log_crude = 0.0;
};

ShanksEstimate shanks_estimate(std::uint64_t d);

// One row of the bundled maximal-gap table.
struct TableRow {
  GapRecord record;
  double u_paper = 0.0;
};

/// Reads `index,gap,lower_prime,u_paper` with a header line.
std::vector<TableRow> load_table_fixture(const std::string& path);

struct TableCheckRow {
  TableRow row;
  double u_computed = 0.0;
  double u_rounded = 0.0;  // one decimal, as printed
  bool u_matches = false;
  BoundCheckRow bound;
};

struct TableCheck {
  std::vector<TableCheckRow> rows;
  std::size_t u_mismatches = 0;
  std::size_t violations = 0;  // only rows with p >= 3 count
  bool passed() const { return u_mismatches == 0 && violations == 0; }
};

inline constexpr double kUTolerance = 0.05;

/// Recomputes the U column and checks every row against `model`.
TableCheck verify_table(std::span<const TableRow> rows, const BoundModel& model);

}  // namespace gapforge
