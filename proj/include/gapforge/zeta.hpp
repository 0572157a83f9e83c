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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace gapforge {

// A critical-line zero 1/2 + i*gamma. tol is the half-width of the bisection
// bracket around the sign change of the Riemann-Siegel Z, not its distance
// from the true zero (the asymptotic series limits that, ~1e-4 near t = 14).
struct ZetaZero {
  std::uint64_t ordinal = 0;
  double gamma = 0.0;
  double tol = 0.0;
};

struct ZeroCount {
  double T = 0.0;
  std::uint64_t exact = 0;
  double main_term = 0.0;  // theta(T)/pi + 1
  double s_of_t = 0.0;     // exact - main_term
};

/// Riemann-Siegel theta by its asymptotic expansion; absolute error below
/// 1e-10 for t >= 10.
double rs_theta(double t);
inline bool rs_theta_reduced_precision(double t) { return t < 10.0; }

/// Smooth zero-count theta(T)/pi + 1.
double zero_count_main_term(double T);
/// T/2pi log(T/2pi) - T/2pi.
double von_mangoldt_main_term(double T);

/// Hardy Z(t) from the Riemann-Siegel main sum plus the correction terms
/// C0..C3. t >= 10.
double rs_z(double t);

/// Riemann-Siegel remainder using the first `terms` (1..4) corrections.
double rs_remainder(double t, int terms);

/// First Riemann-Siegel correction coefficient C0(p), 0 <= p < 1.
double rs_c0(double p);

struct ZeroSearchOptions {
  double tol = 1e-9;
  // Grid step as a fraction of the local average spacing 2pi/log(t/2pi).
  double grid_fraction = 0.25;
  // Allowed |sign-change count - round(main_term)|.
  double s_allowance = 3.0;
};

/// Every zero with gamma <= T, 10 < T <= 1e4. Throws MissedZero when the
/// sign-change count strays from the smooth count by more than the allowance.
std::vector<ZetaZero> find_zeros(double T, const ZeroSearchOptions& options = {});

ZeroCount count_zeros(double T, const ZeroSearchOptions& options = {});

struct SpacingRow {
  std::uint64_t n = 0;
  double gamma = 0.0;
  double delta = 0.0;        // gamma_{n+1} - gamma_n
  double thm11_bound = 0.0;  // pi / log log gamma_n
  double thm10_bound = 0.0;  // gamma_n^0.1559458
  double average = 0.0;      // 2pi / log(gamma_n / 2pi)
  bool thm11_violated = false;
  bool thm10_violated = false;
};

// The asymptotic spacing bounds are reported, never enforced.
std::vector<SpacingRow> spacing_report(std::span<const ZetaZero> zeros);

struct SpacingBand {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t pairs = 0;
  std::uint64_t thm11_violations = 0;
  std::uint64_t thm10_violations = 0;
  double mean_delta = 0.0;
  double thm11_fraction() const { return pairs ? double(thm11_violations) / double(pairs) : 0.0; }
  double thm10_fraction() const { return pairs ? double(thm10_violations) / double(pairs) : 0.0; }
};

/// Groups rows by gamma_n into bands [k*width, (k+1)*width); empty bands skipped.
std::vector<SpacingBand> spacing_bands(std::span<const SpacingRow> rows, double width);

/// gamma_n log n / (2 pi n); n >= 2.
double zero_ordinal_ratio(const ZetaZero& zero);

void write_zero_csv(std::ostream& out, std::span<const ZetaZero> zeros);
std::vector<ZetaZero> read_zero_csv(std::istream& in);

/// Binary search by ordinal; nullptr when absent.
const ZetaZero* find_ordinal(std::span<const ZetaZero> zeros, std::uint64_t ordinal);

}  // namespace gapforge
