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

#include "gapforge/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapforge/error.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_index(std::uint64_t n) {
  if (n < 2) throw PreconditionError("duality maps need n >= 2");
  return std::log(static_cast<double>(n));
}

std::uint64_t prime_at(std::span<const std::uint64_t> primes, std::uint64_t n) {
  if (n == 0 || n > primes.size()) throw MissingData("p_" + std::to_string(n) + " not available");
  return primes[n - 1];
}

double zero_at(std::span<const ZetaZero> zeros, std::uint64_t n) {
  const auto* z = find_ordinal(zeros, n);
  if (!z) throw MissingData("gamma_" + std::to_string(n) + " not available");
  return z->gamma;
}

}  // namespace

double predicted_prime_from_log(double gamma_n, double log_n) { return gamma_n * log_n * log_n / kTwoPi; }

double predicted_zero_from_log(double p_n, double log_n) { return kTwoPi * p_n / (log_n * log_n); }

double predicted_prime(double gamma_n, std::uint64_t n) {
  if (!(gamma_n > 0.0)) throw PreconditionError("predicted_prime: gamma_n must be positive");
  return predicted_prime_from_log(gamma_n, log_index(n));
}

double predicted_zero(double p_n, std::uint64_t n) { return predicted_zero_from_log(p_n, log_index(n)); }

DualityRow make_duality_row(std::uint64_t n, std::uint64_t p_n, double gamma_n) {
  const double ln = log_index(n);
  DualityRow row;
  row.n = n;
  row.p_n = p_n;
  row.gamma_n = gamma_n;
  row.ratio = static_cast<double>(p_n) / gamma_n;
  row.predicted_ratio = ln * ln / kTwoPi;
  row.rel_dev = std::abs(row.ratio - row.predicted_ratio) / row.predicted_ratio;
  return row;
}

std::vector<DualityRow> duality_table(std::span<const std::uint64_t> n_values, std::span<const std::uint64_t> primes,
                                      std::span<const ZetaZero> zeros) {
  std::vector<DualityRow> rows;
  rows.reserve(n_values.size());
  for (const auto n : n_values) rows.push_back(make_duality_row(n, prime_at(primes, n), zero_at(zeros, n)));
  return rows;
}

std::vector<DualityRow> duality_table(std::span<const std::uint64_t> n_values, std::span<const ZetaZero> zeros) {
  if (n_values.empty()) return {};
  const auto primes = first_primes(*std::max_element(n_values.begin(), n_values.end()));
  return duality_table(n_values, primes, zeros);
}

double eq7_residual(std::uint64_t n, std::uint64_t k, std::span<const std::uint64_t> primes,
                    std::span<const ZetaZero> zeros) {
  const double ln = log_index(n);
  if (k == 0) return 0.0;
  const double zero_gap = zero_at(zeros, n + k) - zero_at(zeros, n);
  const auto prime_gap = static_cast<double>(prime_at(primes, n + k) - prime_at(primes, n));
  return zero_gap - prime_gap * kTwoPi / (ln * ln);
}

ResidualSummary eq7_summary(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t k,
                            std::span<const std::uint64_t> primes, std::span<const ZetaZero> zeros) {
  if (n_lo < 2 || n_hi < n_lo) throw PreconditionError("eq7_summary: need 2 <= n_lo <= n_hi");
  ResidualSummary s{n_lo, n_hi, k};
  s.min = std::numeric_limits<double>::infinity();
  s.max = -s.min;
  double total = 0.0;
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const double r = eq7_residual(n, k, primes, zeros);
    ++s.count;
    total += r;
    s.min = std::min(s.min, r);
    s.max = std::max(s.max, r);
    if (r > 0.0) {
      ++s.positive;
    } else if (r < 0.0) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  s.mean = total / static_cast<double>(s.count);
  return s;
}

double prime_index_ratio(std::uint64_t n, std::uint64_t p_n) {
  if (n < 2) throw PreconditionError("prime_index_ratio: n must be at least 2");
  const double nd = static_cast<double>(n);
  return static_cast<double>(p_n) / (nd * std::log(nd));
}

}  // namespace gapforge
