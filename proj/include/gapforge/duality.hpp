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
#include <span>
#include <vector>

#include "gapforge/zeta.hpp"

namespace gapforge {

// Main-term maps between the n-th prime and the n-th zero ordinate,
// p_n ~ gamma_n log^2 n / 2pi. Both require n >= 2 (log n > 0).
double predicted_prime(double gamma_n, std::uint64_t n);
double predicted_zero(double p_n, std::uint64_t n);

// Same maps keyed by log n directly.
double predicted_prime_from_log(double gamma_n, double log_n);
double predicted_zero_from_log(double p_n, double log_n);

struct DualityRow {
  std::uint64_t n = 0;
  std::uint64_t p_n = 0;
  double gamma_n = 0.0;
  double ratio = 0.0;            // p_n / gamma_n
  double predicted_ratio = 0.0;  // log^2 n / 2pi
  double rel_dev = 0.0;          // |ratio - predicted_ratio| / predicted_ratio
};

DualityRow make_duality_row(std::uint64_t n, std::uint64_t p_n, double gamma_n);

/// One row per n. `primes[i]` is p_{i+1}. Throws MissingData when a prime
/// or zero is unavailable and PreconditionError for n < 2.
std::vector<DualityRow> duality_table(std::span<const std::uint64_t> n_values, std::span<const std::uint64_t> primes,
                                      std::span<const ZetaZero> zeros);

/// Generates the needed primes itself.
std::vector<DualityRow> duality_table(std::span<const std::uint64_t> n_values, std::span<const ZetaZero> zeros);

/// (gamma_{n+k} - gamma_n) - (p_{n+k} - p_n) 2pi / log^2 n.
double eq7_residual(std::uint64_t n, std::uint64_t k, std::span<const std::uint64_t> primes,
                    std::span<const ZetaZero> zeros);

struct ResidualSummary {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::uint64_t k = 0;
  std::uint64_t count = 0;
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  std::uint64_t zero = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

ResidualSummary eq7_summary(std::uint64_t n_lo, std::uint64_t n_hi, std::uint64_t k,
                            std::span<const std::uint64_t> primes, std::span<const ZetaZero> zeros);

/// p_n / (n log n).
double prime_index_ratio(std::uint64_t n, std::uint64_t p_n);

}  // namespace gapforge
