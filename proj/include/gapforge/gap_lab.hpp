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

#include <gmpxx.h>

namespace gapforge {

enum class Construction { Factorial, Primorial };

const char* to_string(Construction c);

// A run of consecutive composites start, start+1, ..., start+length-1.
// witness_divisors[i] is a nontrivial divisor of start + i.
struct CompositeRun {
  mpz_class start;
  std::uint64_t length = 0;
  Construction construction = Construction::Factorial;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> witness_divisors;

  mpz_class element(std::uint64_t i) const { return start + i; }
};

/// m!+2, ..., m!+m with witness k | m!+k. 2 <= m <= 5000.
CompositeRun factorial_run(std::uint64_t m);

/// m#+2, ..., m#+(q-1) where m# is the product of primes <= m and q is the
/// first prime above m. Witness: least prime factor of the offset.
CompositeRun primorial_run(std::uint64_t m);

/// Exact division check of every witness (1 < w < element, w | element).
bool verify_run(const CompositeRun& run);

struct FactorialBoundCheck {
  std::uint64_t m = 0;
  std::uint64_t gap_lower = 0;  // the run forces a gap of at least m
  double log_p = 0.0;           // log(m! + 1)
  double paper_bound = 0.0;     // log p / log log p
  bool satisfied = false;
};

/// m >= 3. log p is taken from the sum of log k plus log1p(1/m!).
FactorialBoundCheck factorial_gap_bound_check(std::uint64_t m);

/// sum_{0<=k<=m} lambda^k e^-lambda / k!
double poisson_tail(double lambda, std::uint64_t m);

struct GapDistributionRow {
  double lambda = 0.0;
  double empirical = 0.0;
  double poisson_model = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
};

/// Fraction of n with (p_{n+m+1} - p_n) / log p_n > lambda, over every n
/// whose window p_n .. p_{n+m+1} lies at or below limit. Rows follow the
/// order of lambda_grid. limit >= 10^4.
std::vector<GapDistributionRow> empirical_gap_distribution(std::uint64_t limit, std::uint64_t m,
                                                           std::span<const double> lambda_grid,
                                                           unsigned threads = 1);

}  // namespace gapforge
