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

#include "gapforge/gap_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "gapforge/error.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

const char* to_string(Construction c) { return c == Construction::Factorial ? "factorial" : "primorial"; }

CompositeRun factorial_run(std::uint64_t m) {
  if (m < 2 || m > 5000) throw PreconditionError("factorial_run: m must lie in [2, 5000]");
  CompositeRun run;
  mpz_fac_ui(run.start.get_mpz_t(), static_cast<unsigned long>(m));
  run.start += 2;
  run.length = m - 1;
  run.construction = Construction::Factorial;
  run.m = m;
  for (std::uint64_t k = 2; k <= m; ++k) run.witness_divisors.push_back(k);
  return run;
}

CompositeRun primorial_run(std::uint64_t m) {
  if (m < 2 || m > 5000) throw PreconditionError("primorial_run: m must lie in [2, 5000]");
  std::uint64_t q = m + 1;
  while (!is_prime(q)) ++q;
  CompositeRun run;
  mpz_primorial_ui(run.start.get_mpz_t(), static_cast<unsigned long>(m));
  run.start += 2;
  run.length = q - 2;
  run.construction = Construction::Primorial;
  run.m = m;
  for (std::uint64_t k = 2; k < q; ++k) {
    std::uint64_t f = 2;
    while (k % f != 0) ++f;
    run.witness_divisors.push_back(f);
  }
  return run;
}

bool verify_run(const CompositeRun& run) {
  if (run.witness_divisors.size() != run.length) return false;
  for (std::uint64_t i = 0; i < run.length; ++i) {
    const auto w = run.witness_divisors[i];
    const mpz_class e = run.element(i);
    if (w < 2 || cmp(e, w) <= 0) return false;
    if (!mpz_divisible_ui_p(e.get_mpz_t(), static_cast<unsigned long>(w))) return false;
  }
  return true;
}

FactorialBoundCheck factorial_gap_bound_check(std::uint64_t m) {
  if (m < 3) throw PreconditionError("factorial_gap_bound_check: m must be at least 3");
  double log_fact = 0.0;
  for (std::uint64_t k = 2; k <= m; ++k) log_fact += std::log(static_cast<double>(k));
  FactorialBoundCheck c;
  c.m = m;
  c.gap_lower = m;
  c.log_p = log_fact + std::log1p(std::exp(-log_fact));
  c.paper_bound = c.log_p / std::log(c.log_p);
  c.satisfied = static_cast<double>(m) >= c.paper_bound;
  return c;
}

double poisson_tail(double lambda, std::uint64_t m) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw PreconditionError("poisson_tail: lambda must be finite and >= 0");
  double term = std::exp(-lambda);
  double sum = term;
  for (std::uint64_t k = 0; k < m; ++k) {
    term *= lambda / static_cast<double>(k + 1);
    sum += term;
    if (term < sum * 1e-18 && static_cast<double>(k + 1) > lambda) break;
  }
  return std::min(sum, 1.0);
}

namespace {

// Tallies windows whose first prime lies in [lo, hi). hist[j] counts windows
// whose normalized gap v has exactly j sorted lambdas strictly below it.
struct Tally {
  std::vector<std::uint64_t> hist;
  std::uint64_t windows = 0;
};

Tally tally_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t limit, std::uint64_t m,
                  const std::vector<double>& sorted_lambdas, const SieveConfig& cfg) {
  Tally t;
  t.hist.assign(sorted_lambdas.size() + 1, 0);
  const std::size_t w = m + 2;
  std::vector<std::uint64_t> ring(w);
  std::uint64_t seen = 0;

  auto push = [&](std::uint64_t p) {
    ring[seen % w] = p;
    ++seen;
    if (seen < w) return;
    const std::uint64_t first = ring[seen % w];  // oldest entry
    const double v = static_cast<double>(p - first) / std::log(static_cast<double>(first));
    const auto j = static_cast<std::size_t>(std::lower_bound(sorted_lambdas.begin(), sorted_lambdas.end(), v) -
                                            sorted_lambdas.begin());
    ++t.hist[j];
    ++t.windows;
  };

  for_each_prime(lo, hi, cfg, push);
  // Complete the windows that start just below hi.
  std::uint64_t extra = 0;
  for (std::uint64_t x = hi; extra < m + 1 && x <= limit; ++x) {
    if (is_prime(x)) {
      push(x);
      ++extra;
    }
  }
  return t;
}

}  // namespace

std::vector<GapDistributionRow> empirical_gap_distribution(std::uint64_t limit, std::uint64_t m,
                                                           std::span<const double> lambda_grid, unsigned threads) {
  if (limit < 10'000) throw PreconditionError("empirical_gap_distribution: limit must be at least 10^4");
  if (limit >= kSieveCeiling) throw PreconditionError("empirical_gap_distribution: limit too large");
  for (double l : lambda_grid)
    if (!std::isfinite(l) || l < 0.0) throw PreconditionError("empirical_gap_distribution: lambdas must be >= 0");
  threads = std::max(1u, threads);

  std::vector<double> sorted(lambda_grid.begin(), lambda_grid.end());
  std::sort(sorted.begin(), sorted.end());

  const SieveConfig cfg = SieveConfig::from_env();
  const std::uint64_t end = limit + 1;
  // Contiguous chunks; the tallies are exact integers so the split cannot
  // change the result.
  std::vector<std::uint64_t> cuts{2};
  const std::uint64_t per = std::max<std::uint64_t>(1024, (end - 2) / threads);
  for (unsigned i = 1; i < threads; ++i) {
    const std::uint64_t c = per * i;
    if (c > cuts.back() && c < end) cuts.push_back(c);
  }
  cuts.push_back(end);

  std::vector<Tally> tallies(cuts.size() - 1);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      pool.emplace_back([&, i] { tallies[i] = tally_range(cuts[i], cuts[i + 1], limit, m, sorted, cfg); });
  }

  // Each chunk counts exactly the windows that start inside it.
  std::vector<std::uint64_t> hist(sorted.size() + 1, 0);
  std::uint64_t total = 0;
  for (const auto& t : tallies) {
    for (std::size_t j = 0; j < hist.size(); ++j) hist[j] += t.hist[j];
    total += t.windows;
  }
  // above[j] = number of windows with v > sorted[j].
  std::vector<std::uint64_t> above(sorted.size(), 0);
  std::uint64_t acc = 0;
  for (std::size_t j = sorted.size(); j-- > 0;) {
    acc += hist[j + 1];
    above[j] = acc;
  }

  std::vector<GapDistributionRow> rows;
  rows.reserve(lambda_grid.size());
  for (double l : lambda_grid) {
    const auto j = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin());
    GapDistributionRow r;
    r.lambda = l;
    r.hits = above[j];
    r.total = total;
    r.empirical = total ? static_cast<double>(r.hits) / static_cast<double>(total) : 0.0;
    r.poisson_model = poisson_tail(l, m);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gapforge
