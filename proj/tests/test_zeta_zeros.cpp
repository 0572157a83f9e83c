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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gapforge/error.hpp"
#include "gapforge/zeta.hpp"
#include "zeta_oracle.hpp"

using namespace gapforge;

TEST_CASE("rs_theta against the quadrature oracle") {
  CHECK(std::abs(rs_theta(100.0) - oracle::theta(100.0)) < 1e-9);
  CHECK(std::abs(rs_theta(10.0) - oracle::theta(10.0)) < 1e-10);
  // Frozen 30-digit reference values.
  CHECK(std::abs(rs_theta(10.0) - -3.06707439628989529170) < 1e-10);
  CHECK(std::abs(rs_theta(100.0) - 87.9721652317872196255) < 1e-10);
  CHECK(std::abs(rs_theta(1000.0) - 2034.54642803803160870) < 1e-9);
  CHECK(rs_theta_reduced_precision(5.0));
  CHECK_FALSE(rs_theta_reduced_precision(10.0));
}

TEST_CASE("smooth zero count tracks the von Mangoldt main term") {
  for (double T = 10.0; T <= 5000.0; T += 7.5) {
    CHECK(std::abs(zero_count_main_term(T) - von_mangoldt_main_term(T)) < 2.0);
  }
  CHECK(zero_count_main_term(100.0) == doctest::Approx(29.0).epsilon(0.05));
}

TEST_CASE("C0 series matches its closed form") {
  for (double p = 0.01; p < 1.0; p += 0.0137) {
    const double c = std::cos(2.0 * std::numbers::pi * p);
    if (std::abs(c) < 0.05) continue;  // removable singularities at 1/4, 3/4
    const double closed = std::cos(2.0 * std::numbers::pi * (p * p - p - 1.0 / 16.0)) / c;
    CHECK(rs_c0(p) == doctest::Approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("rs_z sign changes and signs") {
  CHECK(rs_z(14.0) * rs_z(14.2) < 0.0);
  for (double t = 10.0; t < 14.0; t += 0.01) CHECK(rs_z(t) * rs_z(t + 0.01) > 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(10.0, 250.0);
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    const double t = dist(rng);
    const double z = rs_z(t);
    CHECK(std::isfinite(z));
    CHECK(z * z >= 0.0);
    const double exact = oracle::hardy_z(t);
    if (std::abs(exact) > 0.05) {
      CHECK((z > 0) == (exact > 0));
      ++compared;
    }
    CHECK(std::abs(z - exact) < 0.02);
  }
  CHECK(compared > 150);
}

TEST_CASE("find_zeros small heights") {
  const double gamma1 = oracle::bisect_root(oracle::hardy_z, 14.0, 14.2);
  CHECK(find_zeros(14.0).empty());
  const auto one = find_zeros(15.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].ordinal == 1);
  CHECK(std::abs(one[0].gamma - gamma1) < 1e-3);
  CHECK(std::abs(one[0].gamma - 14.1347) < 1e-3);
  CHECK(one[0].tol <= 1e-9);

  // Sign-change count of the oracle on a fine grid.
  int oracle_count = 0;
  double previous = oracle::hardy_z(10.0);
  for (double t = 10.05; t < 100.0; t += 0.05) {
    const double z = oracle::hardy_z(t);
    if (previous * z < 0.0) ++oracle_count;
    previous = z;
  }
  CHECK(oracle_count == 29);
  const auto hundred = find_zeros(100.0);
  CHECK(hundred.size() == 29);

  CHECK_THROWS_AS(find_zeros(10.0), PreconditionError);
  CHECK_THROWS_AS(find_zeros(10001.0), PreconditionError);
  ZeroSearchOptions loose;
  loose.tol = 1e-6;
  CHECK_THROWS_AS(find_zeros(50.0, loose), PreconditionError);
  ZeroSearchOptions strict;
  strict.s_allowance = -0.5;
  CHECK_THROWS_AS(find_zeros(50.0, strict), MissedZero);
}

TEST_CASE("zero ordinates, ordinals and brackets") {
  const auto zeros = find_zeros(1000.0);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    CHECK(zeros[i].ordinal == i + 1);
    if (i) CHECK(zeros[i].gamma > zeros[i - 1].gamma);
    CHECK(rs_z(zeros[i].gamma - zeros[i].tol) * rs_z(zeros[i].gamma + zeros[i].tol) <= 0.0);
  }
  // Spot checks against the independent evaluation.
  for (std::size_t n : {1, 2, 10, 29}) {
    const auto& z = zeros[n - 1];
    const double exact = oracle::bisect_root(oracle::hardy_z, z.gamma - 0.1, z.gamma + 0.1);
    CHECK(std::abs(z.gamma - exact) < 2e-3);
  }
}

TEST_CASE("count_zeros") {
  const auto c50 = count_zeros(50.0);
  CHECK(c50.exact == 10);
  const auto c100 = count_zeros(100.0);
  CHECK(c100.exact == 29);
  CHECK(std::abs(c100.s_of_t) < 1.5);
  for (const auto& c : {c50, c100}) {
    CHECK(static_cast<double>(c.exact) - c.main_term - c.s_of_t == 0.0);
  }
  for (double T : {50.0, 100.0, 500.0, 1000.0, 5000.0}) {
    const auto c = count_zeros(T);
    CHECK(std::abs(static_cast<double>(c.exact) - std::round(c.main_term)) <= 2.0);
  }
}

TEST_CASE("zero counts equal the exact N(T)") {
  // N(T) from an arbitrary-precision Turing-method count, frozen.
  const std::pair<double, std::size_t> exact[] = {
      {50.0, 10},     {100.0, 29},    {500.0, 269},   {1000.0, 649},  {1500.0, 1069},   {2000.0, 1517},
      {3000.0, 2469}, {4000.0, 3474}, {5000.0, 4520}, {6000.0, 5598}, {7005.1, 6709}, {10000.0, 10142}};
  for (const auto& [T, n] : exact) CHECK(find_zeros(T).size() == n);
}

TEST_CASE("spacing report") {
  const auto zeros = find_zeros(2000.0);
  const auto rows = spacing_report(zeros);
  REQUIRE(rows.size() == zeros.size() - 1);

  const double g1 = oracle::bisect_root(oracle::hardy_z, 14.0, 14.2);
  const double g2 = oracle::bisect_root(oracle::hardy_z, 20.5, 21.5);
  CHECK(std::abs(rows[0].delta - (g2 - g1)) < 2e-3);
  CHECK(rows[0].delta == doctest::Approx(6.89).epsilon(0.01));

  double sum = 0.0;
  int count = 0;
  for (const auto& r : rows) {
    CHECK(r.delta > 0.0);
    CHECK(r.thm11_bound == doctest::Approx(std::numbers::pi / std::log(std::log(r.gamma))));
    CHECK(r.thm10_bound == doctest::Approx(std::pow(r.gamma, 0.1559458)));
    CHECK(r.thm11_violated == (r.delta > r.thm11_bound));
    if (r.gamma >= 1000.0 && r.gamma + r.delta <= 2000.0) {
      sum += r.delta;
      ++count;
    }
  }
  const double expected = 2.0 * std::numbers::pi / std::log(1000.0 / (2.0 * std::numbers::pi));
  CHECK(std::abs(sum / count / expected - 1.0) < 0.25);

  const auto bands = spacing_bands(rows, 500.0);
  std::uint64_t pairs = 0;
  for (const auto& b : bands) {
    pairs += b.pairs;
    CHECK(b.thm11_fraction() >= 0.0);
    CHECK(b.thm11_fraction() <= 1.0);
    MESSAGE("band [" << b.lo << ", " << b.hi << "): pairs " << b.pairs << ", thm11 violation fraction "
                     << b.thm11_fraction());
  }
  CHECK(pairs == rows.size());

  CHECK_THROWS_AS(spacing_report(std::span<const ZetaZero>(zeros.data(), 1)), PreconditionError);
  CHECK_THROWS_AS(spacing_bands(rows, 0.0), PreconditionError);
}

TEST_CASE("gamma_n log n / (2 pi n) stays finite and positive") {
  const auto zeros = find_zeros(1500.0);
  REQUIRE(zeros.size() >= 1000);
  for (std::size_t i = 1; i < zeros.size(); ++i) {
    const double r = zero_ordinal_ratio(zeros[i]);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
  }
  MESSAGE("ratio at n = 1000: " << zero_ordinal_ratio(zeros[999]));
  CHECK_THROWS_AS(zero_ordinal_ratio(zeros[0]), PreconditionError);
}

TEST_CASE("zero table CSV") {
  const auto zeros = find_zeros(60.0);
  std::stringstream io;
  write_zero_csv(io, zeros);
  const auto back = read_zero_csv(io);
  REQUIRE(back.size() == zeros.size());
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    CHECK(back[i].ordinal == zeros[i].ordinal);
    CHECK(back[i].gamma == zeros[i].gamma);
    CHECK(back[i].tol == zeros[i].tol);
  }
  CHECK(find_ordinal(back, 3)->gamma == zeros[2].gamma);
  CHECK(find_ordinal(back, 999) == nullptr);

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_zero_csv(in);
  };
  CHECK(parse("").empty());
  CHECK_THROWS_AS(parse("n,g\n"), FormatError);
  CHECK_THROWS_AS(parse("ordinal,gamma,tol\n1,14.1\n"), FormatError);
  CHECK_THROWS_AS(parse("ordinal,gamma,tol\n2,21.0,0\n1,14.1,0\n"), FormatError);
  CHECK(parse("ordinal,gamma,tol\n5,30.4,0\n9,48.0,1e-9\n").size() == 2);
}
