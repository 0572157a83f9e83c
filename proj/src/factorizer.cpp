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

#include "gapforge/factorizer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>

#include "gapforge/error.hpp"
#include "gapforge/primality.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

namespace {

constexpr std::uint32_t kTrialLimit = 100'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const auto primes = base_primes(kTrialLimit);
  return primes;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Brent's cycle finding with products of |x - y| batched before each gcd.
// Returns a nontrivial divisor of the odd composite n.
std::uint64_t brent_rho(std::uint64_t n) {
  std::uint64_t seed = n;
  constexpr std::uint64_t kBatch = 128;
  for (;;) {
    const std::uint64_t c = 1 + splitmix64(seed) % (n - 1);
    std::uint64_t y = splitmix64(seed) % n;
    auto f = [&](std::uint64_t v) {
      const std::uint64_t s = mulmod(v, v, n);
      return s >= n - c ? s - (n - c) : s + c;
    };

    std::uint64_t g = 1, q = 1, x = 0, ys = 0;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const auto steps = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      if (r > (std::uint64_t{1} << 40)) break;
    }
    if (g == n) {
      // The batch overshot; step back one at a time.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
}

void split(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t r = isqrt(n);
  if (r * r == n) {
    split(r, out);
    split(r, out);
    return;
  }
  const std::uint64_t d = brent_rho(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

mpz_class product(const std::vector<PrimePower>& factors) {
  mpz_class p = 1;
  for (const auto& f : factors) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(f.prime), f.exponent);
    p *= t;
  }
  return p;
}

mpz_class Factorization::product() const { return gapforge::product(factors); }

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw PreconditionError("factorize: n must be at least 1");
  Factorization result{n, {}};
  std::uint64_t rest = n;
  for (const auto p : trial_primes()) {
    if (std::uint64_t{p} * p > rest) break;
    if (rest % p) continue;
    PrimePower pp{p, 0};
    while (rest % p == 0) {
      rest /= p;
      ++pp.exponent;
    }
    result.factors.push_back(pp);
  }
  if (rest > 1) {
    std::map<std::uint64_t, unsigned> big;
    split(rest, big);
    for (const auto& [p, e] : big) result.factors.push_back({p, e});
  }
  return result;
}

std::string format_factors(const std::vector<PrimePower>& factors) {
  if (factors.empty()) return "1";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " * ";
    s += std::to_string(f.prime);
    if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

std::string format_factorization(const Factorization& f) {
  return std::to_string(f.n) + " = " + format_factors(f.factors);
}

std::vector<PrimePower> parse_factors(std::string_view text) {
  std::map<std::uint64_t, unsigned> merged;
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  auto number = [&](std::string_view v, auto& out) {
    v = trim(v);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
      throw FormatError("bad factor list: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  for (;;) {
    const auto star = text.find('*', pos);
    const auto term = text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
    const auto caret = term.find('^');
    std::uint64_t base = 0;
    unsigned exp = 1;
    number(term.substr(0, caret), base);
    if (caret != std::string_view::npos) number(term.substr(caret + 1), exp);
    if (base == 0 || exp == 0) throw FormatError("bad factor list: '" + std::string(text) + "'");
    if (base != 1) merged[base] += exp;
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  std::vector<PrimePower> out;
  for (const auto& [p, e] : merged) out.push_back({p, e});
  return out;
}

std::vector<PrintedFactorization> load_factorization_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingData("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  if (line != "offset,n,printed")
    throw FormatError(path.string() + ": expected header offset,n,printed");
  std::vector<PrintedFactorization> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw FormatError(path.string() + ": bad row '" + line + "'");
    PrintedFactorization row;
    const auto a = std::from_chars(line.data(), line.data() + c1, row.offset);
    const auto b = std::from_chars(line.data() + c1 + 1, line.data() + c2, row.n);
    if (a.ec != std::errc{} || b.ec != std::errc{}) throw FormatError(path.string() + ": bad row '" + line + "'");
    row.printed = line.substr(c2 + 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

FactorizationCheck check_printed(const PrintedFactorization& row) {
  FactorizationCheck c;
  c.row = row;
  c.computed = factorize(row.n);
  const auto printed = parse_factors(row.printed);
  c.printed_product = product(printed);
  c.printed_product_is_n = c.printed_product == mpz_class(std::to_string(row.n));
  c.matches = printed == c.computed.factors;
  return c;
}

}  // namespace gapforge
