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

#include "gapforge/sieve.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "gapforge/error.hpp"
#include "gapforge/primality.hpp"

namespace gapforge {

SieveConfig SieveConfig::from_env() {
  SieveConfig config;
  if (const char* env = std::getenv("GAPFORGE_SEGMENT_BITS")) {
    char* end = nullptr;
    const long bits = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && bits >= 10 && bits <= 30) {
      config.segment_bits = static_cast<unsigned>(bits);
    }
  }
  return config;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
  while (r + 1 <= 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  if (limit < (1u << 20)) {
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
  }
  const auto small = base_primes(isqrt(limit));
  OddSieveWindow window(small);
  constexpr std::uint64_t kSpan = std::uint64_t{1} << 23;
  for (std::uint64_t lo = 0; lo <= limit; lo += kSpan) {
    const std::uint64_t hi = std::min(lo + kSpan, limit + 1);
    window.sieve(lo, hi);
    window.for_each_prime([&](std::uint64_t p) { primes.push_back(static_cast<std::uint32_t>(p)); });
  }
  return primes;
}

void OddSieveWindow::sieve(std::uint64_t lo, std::uint64_t hi) {
  has_two_ = lo <= 2 && 2 < hi;
  first_odd_ = lo | 1;
  const std::uint64_t n_odd = hi > first_odd_ ? (hi - first_odd_ + 1) / 2 : 0;
  bits_.assign((n_odd + 63) / 64, ~std::uint64_t{0});
  if (n_odd == 0) return;
  if (n_odd % 64) bits_.back() = (std::uint64_t{1} << (n_odd % 64)) - 1;
  if (first_odd_ == 1) bits_[0] &= ~std::uint64_t{1};

  std::uint64_t* words = bits_.data();
  for (const std::uint32_t p32 : base_) {
    const std::uint64_t p = p32;
    if (p == 2) continue;
    if (p * p >= hi) break;
    std::uint64_t start = p * p;
    if (start < first_odd_) {
      start = (first_odd_ + p - 1) / p * p;
      if ((start & 1) == 0) start += p;
    }
    for (std::uint64_t idx = (start - first_odd_) / 2; idx < n_odd; idx += p) {
      words[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
    }
  }
}

std::uint64_t OddSieveWindow::count() const {
  std::uint64_t total = has_two_ ? 1 : 0;
  for (auto w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
  if (lo >= hi) throw PreconditionError("sieve_segment: lo must be below hi");
  if (hi > kSieveCeiling) throw PreconditionError("sieve_segment: hi exceeds 2^64 - 2^33");
  if (hi - lo > config.max_span) {
    throw RangeTooLarge("sieve_segment: range of " + std::to_string(hi - lo) +
                        " exceeds the segment budget of " + std::to_string(config.max_span));
  }
  std::vector<std::uint64_t> primes;
  // Narrow windows high up are cheaper by Miller-Rabin than by building
  // base primes up to sqrt(hi).
  if ((hi - lo) < isqrt(hi - 1) / 64) {
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (is_prime(n)) primes.push_back(n);
    }
    return primes;
  }
  for_each_prime(lo, hi, config, [&](std::uint64_t p) { primes.push_back(p); });
  return primes;
}

std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config) {
  if (x < 2) return 0;
  if (x >= kSieveCeiling) throw PreconditionError("prime_count: x exceeds the sieve ceiling");
  const std::uint64_t hi = x + 1;
  const auto base = base_primes(isqrt(x));
  OddSieveWindow window(base);
  const std::uint64_t span = config.segment_span();
  std::uint64_t total = 0;
  for (std::uint64_t lo = 0; lo < hi;) {
    const std::uint64_t end = (hi - lo > span) ? lo + span : hi;
    window.sieve(lo, end);
    total += window.count();
    lo = end;
  }
  return total;
}

namespace {

// Upper end of the n-th prime bracket; valid for n >= 6.
std::uint64_t nth_prime_upper(std::uint64_t n) {
  if (n < 6) return 14;
  const double ln = std::log(static_cast<double>(n));
  const double upper = static_cast<double>(n) * (ln + std::log(ln)) + 1.0;
  if (upper >= static_cast<double>(kSieveCeiling) - 1.0) {
    throw OverflowError("nth_prime: estimate exceeds the 64-bit scan limit");
  }
  return static_cast<std::uint64_t>(upper);
}

}  // namespace

std::uint64_t nth_prime(std::uint64_t n, const SieveConfig& config) {
  if (n == 0) throw PreconditionError("nth_prime: n must be positive");
  const std::uint64_t upper = nth_prime_upper(n);
  std::uint64_t lower = 0;
  std::uint64_t seen = 0;
  if (n >= 6) {
    // p_n > n log n for n >= 1.
    lower = static_cast<std::uint64_t>(static_cast<double>(n) * std::log(static_cast<double>(n)));
    seen = prime_count(lower, config);
    ++lower;
  }
  std::uint64_t result = 0;
  const auto base = base_primes(isqrt(upper));
  OddSieveWindow window(base);
  const std::uint64_t span = config.segment_span();
  for (std::uint64_t lo = lower; lo <= upper && result == 0;) {
    const std::uint64_t end = std::min(lo + span, upper + 1);
    window.sieve(lo, end);
    const std::uint64_t here = window.count();
    if (seen + here >= n) {
      window.for_each_prime([&](std::uint64_t p) {
        if (++seen == n) result = p;
      });
    } else {
      seen += here;
    }
    lo = end;
  }
  if (result == 0) throw Error("nth_prime: bracket did not contain the n-th prime");
  return result;
}

std::vector<std::uint64_t> first_primes(std::uint64_t count, const SieveConfig& config) {
  std::vector<std::uint64_t> primes;
  if (count == 0) return primes;
  primes.reserve(count);
  const std::uint64_t upper = nth_prime_upper(count);
  for_each_prime(0, upper + 1, config, [&](std::uint64_t p) {
    if (primes.size() < count) primes.push_back(p);
  });
  return primes;
}

}  // namespace gapforge
