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

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace gapforge {

// Largest exclusive upper bound accepted by the sieve.
inline constexpr std::uint64_t kSieveCeiling = ~std::uint64_t{0} - (std::uint64_t{1} << 33) + 1;

struct SieveConfig {
  // log2 of the odd-only entries held by one segment; a segment spans
  // 2^(segment_bits+1) integers.
  unsigned segment_bits = 22;
  // Largest hi - lo accepted by sieve_segment in a single call.
  std::uint64_t max_span = std::uint64_t{1} << 32;

  std::uint64_t segment_span() const { return std::uint64_t{2} << segment_bits; }

  // Defaults, with GAPFORGE_SEGMENT_BITS applied when set to 10..30.
  static SieveConfig from_env();
};

std::uint64_t isqrt(std::uint64_t n);

/// Primes p <= limit (limit < 2^32 + 2^16).
std::vector<std::uint32_t> base_primes(std::uint64_t limit);

// Odd-only bitset over one window [lo, hi). Reusable across windows so the
// buffer is allocated once per worker.
class OddSieveWindow {
 public:
  explicit OddSieveWindow(std::span<const std::uint32_t> base) : base_(base) {}

  // Requires every prime <= sqrt(hi - 1) to be in the base set.
  void sieve(std::uint64_t lo, std::uint64_t hi);

  template <class Visit>
  void for_each_prime(Visit&& visit) const {
    if (has_two_) visit(std::uint64_t{2});
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const auto bit = static_cast<std::uint64_t>(std::countr_zero(word));
        visit(first_odd_ + 2 * (64 * w + bit));
        word &= word - 1;
      }
    }
  }

  std::uint64_t count() const;

 private:
  std::span<const std::uint32_t> base_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t first_odd_ = 1;
  bool has_two_ = false;
};

/// Primes in [lo, hi), ascending. Throws RangeTooLarge when hi - lo exceeds
/// config.max_span and PreconditionError when lo >= hi or hi > kSieveCeiling.
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                         const SieveConfig& config = SieveConfig::from_env());

std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config = SieveConfig::from_env());

/// The n-th prime (n >= 1). The sieve range comes from the bracket
/// n log n < p_n < n (log n + log log n).
std::uint64_t nth_prime(std::uint64_t n, const SieveConfig& config = SieveConfig::from_env());

/// p_1 .. p_count.
std::vector<std::uint64_t> first_primes(std::uint64_t count,
                                        const SieveConfig& config = SieveConfig::from_env());

// Walks [lo, hi) one segment at a time, calling visit(p) for every prime.
template <class Visit>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config, Visit&& visit) {
  if (lo >= hi) return;
  const auto base = base_primes(isqrt(hi - 1));
  OddSieveWindow window(base);
  const std::uint64_t span = config.segment_span();
  for (std::uint64_t seg = lo; seg < hi;) {
    const std::uint64_t end = (hi - seg > span) ? seg + span : hi;
    window.sieve(seg, end);
    window.for_each_prime(visit);
    seg = end;
  }
}

}  // namespace gapforge
