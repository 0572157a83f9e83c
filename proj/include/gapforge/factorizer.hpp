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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace gapforge {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  std::uint64_t n = 0;
  std::vector<PrimePower> factors;  // strictly increasing primes; empty for n = 1

  mpz_class product() const;
};

/// Trial division to 10^5, then Brent's rho seeded from n. n >= 1.
Factorization factorize(std::uint64_t n);

/// "p1^e1 * p2 * ..." ("1" for n = 1).
std::string format_factors(const std::vector<PrimePower>& factors);

/// "n = p1^e1 * p2 * ...".
std::string format_factorization(const Factorization& f);

/// Parses "p1^e1 * p2 * ..." back into prime powers. Factors are merged
/// and sorted but not checked for primality. Throws FormatError.
std::vector<PrimePower> parse_factors(std::string_view text);

mpz_class product(const std::vector<PrimePower>& factors);

struct PrintedFactorization {
  std::uint64_t offset = 0;
  std::uint64_t n = 0;
  std::string printed;
};

/// CSV with header `offset,n,printed`.
std::vector<PrintedFactorization> load_factorization_fixture(const std::filesystem::path& path);

struct FactorizationCheck {
  PrintedFactorization row;
  Factorization computed;
  mpz_class printed_product;
  bool printed_product_is_n = false;  // does the printed list multiply back to n
  bool matches = false;               // computed factors equal the printed ones
};

FactorizationCheck check_printed(const PrintedFactorization& row);

}  // namespace gapforge
