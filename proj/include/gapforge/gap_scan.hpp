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

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/sieve.hpp"

namespace gapforge {

// A maximal gap: no smaller prime has a gap >= this one.
struct GapRecord {
  std::uint64_t index = 0;  // 1-based row in the record sequence
  std::uint64_t gap = 0;
  std::uint64_t lower_prime = 0;

  std::uint64_t upper_prime() const { return lower_prime + gap; }
  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

// Every prime below `position` has been consumed; `last_prime` is the
// largest of them. Records are complete for gaps ending below position.
struct ScanCheckpoint {
  std::uint64_t position = 0;
  std::uint64_t last_prime = 0;
  std::vector<GapRecord> records;

  friend bool operator==(const ScanCheckpoint&, const ScanCheckpoint&) = default;
};

struct ScanOptions {
  unsigned threads = 1;
  SieveConfig sieve = SieveConfig::from_env();
  // Stop after this many segments (simulates an interrupted run).
  std::optional<std::uint64_t> max_segments;
  // Called after each merged batch of segments.
  std::function<void(const ScanCheckpoint&)> on_checkpoint;
};

struct ScanResult {
  std::vector<GapRecord> records;
  ScanCheckpoint checkpoint;
  bool complete = false;
};

/// Record gaps whose two primes are both <= limit. Resumes from `resume`
/// when given; output is identical to an uninterrupted scan and does not
/// depend on options.threads.
ScanResult max_gap_scan(std::uint64_t limit, const std::optional<ScanCheckpoint>& resume = std::nullopt,
                        const ScanOptions& options = {});

/// Throws FormatError on a malformed stream or one violating the
/// checkpoint invariants.
void validate_checkpoint(const ScanCheckpoint& checkpoint);
void write_checkpoint(std::ostream& out, const ScanCheckpoint& checkpoint);
ScanCheckpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const ScanCheckpoint& checkpoint);
std::optional<ScanCheckpoint> load_checkpoint(const std::string& path);

}  // namespace gapforge
