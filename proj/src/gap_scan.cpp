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

#include "gapforge/gap_scan.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "gapforge/error.hpp"

namespace gapforge {

namespace {

// What the merge needs from one segment: its first and last prime and the
// prefix maxima of the gaps strictly inside it.
struct SegmentSummary {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> prefix_maxima;  // (gap, lower_prime)
};

void summarize(OddSieveWindow& window, std::uint64_t lo, std::uint64_t hi, SegmentSummary& out) {
  out = {};
  window.sieve(lo, hi);
  std::uint64_t best = 0;
  window.for_each_prime([&](std::uint64_t p) {
    if (out.first == 0) {
      out.first = p;
    } else {
      const std::uint64_t gap = p - out.last;
      if (gap > best) {
        best = gap;
        out.prefix_maxima.emplace_back(gap, out.last);
      }
    }
    out.last = p;
  });
}

void merge(const SegmentSummary& seg, ScanCheckpoint& state) {
  if (seg.first == 0) return;
  auto push = [&](std::uint64_t gap, std::uint64_t lower) {
    const std::uint64_t best = state.records.empty() ? 0 : state.records.back().gap;
    if (gap > best) state.records.push_back({state.records.size() + 1, gap, lower});
  };
  if (state.last_prime != 0) push(seg.first - state.last_prime, state.last_prime);
  for (const auto& [gap, lower] : seg.prefix_maxima) push(gap, lower);
  state.last_prime = seg.last;
}

std::uint64_t parse_u64(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw FormatError(std::string("checkpoint: bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ScanResult max_gap_scan(std::uint64_t limit, const std::optional<ScanCheckpoint>& resume,
                        const ScanOptions& options) {
  if (limit < 3) throw PreconditionError("max_gap_scan: limit must be at least 3");
  if (limit >= kSieveCeiling) throw PreconditionError("max_gap_scan: limit exceeds 2^64 - 2^33");
  const std::uint64_t end = limit + 1;

  ScanCheckpoint state;
  if (resume) {
    validate_checkpoint(*resume);
    if (resume->position > end) {
      throw CheckpointMismatch("max_gap_scan: checkpoint position " + std::to_string(resume->position) +
                               " is beyond limit " + std::to_string(limit));
    }
    state = *resume;
  }

  const std::uint64_t span = options.sieve.segment_span();
  const unsigned threads = std::max(1u, options.threads);
  const auto base = base_primes(isqrt(limit));

  std::vector<OddSieveWindow> windows(threads, OddSieveWindow(base));
  std::vector<SegmentSummary> summaries(threads);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bounds;
  std::uint64_t segments_done = 0;

  while (state.position < end) {
    if (options.max_segments && segments_done >= *options.max_segments) break;

    // Segments end on multiples of the span so checkpoints land on
    // segment boundaries regardless of where the scan started.
    bounds.clear();
    std::uint64_t lo = state.position;
    while (lo < end && bounds.size() < threads) {
      if (options.max_segments && segments_done + bounds.size() >= *options.max_segments) break;
      const std::uint64_t aligned = (lo / span + 1) * span;
      const std::uint64_t hi = std::min(aligned, end);
      bounds.emplace_back(lo, hi);
      lo = hi;
    }

    if (bounds.size() == 1) {
      summarize(windows[0], bounds[0].first, bounds[0].second, summaries[0]);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(bounds.size());
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        workers.emplace_back([&, i] { summarize(windows[i], bounds[i].first, bounds[i].second, summaries[i]); });
      }
    }
    for (std::size_t i = 0; i < bounds.size(); ++i) merge(summaries[i], state);

    state.position = bounds.back().second;
    segments_done += bounds.size();
    if (options.on_checkpoint) options.on_checkpoint(state);
  }

  ScanResult result;
  result.records = state.records;
  result.complete = state.position >= end;
  result.checkpoint = std::move(state);
  return result;
}

void validate_checkpoint(const ScanCheckpoint& checkpoint) {
  if (checkpoint.last_prime >= checkpoint.position) {
    throw FormatError("checkpoint: last_prime must be below position");
  }
  for (std::size_t i = 0; i < checkpoint.records.size(); ++i) {
    const auto& r = checkpoint.records[i];
    if (r.gap == 0 || r.index != i + 1) throw FormatError("checkpoint: malformed record");
    if (r.upper_prime() > checkpoint.last_prime) throw FormatError("checkpoint: record beyond last_prime");
    if (i > 0) {
      const auto& prev = checkpoint.records[i - 1];
      if (r.gap <= prev.gap || r.lower_prime <= prev.lower_prime) {
        throw FormatError("checkpoint: records must be strictly increasing");
      }
    }
  }
}

void write_checkpoint(std::ostream& out, const ScanCheckpoint& checkpoint) {
  out << "v1," << checkpoint.position << ',' << checkpoint.last_prime << '\n';
  for (const auto& r : checkpoint.records) out << r.gap << ',' << r.lower_prime << '\n';
}

ScanCheckpoint read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("checkpoint: empty stream");
  std::string_view header(line);
  if (!header.starts_with("v1,")) throw FormatError("checkpoint: expected 'v1,' header");
  header.remove_prefix(3);
  const auto comma = header.find(',');
  if (comma == std::string_view::npos) throw FormatError("checkpoint: header needs position and last_prime");

  ScanCheckpoint checkpoint;
  checkpoint.position = parse_u64(header.substr(0, comma), "position");
  checkpoint.last_prime = parse_u64(header.substr(comma + 1), "last_prime");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string_view row(line);
    const auto sep = row.find(',');
    if (sep == std::string_view::npos) throw FormatError("checkpoint: record line needs gap,lower_prime");
    checkpoint.records.push_back({checkpoint.records.size() + 1, parse_u64(row.substr(0, sep), "gap"),
                                  parse_u64(row.substr(sep + 1), "lower_prime")});
  }
  validate_checkpoint(checkpoint);
  return checkpoint;
}

void save_checkpoint(const std::string& path, const ScanCheckpoint& checkpoint) {
  // Written beside the target then renamed: `path` always holds a complete checkpoint.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    write_checkpoint(out, checkpoint);
    if (!out.flush()) throw Error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<ScanCheckpoint> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return read_checkpoint(in);
}

}  // namespace gapforge
