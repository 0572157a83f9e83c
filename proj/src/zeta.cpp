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

#include "gapforge/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gapforge/error.hpp"
#include "gapforge/report.hpp"

namespace gapforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Riemann-Siegel remainder coefficients C0..C3 as power series in
// z = 2p - 1 (C0, C2 even; C1, C3 odd).
constexpr std::array<double, 15> kC0 = {
    0.38268343236508977173,  0.43724046807752044936,  0.13237657548034352332,
    -0.01360502604767418865, -0.01356762197010358089, -0.00162372532314446528,
    0.00029705353733379691,  0.00007943300879521470,  0.00000046556124614505,
    -0.00000143272516309551, -0.00000010354847112313, 0.00000001235792708386,
    0.00000000178810838580,  -0.00000000003391414390, -0.00000000001632663390,
};
constexpr std::array<double, 17> kC1 = {
    -0.02682510262837534703, 0.01378477342635185305,  0.03849125048223508223,
    0.00987106629906207647,  -0.00331075976085840433, -0.00146478085779541508,
    -0.00001320794062487696, 0.00005922748701847141,  0.00000598024258537345,
    -0.00000096413224561698, -0.00000018334733722714, 0.00000000446708756272,
    0.00000000270963508218,  0.00000000007785288654,  -0.00000000002343762601,
    -0.00000000000158301728, 0.00000000000012119942,
};
constexpr std::array<double, 20> kC2 = {
    0.00518854283029316849,  0.00030946583880634746,  -0.01133594107822937338, 0.00223304574195814477,
    0.00519663740886233021,  0.00034399144076208337,  -0.00059106484274705828, -0.00010229972547935857,
    0.00002088839221699276,  0.00000592766549309654,  -0.00000016423838362436, -0.00000015161199700941,
    -0.00000000590780369821, 0.00000000209115148595,  0.00000000017815649583,  -0.00000000001616407246,
    -0.00000000000238069625, 0.00000000000005398265,  0.00000000000001975014,  0.00000000000000023333,
};
constexpr std::array<double, 23> kC3 = {
    -0.00133971609071945690, 0.00374421513637939370,  -0.00133031789193214681, -0.00226546607654717871,
    0.00095484999985067304,  0.00060100384589636039,  -0.00010128858286776622, -0.00006865733449299826,
    0.00000059853667915386,  0.00000333165985123995,  0.00000021919289102435,  -0.00000007890884245681,
    -0.00000000941468508130, 0.00000000095701162109,  0.00000000018763137453,  -0.00000000000443783768,
    -0.00000000000224267385, -0.00000000000003627687, 0.00000000000001763981,  0.00000000000000079608,
    -0.00000000000000009420, -0.00000000000000000713, 0.00000000000000000033,
};

template <std::size_t N>
double even_series(const std::array<double, N>& c, double z2) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z2 + *it;
  return acc;
}

constexpr int kRemainderTerms = 4;

double local_spacing(double t) { return kTwoPi / std::log(t / kTwoPi); }

ZetaZero bisect(double lo, double hi, double z_lo, double tol) {
  while (hi - lo > 0.5 * tol) {
    const double mid = 0.5 * (lo + hi);
    const double z_mid = rs_z(mid);
    if (z_mid == 0.0) return {0, mid, tol};
    if ((z_mid > 0) == (z_lo > 0)) {
      lo = mid;
      z_lo = z_mid;
    } else {
      hi = mid;
    }
  }
  // gamma +/- tol reaches past both ends of the final bracket.
  return {0, 0.5 * (lo + hi), tol};
}

}  // namespace

double rs_theta(double t) {
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  // 1/(48t) + 7/(5760t^3) + 31/(80640t^5) + 127/(430080t^7) + 511/(1216512t^9)
  const double tail =
      inv * (1.0 / 48.0 +
             inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0 + inv2 * (127.0 / 430080.0 + inv2 * (511.0 / 1216512.0)))));
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + tail;
}

double zero_count_main_term(double T) { return rs_theta(T) / kPi + 1.0; }

double von_mangoldt_main_term(double T) {
  const double x = T / kTwoPi;
  return x * std::log(x) - x;
}

double rs_c0(double p) {
  const double z = 2.0 * p - 1.0;
  return even_series(kC0, z * z);
}

double rs_remainder(double t, int terms) {
  const double tau = std::sqrt(t / kTwoPi);
  const auto n = static_cast<std::uint64_t>(tau);
  const double z = 2.0 * (tau - static_cast<double>(n)) - 1.0;
  const double z2 = z * z;
  const double inv = 1.0 / tau;
  double acc = even_series(kC0, z2);
  if (terms > 1) acc += inv * z * even_series(kC1, z2);
  if (terms > 2) acc += inv * inv * even_series(kC2, z2);
  if (terms > 3) acc += inv * inv * inv * z * even_series(kC3, z2);
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
  return sign * acc / std::sqrt(tau);
}

double rs_z(double t) {
  const double tau = std::sqrt(t / kTwoPi);
  const auto n = static_cast<std::uint64_t>(tau);
  const double theta = rs_theta(t);
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    sum += std::cos(theta - t * std::log(kd)) / std::sqrt(kd);
  }
  return 2.0 * sum + rs_remainder(t, kRemainderTerms);
}

std::vector<ZetaZero> find_zeros(double T, const ZeroSearchOptions& options) {
  if (!(T > 10.0) || T > 1e4) throw PreconditionError("find_zeros: T must lie in (10, 1e4]");
  if (!(options.tol > 0.0) || options.tol > 1e-9) throw PreconditionError("find_zeros: tol must lie in (0, 1e-9]");
  if (!(options.grid_fraction > 0.0) || options.grid_fraction > 0.5) {
    throw PreconditionError("find_zeros: grid step must be at most half the average spacing");
  }

  std::vector<double> ts{10.0};
  std::vector<double> zs{rs_z(10.0)};
  while (ts.back() < T) {
    const double next = std::min(T, ts.back() + options.grid_fraction * local_spacing(ts.back()));
    ts.push_back(next);
    zs.push_back(rs_z(next));
  }

  std::vector<ZetaZero> zeros;
  auto scan_cell = [&](double a, double b, double za, double zb, int pieces) {
    const double h = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double lo = a + k * h;
      const double hi = (k + 1 == pieces) ? b : lo + h;
      const double zlo = (k == 0) ? za : rs_z(lo);
      const double zhi = (k + 1 == pieces) ? zb : rs_z(hi);
      if (zlo == 0.0) {
        zeros.push_back({0, lo, options.tol});
      } else if (zhi != 0.0 && (zlo > 0) != (zhi > 0)) {
        zeros.push_back(bisect(lo, hi, zlo, options.tol));
      }
    }
  };

  // A close pair inside one cell leaves no sign change, but |Z| on the
  // grid then has a local minimum next to it; such cells are rescanned
  // finely.
  const std::size_t cells = ts.size() - 1;
  std::vector<char> suspicious(cells, 0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double here = std::abs(zs[i]);
    const bool left_ok = i == 0 || ((zs[i - 1] > 0) == (zs[i] > 0) && here <= std::abs(zs[i - 1]));
    const bool right_ok = i + 1 == ts.size() || ((zs[i + 1] > 0) == (zs[i] > 0) && here <= std::abs(zs[i + 1]));
    if (!left_ok || !right_ok) continue;
    if (i > 0) suspicious[i - 1] = 1;
    if (i < cells) suspicious[i] = 1;
  }
  for (std::size_t i = 0; i < cells; ++i) {
    scan_cell(ts[i], ts[i + 1], zs[i], zs[i + 1], suspicious[i] ? 16 : 1);
  }
  if (zs.back() == 0.0) zeros.push_back({0, T, options.tol});

  for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].ordinal = i + 1;

  const double expected = std::round(zero_count_main_term(T));
  if (std::abs(static_cast<double>(zeros.size()) - expected) > options.s_allowance) {
    std::ostringstream msg;
    msg << "find_zeros: " << zeros.size() << " sign changes up to T=" << T << " but the smooth count is "
        << expected << "; refine the grid";
    throw MissedZero(msg.str());
  }
  return zeros;
}

ZeroCount count_zeros(double T, const ZeroSearchOptions& options) {
  const auto zeros = find_zeros(T, options);
  ZeroCount out;
  out.T = T;
  out.exact = zeros.size();
  out.main_term = zero_count_main_term(T);
  out.s_of_t = static_cast<double>(out.exact) - out.main_term;
  return out;
}

std::vector<SpacingRow> spacing_report(std::span<const ZetaZero> zeros) {
  if (zeros.size() < 2) throw PreconditionError("spacing_report: needs at least two zeros");
  std::vector<SpacingRow> rows;
  rows.reserve(zeros.size() - 1);
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i) {
    const double g = zeros[i].gamma;
    SpacingRow row;
    row.n = zeros[i].ordinal;
    row.gamma = g;
    row.delta = zeros[i + 1].gamma - g;
    row.thm11_bound = kPi / std::log(std::log(g));
    row.thm10_bound = std::pow(g, 0.1559458);
    row.average = local_spacing(g);
    row.thm11_violated = row.delta > row.thm11_bound;
    row.thm10_violated = row.delta > row.thm10_bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SpacingBand> spacing_bands(std::span<const SpacingRow> rows, double width) {
  if (!(width > 0.0)) throw PreconditionError("spacing_bands: width must be positive");
  std::vector<SpacingBand> bands;
  for (const auto& row : rows) {
    const double lo = std::floor(row.gamma / width) * width;
    if (bands.empty() || bands.back().lo != lo) bands.push_back({lo, lo + width});
    auto& band = bands.back();
    ++band.pairs;
    band.mean_delta += row.delta;
    band.thm11_violations += row.thm11_violated;
    band.thm10_violations += row.thm10_violated;
  }
  for (auto& band : bands) band.mean_delta /= static_cast<double>(band.pairs);
  return bands;
}

double zero_ordinal_ratio(const ZetaZero& zero) {
  if (zero.ordinal < 2) throw PreconditionError("zero_ordinal_ratio: ordinal must be at least 2");
  const double n = static_cast<double>(zero.ordinal);
  return zero.gamma * std::log(n) / (kTwoPi * n);
}

void write_zero_csv(std::ostream& out, std::span<const ZetaZero> zeros) {
  out << "ordinal,gamma,tol\n";
  for (const auto& z : zeros) out << z.ordinal << ',' << format_double(z.gamma) << ',' << format_double(z.tol) << '\n';
}

std::vector<ZetaZero> read_zero_csv(std::istream& in) {
  std::vector<ZetaZero> zeros;
  std::string line;
  if (!std::getline(in, line)) return zeros;
  if (line.rfind("ordinal,gamma,tol", 0) != 0) throw FormatError("zero table: expected 'ordinal,gamma,tol' header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    ZetaZero z;
    char c1 = 0, c2 = 0;
    if (!(fields >> z.ordinal >> c1 >> z.gamma >> c2 >> z.tol) || c1 != ',' || c2 != ',') {
      throw FormatError("zero table: malformed row '" + line + "'");
    }
    if (z.ordinal == 0 || !(z.gamma > 0.0) || !(z.tol >= 0.0)) throw FormatError("zero table: invalid values in '" + line + "'");
    if (!zeros.empty() && (z.ordinal <= zeros.back().ordinal || z.gamma <= zeros.back().gamma)) {
      throw FormatError("zero table: ordinals and ordinates must increase");
    }
    zeros.push_back(z);
  }
  return zeros;
}

const ZetaZero* find_ordinal(std::span<const ZetaZero> zeros, std::uint64_t ordinal) {
  const auto it = std::lower_bound(zeros.begin(), zeros.end(), ordinal,
                                   [](const ZetaZero& z, std::uint64_t n) { return z.ordinal < n; });
  if (it == zeros.end() || it->ordinal != ordinal) return nullptr;
  return &*it;
}

}  // namespace gapforge
