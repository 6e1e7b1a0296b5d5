// Shared orbit machinery: one step of a map under the one-sided limit
// convention, and full orbit scans with derivative bookkeeping and exact
// cycle detection. Internal to the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewtent/maps.hpp"

namespace skewtent::detail {

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

struct Step {
  double next;
  double slope;  // signed branch slope used for this step
  char symbol;   // 'L' or 'R'
};

// displaced_side is the side of the recorded orbit point on which the true
// (one-sided limit) point lies; it selects the branch on exact hits of the
// turning point.
inline Step orbit_step(const SkewTentMap& f, double x, int displaced_side) {
  const double d = x - f.c;
  bool right;
  if (std::abs(d) <= kTurnHitTol) {
    right = displaced_side > 0;
  } else {
    right = d > 0;
  }
  if (right) return {clamp01(f.t * (1.0 - x)), -f.t, 'R'};
  return {clamp01(1.0 - f.s * (f.c - x)), f.s, 'L'};
}

// For piecewise linear maps the same rule also resolves exact hits of
// interior breakpoints: the displaced point picks the adjacent segment.
inline Step orbit_step(const PLUnimodalMap& f, double x, int displaced_side) {
  const auto& b = f.breakpoints;
  const int nseg = f.segment_count();
  int i = static_cast<int>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) - 1;
  i = std::clamp(i, 0, nseg - 1);
  for (int j = std::max(0, i); j <= std::min(nseg, i + 1); ++j) {
    if (std::abs(x - b[static_cast<std::size_t>(j)]) <= kTurnHitTol) {
      i = displaced_side > 0 ? std::min(j, nseg - 1) : std::max(j - 1, 0);
      break;
    }
  }
  const auto ui = static_cast<std::size_t>(i);
  const double y = clamp01(f.values[ui] + f.slopes[ui] * (x - b[ui]));
  return {y, f.slopes[ui], i < f.turn ? 'L' : 'R'};
}

inline double turning_point(const SkewTentMap& f) { return f.c; }
inline double turning_point(const PLUnimodalMap& f) { return f.turn_point(); }

struct OrbitScan {
  std::vector<double> points;
  std::vector<double> derivs;
  std::string symbols;
  std::optional<int> hit_turning_at;
  // Exact closure in (point, derivative sign) state space. Matching the sign
  // too keeps the derivative ratio across one period positive.
  std::optional<int> preperiod;
  std::optional<int> period;
};

// A candidate closure at distance delta from a genuinely periodic state stays
// within rounding of the stored cycle forever; a near miss separates at the
// expansion rate. The orbit follows the claimed cycle until the accumulated
// derivative would have amplified any offset above the tolerance, which can
// take many periods when the cycle is barely expanding (slopes near 1).
// Offsets small enough to survive this are harmless: they perturb the orbit
// only at depths whose series weights are negligible.
template <class Map>
bool verify_cycle(const Map& f, const OrbitScan& scan, int k0, int period,
                  double x, double dacc, int side_factor) {
  double vx = x;
  double vd = dacc;
  double amp = 1.0;
  const int cap = 200'000;
  for (int j = 0; j < cap; ++j) {
    const Step st = orbit_step(f, vx, side_factor * (vd > 0 ? 1 : -1));
    vd *= st.slope;
    vx = st.next;
    amp *= std::abs(st.slope);
    const auto ref = static_cast<std::size_t>(k0 + 1 + j % period);
    if (std::abs(vx - scan.points[ref]) > std::max(4e-13, 3e-15 * amp)) {
      return false;
    }
    if (amp >= 1e6) return true;
  }
  return true;
}

// Runs at most `nsteps` steps; stops early when detect_cycle is set and the
// state revisits an earlier one within kOrbitCloseTol.
template <class Map>
OrbitScan run_orbit(const Map& f, double x0, int nsteps, LimitSide side,
                    bool detect_cycle) {
  const int side_factor = side == LimitSide::FromRight ? 1 : -1;
  OrbitScan out;
  out.points.reserve(static_cast<std::size_t>(nsteps) + 1);
  out.derivs.reserve(static_cast<std::size_t>(nsteps) + 1);
  out.symbols.reserve(static_cast<std::size_t>(nsteps));

  std::unordered_map<std::int64_t, int> seen;
  const auto key_of = [](double x, double dacc) {
    const auto q = static_cast<std::int64_t>(std::llround(x / kOrbitCloseTol));
    return q * 2 + (dacc > 0 ? 1 : 0);
  };

  const double turn = turning_point(f);
  double x = clamp01(x0);
  double dacc = 1.0;
  for (int k = 0;; ++k) {
    out.points.push_back(x);
    out.derivs.push_back(dacc);
    if (!out.hit_turning_at && std::abs(x - turn) <= kTurnHitTol) {
      out.hit_turning_at = k;
    }
    if (detect_cycle) {
      const std::int64_t key = key_of(x, dacc);
      for (std::int64_t dq = -2; dq <= 2; dq += 2) {
        auto it = seen.find(key + dq);
        if (it != seen.end() &&
            std::abs(out.points[static_cast<std::size_t>(it->second)] - x) <=
                kOrbitCloseTol &&
            verify_cycle(f, out, it->second, k - it->second, x, dacc,
                         side_factor)) {
          out.preperiod = it->second;
          out.period = k - it->second;
          return out;
        }
      }
      seen.emplace(key, k);
    }
    if (k == nsteps) break;
    const Step st = orbit_step(f, x, side_factor * (dacc > 0 ? 1 : -1));
    out.symbols.push_back(st.symbol);
    dacc *= st.slope;
    x = st.next;
  }
  return out;
}

// Kneading word of the critical value under the left-limit convention,
// extended by its cycle when the orbit closes exactly.
template <class Map>
KneadingWord kneading_word_impl(const Map& f, double critical_value, int max_len) {
  OrbitScan scan = run_orbit(f, critical_value, max_len, LimitSide::FromLeft, true);
  KneadingWord w;
  if (scan.period) {
    const auto pre = static_cast<std::size_t>(*scan.preperiod);
    w.prefix = scan.symbols.substr(0, pre);
    w.cycle = scan.symbols.substr(pre);
  } else {
    w.prefix = std::move(scan.symbols);
  }
  return w;
}

}  // namespace skewtent::detail
