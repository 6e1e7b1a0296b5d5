#include "skewtent/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "itinerary.hpp"

namespace skewtent {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Relative tolerance for the mixing discriminant st^2 - s - t.
constexpr double kBoundaryRelTol = 1e-12;

double mixing_discriminant(const SkewTentMap& f) { return f.s * f.t * f.t - f.s - f.t; }

double mixing_scale(const SkewTentMap& f) { return f.s * f.t * f.t + f.s + f.t; }

std::optional<int> class_from_word(const KneadingWord& w, std::size_t limit) {
  if (limit < 3 || w.at(0) != 'R' || w.at(1) != 'L') return std::nullopt;
  for (std::size_t k = 2; k < limit; ++k) {
    if (w.at(k) == 'L') return static_cast<int>(k) - 2;
  }
  return std::nullopt;
}

}  // namespace

double SkewTentMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("evaluate: x = " + fmt(x) + " outside [0,1]");
  }
  if (x <= c) return detail::clamp01(1.0 - s * (c - x));
  return detail::clamp01(t * (1.0 - x));
}

SkewTentMap make_skew_tent(double s, double t) {
  if (!(s > 1.0) || !(t > 1.0)) {
    throw SlopeOutOfRange("slopes must both exceed 1, got s = " + fmt(s) +
                          ", t = " + fmt(t));
  }
  if (1.0 / s + 1.0 / t < 1.0) {
    throw NotSelfMap("1/s + 1/t = " + fmt(1.0 / s + 1.0 / t) +
                     " < 1: map leaves [0,1]");
  }
  SkewTentMap f;
  f.s = s;
  f.t = t;
  f.c = (t - 1.0) / t;
  f.xstar = t / (t + 1.0);
  return f;
}

double max_left_slope(double t) {
  if (!(t > 1.0)) throw SlopeOutOfRange("t must exceed 1");
  double s = t / (t - 1.0);
  // nudge below the boundary until rounding no longer tips 1/s + 1/t under 1
  for (int i = 0; i < 8 && 1.0 / s + 1.0 / t < 1.0; ++i) {
    s = std::nextafter(s, 1.0);
  }
  if (!(s > 1.0) || 1.0 / s + 1.0 / t < 1.0) {
    throw SlopeOutOfRange("no valid left slope for t = " + fmt(t));
  }
  return s;
}

Classification classify(const SkewTentMap& f) {
  Classification out;
  const double d = mixing_discriminant(f);
  const double tol = kBoundaryRelTol * mixing_scale(f);
  out.boundary = std::abs(d) <= tol;
  out.mixing = d > tol;
  if (out.mixing) {
    // m is read off the itinerary of 1: R, L, then m symbols R before the
    // next L. Large m only happens next to the mixing boundary, so grow the
    // word instead of always computing a long one.
    for (int len = 64; len <= 131072 && !out.class_n; len *= 8) {
      const KneadingWord w = kneading_word(f, len);
      const std::size_t limit = w.periodic()
                                    ? w.prefix.size() + 2 * w.cycle.size() + 4
                                    : w.prefix.size();
      out.class_n = class_from_word(w, limit);
      if (w.periodic()) break;  // word fully known, growing adds nothing
    }
  }
  return out;
}

OrbitRecord orbit_with_derivatives(const SkewTentMap& f, double x0, int n,
                                   LimitSide side) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) {
    throw DomainError("orbit: x0 = " + fmt(x0) + " outside [0,1]");
  }
  if (n < 0) throw DomainError("orbit: N must be >= 0");
  detail::OrbitScan scan = detail::run_orbit(f, x0, n, side, false);
  OrbitRecord rec;
  rec.points = std::move(scan.points);
  rec.derivs = std::move(scan.derivs);
  rec.symbols = std::move(scan.symbols);
  rec.hit_turning_at = scan.hit_turning_at;
  return rec;
}

KneadingWord kneading_word(const SkewTentMap& f, int max_len) {
  return detail::kneading_word_impl(f, 1.0, max_len);
}

KneadingWord kneading_word(const PLUnimodalMap& f, int max_len) {
  return detail::kneading_word_impl(f, f.critical_value(), max_len);
}

KneadingSequence kneading(const SkewTentMap& f, int n) {
  if (n < 1) throw DomainError("kneading: N must be >= 1");
  const KneadingWord w = kneading_word(f, n);
  KneadingSequence seq;
  seq.word.reserve(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    if (!w.periodic() && k >= w.prefix.size()) break;
    seq.word.push_back(w.at(k));
  }
  if (w.periodic()) {
    seq.periodic = static_cast<int>(w.cycle.size());
    seq.preperiod = static_cast<int>(w.prefix.size());
  }
  const std::size_t limit =
      w.periodic() ? w.prefix.size() + 2 * w.cycle.size() + 4 : seq.word.size();
  seq.class_m = class_from_word(w, limit);
  return seq;
}

SkewTentMap renormalize(const SkewTentMap& f) {
  const double d = mixing_discriminant(f);
  if (d > kBoundaryRelTol * mixing_scale(f)) {
    throw NotRenormalizable("map is mixing: st^2 - s - t = " + fmt(d));
  }
  // Slopes of the map conjugate to f^2 on its invariant interval. The pair
  // sits in the self-map region exactly when f is non-mixing; rounding can
  // tip a boundary case just outside, so nudge like max_left_slope does.
  double s2 = f.t * f.t;
  const double t2 = f.s * f.t;
  for (int i = 0; i < 8 && 1.0 / s2 + 1.0 / t2 < 1.0; ++i) {
    s2 = std::nextafter(s2, 1.0);
  }
  return make_skew_tent(s2, t2);
}

SkewTentMap stefan_map(double a, int n) {
  if (!(a > 0.0 && a < 0.5)) {
    throw DomainError("stefan_map: a = " + fmt(a) + " outside (0, 1/2)");
  }
  if (n < 0) throw DomainError("stefan_map: n must be >= 0");

  // Closure of the critical orbit: (t - a(t+1)) t^{2n+1} = 1, one root right
  // of 1 because the left factor is increasing once positive.
  const double expo = 2.0 * n + 1.0;
  const auto closure = [&](double t) {
    return (t - a * (t + 1.0)) * std::pow(t, expo) - 1.0;
  };
  double lo = 1.0 + 1e-12;
  double hi = std::pow(1.0 / (1.0 - 2.0 * a), 1.0 / expo) + 1.0;
  if (!(closure(lo) < 0.0)) throw NoRoot("stefan_map: bracket lower end not negative");
  for (int i = 0; closure(hi) <= 0.0; ++i) {
    if (i >= 8) throw NoRoot("stefan_map: no sign change up to t = " + fmt(hi));
    hi *= 2.0;
  }
  // The closure function is increasing on the bracket; if a sampled pair ever
  // disagrees, fall back to a scan for the first sign change.
  bool monotone = true;
  double prev = closure(lo);
  for (int i = 1; i <= 8; ++i) {
    const double v = closure(lo + (hi - lo) * i / 8.0);
    if (v < prev) monotone = false;
    prev = v;
  }
  if (!monotone) {
    const int kScan = 4096;
    for (int i = 1; i <= kScan; ++i) {
      const double z = lo + (hi - lo) * i / kScan;
      if (closure(z) > 0.0) {
        hi = z;
        lo = z - (hi - lo) / kScan;
        break;
      }
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (closure(mid) < 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  const double s = t * (1.0 - a) / (t - 1.0);
  const SkewTentMap f = make_skew_tent(s, t);

  if (std::abs(f.f0() - a) > 1e-12) {
    throw VerificationFailed("stefan_map: f(0) = " + fmt(f.f0()) +
                             " misses a by more than 1e-12");
  }
  // Critical orbit must run c -> 1 -> 0 -> a -> ... -> c with period 2n+3,
  // staying in the right lap between a and the return to c.
  const int period = 2 * n + 3;
  const OrbitRecord orb = orbit_with_derivatives(f, f.c, period, LimitSide::FromRight);
  if (std::abs(orb.points[1] - 1.0) > 1e-12 || std::abs(orb.points[2]) > 1e-12 ||
      std::abs(orb.points[3] - a) > 1e-11) {
    throw VerificationFailed("stefan_map: critical orbit does not start c,1,0,a");
  }
  for (int k = 0; k < 2 * n; ++k) {
    const double xk = orb.points[static_cast<std::size_t>(3 + k)];
    if (xk < f.c - 1e-9 || xk > 1.0 + 1e-12) {
      throw VerificationFailed("stefan_map: orbit point f^" + std::to_string(k) +
                               "(a) leaves [c,1]");
    }
  }
  if (std::abs(orb.points[static_cast<std::size_t>(period)] - f.c) > 1e-9) {
    throw VerificationFailed("stefan_map: critical orbit does not close with period " +
                             std::to_string(period));
  }
  return f;
}

double PLUnimodalMap::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("evaluate: x = " + fmt(x) + " outside [0,1]");
  }
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  auto i = static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(it - breakpoints.begin() - 1, 0,
                                 static_cast<std::ptrdiff_t>(slopes.size()) - 1));
  return detail::clamp01(values[i] + slopes[i] * (x - breakpoints[i]));
}

double PLUnimodalMap::min_abs_slope() const {
  double m = std::numeric_limits<double>::infinity();
  for (double sl : slopes) m = std::min(m, std::abs(sl));
  return m;
}

PLUnimodalMap make_pl_unimodal(std::vector<double> breakpoints,
                               std::vector<double> values) {
  if (breakpoints.size() != values.size() || breakpoints.size() < 3) {
    throw DomainError("piecewise map needs matching lists with >= 3 nodes");
  }
  if (std::abs(breakpoints.front()) > 1e-15 || std::abs(breakpoints.back() - 1.0) > 1e-15) {
    throw DomainError("breakpoints must start at 0 and end at 1");
  }
  breakpoints.front() = 0.0;
  breakpoints.back() = 1.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  for (double& v : values) {
    if (v < -1e-12 || v > 1.0 + 1e-12) {
      throw DomainError("values must lie in [0,1]");
    }
    v = detail::clamp01(v);
  }
  PLUnimodalMap f;
  f.breakpoints = std::move(breakpoints);
  f.values = std::move(values);
  f.turn = static_cast<int>(std::max_element(f.values.begin(), f.values.end()) -
                            f.values.begin());
  if (f.turn == 0 || f.turn + 1 == static_cast<int>(f.values.size())) {
    throw DomainError("maximum must be interior: map is not unimodal");
  }
  f.slopes.resize(f.breakpoints.size() - 1);
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    f.slopes[i] = (f.values[i + 1] - f.values[i]) / (f.breakpoints[i + 1] - f.breakpoints[i]);
    const bool rising = static_cast<int>(i) < f.turn;
    if (rising ? !(f.slopes[i] > 0.0) : !(f.slopes[i] < 0.0)) {
      throw DomainError("values must rise strictly to the maximum, then fall strictly");
    }
    if (std::abs(f.slopes[i]) <= 1.0) {
      throw NotExpanding("segment " + std::to_string(i) + " has |slope| = " +
                         fmt(std::abs(f.slopes[i])) + " <= 1");
    }
  }
  return f;
}

PLUnimodalMap to_pl(const SkewTentMap& f) {
  return make_pl_unimodal({0.0, f.c, 1.0}, {f.f0(), 1.0, 0.0});
}

}  // namespace skewtent
