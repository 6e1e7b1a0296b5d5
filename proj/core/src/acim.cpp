#include "skewtent/acim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "itinerary.hpp"

namespace skewtent {

namespace {

constexpr double kCutMergeTol = 1e-14;
constexpr std::size_t kMaxSeriesTerms = 4'000'000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Neumaier-compensated sum; the piece lists can get long enough for plain
// accumulation to eat into the 1e-12 mass budget.
struct Accum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::size_t piece_index(const std::vector<double>& cuts, double x) {
  const auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
  const auto i = static_cast<std::ptrdiff_t>(it - cuts.begin()) - 1;
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(cuts.size()) - 2));
}

}  // namespace

double StepDensity::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("density evaluation outside [0,1]");
  }
  return heights[piece_index(cuts, x)];
}

double StepDensity::mass() const {
  Accum acc;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    acc.add(heights[i] * (cuts[i + 1] - cuts[i]));
  }
  return acc.value();
}

double StepDensity::max_height() const {
  return *std::max_element(heights.begin(), heights.end());
}

double StepDensity::min_height() const {
  return *std::min_element(heights.begin(), heights.end());
}

StepDensity step_density_from_jumps(std::vector<std::pair<double, double>> jumps,
                                    double neg_clamp) {
  std::sort(jumps.begin(), jumps.end());
  StepDensity d;
  d.cuts.push_back(0.0);
  std::vector<double> weights{0.0};
  for (const auto& [cut, w] : jumps) {
    if (cut >= 1.0) continue;  // zero-width piece
    if (cut < 0.0) throw DomainError("jump abscissa below 0");
    if (cut - d.cuts.back() <= kCutMergeTol) {
      weights.back() += w;
    } else {
      d.cuts.push_back(cut);
      weights.push_back(w);
    }
  }
  d.cuts.push_back(1.0);
  d.heights.resize(weights.size());
  Accum acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc.add(weights[i]);
    double h = acc.value();
    if (h < 0.0) {
      if (h < -neg_clamp) {
        throw Error("step density height " + fmt(h) + " below -" + fmt(neg_clamp));
      }
      h = 0.0;
    }
    d.heights[i] = h;
  }
  return d;
}

StepDensity step_density_from_masses(const std::vector<double>& masses) {
  const auto m = masses.size();
  if (m < 1) throw DomainError("empty mass vector");
  StepDensity d;
  d.cuts.resize(m + 1);
  d.heights.resize(m);
  for (std::size_t i = 0; i <= m; ++i) {
    d.cuts[i] = static_cast<double>(i) / static_cast<double>(m);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (masses[i] < 0.0) throw DomainError("negative bin mass");
    d.heights[i] = masses[i] * static_cast<double>(m);
  }
  d.cuts.back() = 1.0;
  return d;
}

StepDensity normalize(const StepDensity& d) {
  const double total = d.mass();
  if (!(total > 0.0)) throw ZeroMass("integral is " + fmt(total));
  StepDensity out = d;
  for (double& h : out.heights) h /= total;
  return out;
}

double variation(const StepDensity& d) {
  Accum acc;
  for (std::size_t i = 0; i + 1 < d.heights.size(); ++i) {
    acc.add(std::abs(d.heights[i + 1] - d.heights[i]));
  }
  return acc.value();
}

double integrate(const StepDensity& d, double lo, double hi) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw DomainError("integration bounds must satisfy 0 <= lo <= hi <= 1");
  }
  Accum acc;
  for (std::size_t i = 0; i < d.heights.size(); ++i) {
    const double a = std::max(lo, d.cuts[i]);
    const double b = std::min(hi, d.cuts[i + 1]);
    if (b > a) acc.add(d.heights[i] * (b - a));
  }
  return acc.value();
}

double l1_distance(const StepDensity& d1, const StepDensity& d2) {
  Accum acc;
  std::size_t i = 0, j = 0;
  double x = 0.0;
  while (x < 1.0) {
    const double next = std::min(d1.cuts[i + 1], d2.cuts[j + 1]);
    acc.add(std::abs(d1.heights[i] - d2.heights[j]) * (next - x));
    if (d1.cuts[i + 1] <= next + kCutMergeTol && i + 2 < d1.cuts.size()) ++i;
    if (d2.cuts[j + 1] <= next + kCutMergeTol && j + 2 < d2.cuts.size()) ++j;
    x = next;
  }
  return acc.value();
}

StepDensity itn_density_raw(const SkewTentMap& f, double tol) {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const double T = std::min(f.s, f.t);
  if (!(T > 1.0)) throw SlopeTooSmall("min slope " + fmt(T) + " <= 1");

  // Tail of the jump series past l terms is at most 1 / (T^l (T-1)).
  const double raw = std::ceil(std::log(1.0 / (tol * (T - 1.0))) / std::log(T));
  const auto ell = static_cast<std::size_t>(std::max(1.0, raw));
  if (ell > kMaxSeriesTerms) {
    throw Error("itn_density: " + fmt(static_cast<double>(ell)) +
                " terms needed for tol " + fmt(tol) + "; slope too close to 1");
  }

  detail::OrbitScan scan =
      detail::run_orbit(f, 0.0, static_cast<int>(ell), LimitSide::FromRight, true);
  std::vector<std::pair<double, double>> jumps;
  jumps.reserve(scan.points.size());
  if (scan.period) {
    // Exact resummation: weights repeat scaled by 1/P per cycle, P > 1 since
    // the matched states share the derivative sign.
    const auto k0 = static_cast<std::size_t>(*scan.preperiod);
    const auto p = static_cast<std::size_t>(*scan.period);
    const double P = scan.derivs[k0 + p] / scan.derivs[k0];
    if (!(P > 1.0)) throw Error("itn_density: cycle derivative ratio " + fmt(P));
    const double geom = P / (P - 1.0);
    for (std::size_t k = 0; k < k0 + p; ++k) {
      double w = 1.0 / scan.derivs[k];
      if (k >= k0) w *= geom;
      jumps.emplace_back(scan.points[k], w);
    }
  } else {
    for (std::size_t k = 0; k < scan.points.size(); ++k) {
      jumps.emplace_back(scan.points[k], 1.0 / scan.derivs[k]);
    }
  }
  return step_density_from_jumps(std::move(jumps), std::max(1e-12, 8.0 * tol));
}

StepDensity itn_density(const SkewTentMap& f, double tol) {
  return normalize(itn_density_raw(f, tol));
}

LimitDensity make_limit_density(double a) {
  if (!(a > 0.0 && a < 0.5)) {
    throw DomainError("limit density needs a in (0, 1/2)");
  }
  LimitDensity ld;
  ld.a = a;
  ld.z = 1.0 - (1.0 - 2.0 * a) * std::log1p(-2.0 * a) / (2.0 - 2.0 * a);
  return ld;
}

namespace {

// Unnormalized limit density: plateau 1/(1-a) on [a, 1-a], hyperbola
// branches outside, symmetric about 1/2.
double limit_density_unnormalized(double a, double x) {
  if (x >= a && x <= 1.0 - a) return 1.0 / (1.0 - a);
  const double dist = std::abs(x - 0.5);  // > 1/2 - a on the branches
  return 1.0 / (2.0 * (1.0 - a)) +
         (1.0 - 2.0 * a) / (4.0 * (1.0 - a)) / dist;
}

// Exact integral of the unnormalized limit density over [u, v] within one
// branch (no crossing of a, 1-a, or 1/2).
double limit_branch_integral(double a, double u, double v) {
  if (u >= a && v <= 1.0 - a) return (v - u) / (1.0 - a);
  const double A = 1.0 / (2.0 * (1.0 - a));
  const double B = (1.0 - 2.0 * a) / (4.0 * (1.0 - a));
  if (v <= a) {
    // integral of B / (1/2 - x)
    return A * (v - u) + B * std::log((0.5 - u) / (0.5 - v));
  }
  return A * (v - u) + B * std::log((v - 0.5) / (u - 0.5));
}

}  // namespace

double limit_density_eval(const LimitDensity& ld, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x outside [0,1]");
  return limit_density_unnormalized(ld.a, x) / ld.z;
}

double stefan_limit_check(double a, int n) {
  if (n < 1) throw DomainError("stefan_limit_check needs n >= 1");
  const SkewTentMap f = stefan_map(a, n);
  const StepDensity rho = itn_density(f);
  const LimitDensity ld = make_limit_density(a);

  // Segment grid: 10^4 uniform panels refined at the density cuts and the
  // plateau edges; on each segment the step value is constant and the limit
  // density is one analytic branch, so the difference integrates in closed
  // form with at most one sign change.
  constexpr int kPanels = 10'000;
  std::vector<double> grid;
  grid.reserve(kPanels + rho.cuts.size() + 4);
  for (int i = 0; i <= kPanels; ++i) {
    grid.push_back(static_cast<double>(i) / kPanels);
  }
  grid.insert(grid.end(), rho.cuts.begin(), rho.cuts.end());
  grid.push_back(a);
  grid.push_back(1.0 - a);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double x, double y) { return y - x <= kCutMergeTol; }),
             grid.end());

  Accum acc;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double u = grid[i];
    const double v = std::min(grid[i + 1], 1.0);
    if (v <= u) continue;
    const double h = rho(0.5 * (u + v));
    const double fu = limit_density_eval(ld, u) - h;
    const double fv = limit_density_eval(ld, v) - h;
    const auto segment = [&](double x0, double x1) {
      return std::abs(limit_branch_integral(a, x0, x1) / ld.z - h * (x1 - x0));
    };
    if (fu == 0.0 || fv == 0.0 || (fu > 0.0) == (fv > 0.0)) {
      acc.add(segment(u, v));
    } else {
      // hyperbola is monotone on the segment: solve A + B/dist = h*z for the
      // crossing, or fall back to the midpoint when on the plateau (where the
      // difference cannot change sign anyway)
      const double A = 1.0 / (2.0 * (1.0 - a));
      const double B = (1.0 - 2.0 * a) / (4.0 * (1.0 - a));
      const double target = h * ld.z - A;
      double xc = 0.5 * (u + v);
      if (target > 0.0) {
        const double dist = B / target;
        xc = v <= a ? 0.5 - dist : 0.5 + dist;
        xc = std::clamp(xc, u, v);
      }
      acc.add(segment(u, xc) + segment(xc, v));
    }
  }
  return acc.value();
}

SweepReport conjecture_sweep(int grid, double tol) {
  if (grid < 2) throw DomainError("sweep grid must be >= 2");
  SweepReport rep;
  rep.grid = grid;
  rep.points.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));

  // Log-uniform over a window of the mixing region; both slopes are floored
  // at 1.01 to keep the series length bounded.
  constexpr double kSlopeFloor = 1.01;
  constexpr double kTMax = 4.0;
  for (int i = 0; i < grid; ++i) {
    const double t = std::exp(std::log(kSlopeFloor) +
                              (std::log(kTMax) - std::log(kSlopeFloor)) *
                                  (i + 0.5) / grid);
    const double s_hi = max_left_slope(t);
    const double s_lo = std::max(kSlopeFloor, t / (t * t - 1.0) * (1.0 + 1e-9));
    if (!(s_lo < s_hi)) continue;
    for (int j = 0; j < grid; ++j) {
      const double s = std::exp(std::log(s_lo) +
                                (std::log(s_hi) - std::log(s_lo)) * (j + 0.5) / grid);
      const SkewTentMap f = make_skew_tent(s, t);
      if (!(f.s * f.t * f.t - f.s - f.t > 0.0)) continue;
      const StepDensity rho = itn_density(f, tol);
      const SweepPoint pt{s, t, rho.max_height()};
      rep.points.push_back(pt);
      rep.global_max = std::max(rep.global_max, pt.rho_max);
      if (pt.rho_max > 2.0) rep.flagged.push_back(pt);
    }
  }
  return rep;
}

}  // namespace skewtent
