#include "skewtent/flexibility.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "skewtent/ulam.hpp"

namespace skewtent {

namespace {

const double kHalfLog2 = 0.5 * std::log(2.0);
const double kLog2 = std::log(2.0);

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

SkewTentMap isentrope_map(double a, double t) {
  return make_skew_tent(isentrope_s(a, t), t);
}

// Smallest t the metric-entropy sweep may visit; below this the acip series
// gets too long for the requested tolerance.
constexpr double kSweepFloor = 1.0 + 1e-7;

}  // namespace

double isentrope_s(const IsentropeQuery& q) {
  const double a = q.a;
  const double t = q.t;
  if (!(a > kHalfLog2 - 1e-12 && a <= kLog2 + 1e-12)) {
    throw DomainError("isentrope: a = " + fmt(a) + " outside (log2/2, log2]");
  }
  if (!(t > 1.0 && t <= std::exp(a) + 1e-9)) {
    throw DomainError("isentrope: t = " + fmt(t) + " outside (1, e^a]");
  }
  const double s_hi = max_left_slope(t);
  if (a >= kLog2 - 1e-12) return s_hi;  // the full family is the log2 isentrope

  double s_lo = std::max(1.0 + 1e-9, t / (t * t - 1.0));
  if (!(s_lo < s_hi)) {
    throw BracketFailure("isentrope: no admissible slope interval at t = " + fmt(t));
  }
  const double h_lo = topological_entropy(make_skew_tent(s_lo, t));
  if (h_lo > a + 1e-9) {
    throw BracketFailure("isentrope: entropy " + fmt(h_lo) +
                         " at the smallest slope already exceeds a = " + fmt(a));
  }

  // The bracket goes all the way down to machine resolution: entropy in s is
  // continuous but locally very steep near parameters with periodic critical
  // orbits, and can move by up to ~2e-5 between adjacent doubles there. The
  // 1e-9 target holds wherever the parameter grid can express it; otherwise
  // the closest representable slope is returned.
  double lo = s_lo, hi = s_hi;
  while (hi - lo > 4e-16 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double h = topological_entropy(make_skew_tent(mid, t));
    (h < a ? lo : hi) = mid;
  }
  const double miss_lo = std::abs(topological_entropy(make_skew_tent(lo, t)) - a);
  const double miss_hi = std::abs(topological_entropy(make_skew_tent(hi, t)) - a);
  const double s = miss_lo < miss_hi ? lo : hi;
  // Anything beyond the worst observed per-ulp entropy movement means the
  // bracket invariant was lost, i.e. monotonicity in s actually failed.
  if (std::min(miss_lo, miss_hi) > 1e-4) {
    throw Error("isentrope: bisection landed " + fmt(std::min(miss_lo, miss_hi)) +
                " away from a = " + fmt(a) + "; entropy is not monotone in s here");
  }
  return s;
}

double isentrope_s(double a, double t) { return isentrope_s(IsentropeQuery{a, t}); }

namespace {

SolveResult finish_skew(const SkewTentMap& f, double a, double b, int iterations) {
  SolveResult res{f, entropy_report(f), iterations};
  if (std::abs(res.report.h_top - a) > 1e-6 || std::abs(res.report.h_mu - b) > 1e-6) {
    throw Error("solve_skew: certificates missed: h_top = " + fmt(res.report.h_top) +
                ", h_mu = " + fmt(res.report.h_mu));
  }
  return res;
}

// The slope grid cannot always place h_top within 1e-6 of a at the landed t:
// near tuning windows the entropy moves by up to ~1e-5 between adjacent
// doubles of s. Independent draws of t across the h_mu tolerance window
// resample that fine structure until both certificates verify. The seed is
// fixed, so results stay reproducible run to run.
SolveResult finish_skew_nudged(double a, double b, double t, int iterations) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> span(-2.2e-7, 2.2e-7);
  std::string last;
  for (int k = 0; k <= 2048; ++k) {
    const double tk = k == 0 ? t : t * (1.0 + span(rng));
    try {
      return finish_skew(make_skew_tent(isentrope_s(a, tk), tk), a, b,
                         iterations + k);
    } catch (const Error& e) {
      last = e.what();
    }
  }
  throw NoConvergence(
      "solve_skew: no representable map met both certificates after 2048 "
      "draws across the tolerance window; last: " + last);
}

}  // namespace

SolveResult solve_skew(double a, double b) {
  if (!(a > kHalfLog2 && a <= kLog2 + 1e-12)) {
    throw InvalidTarget("solve_skew: a = " + fmt(a) + " outside (log2/2, log2]");
  }
  if (!(b > 0.0 && b <= a + 1e-12)) {
    throw InvalidTarget("solve_skew: b = " + fmt(b) + " outside (0, a]");
  }

  // Equal targets: the equal-slope map has h_mu = h_top = log s outright,
  // and the bracketing sweep below would degenerate.
  if (std::abs(b - a) <= 1e-12) {
    const double s = std::min(std::exp(a), 2.0);
    return finish_skew(make_skew_tent(s, s), a, b, 0);
  }

  const auto h_mu_at = [&](double t) {
    const SkewTentMap f = isentrope_map(a, t);
    return metric_entropy(f, itn_density(f));
  };

  int iterations = 0;
  const double t_top = std::min(std::exp(a), 2.0);
  double t_hi = t_top;  // h_mu(t_hi) >= b: equal-slope end has h_mu = a
  double t_lo = t_top;
  for (;;) {
    t_lo = 1.0 + (t_lo - 1.0) / 2.0;
    if (t_lo < kSweepFloor) {
      throw InvalidTarget("solve_skew: b = " + fmt(b) +
                          " not reached before the sweep floor t = 1 + 1e-7");
    }
    ++iterations;
    const double h = h_mu_at(t_lo);
    if (h < b) break;
    t_hi = t_lo;
  }

  // Bisect on the sign of h_mu - b; continuity of h_mu along the isentrope
  // guarantees a crossing inside [t_lo, t_hi].
  double t_mid = 0.5 * (t_lo + t_hi);
  for (int i = 0; i < 200; ++i) {
    t_mid = 0.5 * (t_lo + t_hi);
    ++iterations;
    const double h = h_mu_at(t_mid);
    if (std::abs(h - b) <= 1e-8) break;
    (h < b ? t_lo : t_hi) = t_mid;
    if (t_hi - t_lo <= 1e-13 * t_hi) break;
  }
  return finish_skew_nudged(a, b, t_mid, iterations);
}

double rect_root_eps_max(const PLUnimodalMap& g) {
  const double T = g.min_abs_slope();
  if (g.values.front() > 1e-12) {
    // the middle piece shrinks to nothing at eps = 1
    return std::min(T - 1.0, 1.0 - 1e-9);
  }
  return (T - 1.0) / (T + 1.0);
}

double rect_root_eps_max(const SkewTentMap& g) { return rect_root_eps_max(to_pl(g)); }

PLUnimodalMap rect_root(const PLUnimodalMap& g, std::optional<double> eps_opt) {
  if (std::abs(g.critical_value() - 1.0) > 1e-12 ||
      std::abs(g.values.back()) > 1e-12) {
    throw DomainError("rect_root needs the normalized model g(c) = 1, g(1) = 0");
  }
  const double eps_max = rect_root_eps_max(g);
  const double eps = eps_opt.value_or(0.5 * eps_max);
  if (!(eps > 0.0 && eps < eps_max)) {
    throw DomainError("rect_root: eps = " + fmt(eps) + " outside (0, " +
                      fmt(eps_max) + ")");
  }

  const std::size_t nodes = g.breakpoints.size();
  std::vector<double> bp, val;
  bp.reserve(nodes + 2);
  val.reserve(nodes + 2);

  if (g.values.front() > 1e-12) {
    // g(0) > 0: conjugated copy of g on [0, (1+eps)/3] through the
    // orientation-reversing block map, transient middle piece, then the
    // linear return from [2/3, 1].
    const double left_end = (1.0 + eps) / 3.0;
    for (std::size_t i = nodes; i-- > 0;) {
      bp.push_back((1.0 - g.breakpoints[i]) * left_end);
      val.push_back((2.0 + g.values[i]) / 3.0);
    }
    bp.push_back(2.0 / 3.0);
    val.push_back(left_end);
    bp.push_back(1.0);
    val.push_back(0.0);
  } else {
    // g(0) = 0: no middle piece; the two blocks meet at (1+eps)/2.
    const double split = (1.0 + eps) / 2.0;
    for (std::size_t i = nodes; i-- > 0;) {
      bp.push_back((1.0 - g.breakpoints[i]) * split);
      val.push_back((g.values[i] * (1.0 - eps) + 1.0 + eps) / 2.0);
    }
    bp.push_back(1.0);
    val.push_back(0.0);
  }

  PLUnimodalMap out;
  try {
    out = make_pl_unimodal(std::move(bp), std::move(val));
  } catch (const NotExpanding&) {
    throw NotExpanding("rect_root: eps = " + fmt(eps) +
                       " leaves a slope magnitude at or below 1");
  }
  if (!(out.min_abs_slope() > 1.0)) {
    throw NotExpanding("rect_root produced min |slope| = " + fmt(out.min_abs_slope()));
  }
  return out;
}

PLUnimodalMap rect_root(const SkewTentMap& g, std::optional<double> eps_opt) {
  return rect_root(to_pl(g), eps_opt);
}

SolveResult solve_unimodal(double a, double b) {
  if (!(a > 0.0 && a <= kLog2 + 1e-12)) {
    throw InvalidTarget("solve_unimodal: a = " + fmt(a) + " outside (0, log2]");
  }
  if (!(b > 0.0 && b <= a + 1e-12)) {
    throw InvalidTarget("solve_unimodal: b = " + fmt(b) + " outside (0, a]");
  }
  if (a > kHalfLog2) return solve_skew(a, b);

  int n = 0;
  double a_in = a, b_in = b;
  while (a_in <= kHalfLog2) {
    a_in *= 2.0;
    b_in *= 2.0;
    ++n;
  }
  const SolveResult inner = solve_skew(a_in, b_in);

  PLUnimodalMap f = rect_root(std::get<SkewTentMap>(inner.map));
  for (int k = 1; k < n; ++k) f = rect_root(f);

  SolveResult res{f, entropy_report(f, 8192), inner.iterations};
  if (std::abs(res.report.h_top - a) > 1e-4) {
    throw Error("solve_unimodal: topological certificate missed: h_top = " +
                fmt(res.report.h_top) + " vs a = " + fmt(a));
  }
  if (std::abs(res.report.h_mu - b) > 1e-2) {
    throw Error("solve_unimodal: metric certificate missed: h_mu = " +
                fmt(res.report.h_mu) + " vs b = " + fmt(b));
  }
  return res;
}

PropositionReport proposition_check(double t) {
  if (!(t > 1.0 && t < 2.0)) {
    throw DomainError("proposition_check needs t in (1, 2)");
  }
  PropositionReport rep;
  rep.t = t;
  const double t3 = t * t * t;
  rep.s = (1.0 + std::sqrt(1.0 + 4.0 * t3 * t)) / (2.0 * t3);
  if (!(rep.s > 1.0)) {
    throw NoRoot("proposition_check: s = " + fmt(rep.s) + " <= 1 at t = " + fmt(t));
  }
  const SkewTentMap f = make_skew_tent(rep.s, t);
  rep.slope_max = std::max(rep.s, t);

  rep.h_top = topological_entropy(f);

  // Double renormalization lands on the full family, whose acip is Lebesgue;
  // the acip entropy of f is a quarter of that Rohlin integral.
  const SkewTentMap g = renormalize(renormalize(f));
  rep.h_mu = 0.25 * (std::log(g.s) * g.c + std::log(g.t) * (1.0 - g.c));
  rep.h_mu_direct = metric_entropy(f, itn_density(f));

  const double quarter_log2 = 0.25 * kLog2;
  rep.entropy_ok = std::abs(rep.h_top - quarter_log2) <= 1e-4;
  rep.slope_ok = rep.slope_max < 2.0;
  rep.h_mu_ok = rep.h_mu > 0.25 * std::log(16.0 / 15.0);
  return rep;
}

}  // namespace skewtent
