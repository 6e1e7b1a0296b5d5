#pragma once

#include <utility>
#include <vector>

#include "skewtent/maps.hpp"

namespace skewtent {

// Piecewise constant function on [0,1], right-continuous at interior cuts.
struct StepDensity {
  std::vector<double> cuts;     // 0 = cuts[0] < ... < cuts.back() = 1
  std::vector<double> heights;  // one value per interval, >= 0

  // Right limit at cut abscissas; throws DomainError outside [0,1].
  double operator()(double x) const;
  // Exact piecewise integral over [0,1].
  double mass() const;
  std::size_t piece_count() const { return heights.size(); }
  double max_height() const;
  double min_height() const;
};

// Builds a step density from a sum of weighted indicators [cut, 1].
// Cuts are merged within 1e-14; tiny negative heights (series truncation
// noise up to neg_clamp) are clamped to zero.
StepDensity step_density_from_jumps(std::vector<std::pair<double, double>> jumps,
                                    double neg_clamp = 1e-12);

// Uniform-grid density from bin masses (used by the Ulam oracle).
StepDensity step_density_from_masses(const std::vector<double>& masses);

// d / integral(d); throws ZeroMass when the integral is not positive.
StepDensity normalize(const StepDensity& d);

// Total variation over the open interval: sum of |jumps| at interior cuts.
double variation(const StepDensity& d);

// Exact integral over [lo, hi]; throws DomainError on bad bounds.
double integrate(const StepDensity& d, double lo, double hi);

// Exact L1 distance via the merged cut list.
double l1_distance(const StepDensity& d1, const StepDensity& d2);

// Density of an acim as the series  sum_k (1/(f^k)'(0)) * indicator[f^k(0),1],
// truncated once the geometric tail 1/(T^l (T-1)) with T = min(s,t) drops
// below tol. A detected exact closure of the orbit of 0 is resummed as a
// geometric series instead of truncated.
StepDensity itn_density_raw(const SkewTentMap& f, double tol = 1e-10);

// Normalized version: the density of the acip.
StepDensity itn_density(const SkewTentMap& f, double tol = 1e-10);

// Limit of the normalized densities along a family of maps with constant
// f(0) = a and growing critical-orbit period: hyperbola branches on [0,a] and
// [1-a,1] around a central plateau, divided by the closed-form mass.
struct LimitDensity {
  double a;
  double z;  // 1 - (1-2a) log(1-2a) / (2-2a)
};

LimitDensity make_limit_density(double a);
double limit_density_eval(const LimitDensity& ld, double x);

// Builds stefan_map(a, n), computes its acip density, and returns the exact
// L1 distance to the limit density (piecewise closed-form integration over a
// 10^4-panel grid refined at cuts).
double stefan_limit_check(double a, int n);

// Max of the acip density over a deterministic log-uniform grid in the mixing
// region. Values above 2 are collected as findings, not failures.
struct SweepPoint {
  double s, t, rho_max;
};
struct SweepReport {
  int grid = 0;
  std::vector<SweepPoint> points;
  double global_max = 0.0;
  std::vector<SweepPoint> flagged;  // rho_max > 2
};
SweepReport conjecture_sweep(int grid, double tol = 1e-8);

}  // namespace skewtent
