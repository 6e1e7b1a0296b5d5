#pragma once

#include <string>
#include <vector>

#include "skewtent/acim.hpp"
#include "skewtent/maps.hpp"

namespace skewtent {

// Entropies in nats, with the certification residuals of the topological
// entropy root search.
struct EntropyReport {
  double h_top = 0.0;
  double h_mu = 0.0;
  std::string h_top_method;
  std::string h_mu_method;
  double tail_bound = 0.0;  // kneading determinant tail at the root
  double bracket = 0.0;     // root bracket width in z
};

// Rohlin integral log(s) * mu([0,c]) + log(t) * mu([c,1]) computed exactly
// from the piecewise representation. rho must integrate to 1 within 1e-9.
double metric_entropy(const SkewTentMap& f, const StepDensity& rho);

// Truncated kneading determinant  sum_k eps_0...eps_{k-1} z^k  with
// eps = +1 for L and -1 for R, plus the geometric tail bound z^{N+1}/(1-z).
// n_terms < 0 picks N so the tail is at most 1e-12 (capped at 10^4).
struct DeterminantValue {
  double value = 0.0;
  double tail = 0.0;
  int terms = 0;
};
DeterminantValue kneading_determinant(const SkewTentMap& f, double z,
                                      int n_terms = -1);

// h = -log z* for the smallest root z* of the kneading determinant in (0,1),
// located by a sign-change scan plus bisection.
struct EntropyEstimate {
  double h = 0.0;
  double z_root = 0.0;
  double bracket = 0.0;  // width of the final z bracket
  double tail = 0.0;     // determinant tail bound at the root
};
EntropyEstimate topological_entropy_certified(const SkewTentMap& f);
EntropyEstimate topological_entropy_certified(const PLUnimodalMap& f);
double topological_entropy(const SkewTentMap& f);
double topological_entropy(const PLUnimodalMap& f);

// Number of maximal monotone laps of f^n by exact pullback of the turning
// point. (1/n) log lap_n is a decreasing-trend upper estimate of h_top.
// Throws LapOverflow once the count would exceed 2e6.
long long lap_count(const SkewTentMap& f, int n);
long long lap_count(const PLUnimodalMap& f, int n);

// Partial sums S_0..S_N of sum_k 1/(f^k)'(1) under the left-limit
// convention; S_N -> 0 with the geometric tail 1/(T^N (T-1)).
std::vector<double> identity_partial_sums(const SkewTentMap& f, int n);

// Residual of x = 1 - (1/t) sum_k 1/(f^k)'(x); for x > c additionally the
// residual of f(x) = sum_k 1/(f^k)'(x), returning the larger of the two.
double f_expansion_residual(const SkewTentMap& f, double x, int n);

// Full report: topological entropy from the kneading determinant and metric
// entropy from the acip density via the Rohlin integral.
EntropyReport entropy_report(const SkewTentMap& f, double tol = 1e-10);

// For piecewise linear maps the acip has no closed form here; the metric
// entropy comes from the Ulam oracle at the given resolution.
EntropyReport entropy_report(const PLUnimodalMap& f, int ulam_bins = 8192);

}  // namespace skewtent
