#pragma once

#include <optional>
#include <variant>

#include "skewtent/entropy.hpp"
#include "skewtent/maps.hpp"

namespace skewtent {

// One point of the constant-entropy curve s = beta(t): target topological
// entropy a in (log2 / 2, log 2], right slope t in (1, e^a].
struct IsentropeQuery {
  double a = 0.0;
  double t = 0.0;
};

// Left slope with |h_top(s, t) - a| <= 1e-9 wherever the parameter grid can
// express that (entropy can move by up to ~2e-5 between adjacent doubles
// near periodic-critical-orbit parameters; the closest representable slope
// is returned there). Bisection runs between the mixing boundary
// (h = log2 / 2) and the full-family boundary (h = log 2). Throws
// BracketFailure when even the smallest admissible slope already has
// entropy above a.
double isentrope_s(const IsentropeQuery& q);
double isentrope_s(double a, double t);

using MapVariant = std::variant<SkewTentMap, PLUnimodalMap>;

struct SolveResult {
  MapVariant map;
  EntropyReport report;  // recomputed from the map, never copied from targets
  int iterations = 0;
};

// Mixing skew tent map with h_top = a and h_mu = b, for log2/2 < a <= log2
// and 0 < b <= a. Walks the isentrope: brackets t by geometric refinement
// toward 1 until h_mu drops below b, then bisects on the sign change of
// h_mu - b (no monotonicity in t assumed).
SolveResult solve_skew(double a, double b);

// Piecewise expanding unimodal map with h_top = a and h_mu = b, for
// 0 < a <= log2 and 0 < b <= a. Above log2/2 this is solve_skew; otherwise
// the skew solution at (2^n a, 2^n b) is pushed through n rectangular roots.
SolveResult solve_unimodal(double a, double b);

// Entropy-halving square root that stays piecewise expanding: conjugating
// copies of g are placed on [0, end] and [start, 1] with a transient linear
// middle piece; eps widens the left block to keep every slope above 1.
// Defaults to eps_max(g)/2.
PLUnimodalMap rect_root(const PLUnimodalMap& g, std::optional<double> eps = {});
PLUnimodalMap rect_root(const SkewTentMap& g, std::optional<double> eps = {});
double rect_root_eps_max(const PLUnimodalMap& g);
double rect_root_eps_max(const SkewTentMap& g);

// Twice-renormalizable skew tent map with h_top = log2 / 4: the left slope
// solves s^2 t^3 = s + t, so the second renormalization is a full family map
// with Lebesgue acip. Checks the entropy values and the slope bound.
struct PropositionReport {
  double t = 0.0;
  double s = 0.0;
  double h_top = 0.0;
  double h_mu = 0.0;         // exact: quarter of the Rohlin integral of the
                             // doubly renormalized map against Lebesgue
  double h_mu_direct = 0.0;  // same value recomputed from the acip of f
  double slope_max = 0.0;
  bool entropy_ok = false;
  bool slope_ok = false;
  bool h_mu_ok = false;
};
PropositionReport proposition_check(double t);

}  // namespace skewtent
