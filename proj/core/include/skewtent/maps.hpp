#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skewtent/errors.hpp"

namespace skewtent {

// An orbit point counts as an exact hit of the turning point when it is this
// close. Hits only arise for algebraically constructed maps, where they are
// exact up to rounding.
inline constexpr double kTurnHitTol = 1e-13;

// An orbit closes exactly when a later (point, derivative sign) state matches
// an earlier one this closely.
inline constexpr double kOrbitCloseTol = 1e-13;

// Which one-sided limit resolves the branch choice on an exact turning hit.
// FromRight is the convention for orbits started at 0, FromLeft the one for
// itineraries of the critical value.
enum class LimitSide { FromRight, FromLeft };

// Skew tent map on [0,1] normalized so that f(c) = 1 and f(1) = 0.
// The left branch has slope s, the right branch slope -t, both s,t > 1.
// Self-map condition: 1/s + 1/t >= 1.
struct SkewTentMap {
  double s = 2.0;
  double t = 2.0;
  double c = 0.5;            // turning point, (t-1)/t
  double xstar = 2.0 / 3.0;  // positive fixed point, t/(t+1)

  // f(x); throws DomainError outside [0,1].
  double operator()(double x) const;

  // Image of the left endpoint, 1 - s(t-1)/t. Zero exactly on the
  // full-family boundary 1/s + 1/t = 1.
  double f0() const { return 1.0 - s * c; }
};

// Validates the slopes and derives c and the fixed point.
// Throws SlopeOutOfRange if s <= 1 or t <= 1, NotSelfMap if 1/s + 1/t < 1.
SkewTentMap make_skew_tent(double s, double t);

// Largest left slope that still gives a self-map for this t, i.e. t/(t-1)
// nudged down until the constructed map validates in floating point.
double max_left_slope(double t);

struct Classification {
  bool in_Y = true;
  bool mixing = false;
  // st^2 - s - t vanishes (within rounding): f(0) sits on the fixed point.
  bool boundary = false;
  // m of the kneading prefix R L R^m L, present for mixing maps.
  std::optional<int> class_n;
};

Classification classify(const SkewTentMap& f);

// Orbit of x0 together with the signed derivatives (f^k)'(x0).
// derivs[0] = 1 and |derivs[k+1]| = |derivs[k]| * (s or t) per symbols[k].
struct OrbitRecord {
  std::vector<double> points;   // x0, f(x0), ..., f^N(x0)
  std::vector<double> derivs;   // signed products of branch slopes
  std::string symbols;          // 'L'/'R' branch taken at each step
  std::optional<int> hit_turning_at;  // first k with f^k(x0) = c
};

// On an exact turning hit the branch follows the orientation rule: the
// displaced point of the one-sided limit lies on side (+/-)sign(deriv) of c
// depending on `side`, which selects slope -t (right) or s (left).
OrbitRecord orbit_with_derivatives(const SkewTentMap& f, double x0, int n,
                                   LimitSide side = LimitSide::FromRight);

// Itinerary of the critical value. Symbols are L/R only; exact turning hits
// are resolved by the same orientation rule as orbit_with_derivatives, under
// the left-limit convention at 1.
struct KneadingSequence {
  std::string word;
  std::optional<int> periodic;  // cycle length when the orbit of 1 closes
  int preperiod = 0;            // start of the cycle, meaningful with periodic
  std::optional<int> class_m;   // m of the prefix R L R^m L
};

KneadingSequence kneading(const SkewTentMap& f, int n);

// Kneading word keyed by index, with the exact cycle attached when the orbit
// of the critical value closes. Indices past the computed prefix are valid
// only when a cycle was found.
struct KneadingWord {
  std::string prefix;
  std::string cycle;

  bool periodic() const { return !cycle.empty(); }
  char at(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }
  std::size_t prefix_len() const { return prefix.size(); }
};

// General continuous piecewise linear unimodal self-map of [0,1].
// Values rise strictly to a unique maximum and then fall strictly; every
// segment slope has magnitude > 1.
struct PLUnimodalMap {
  std::vector<double> breakpoints;  // 0 = b0 < ... < bk = 1
  std::vector<double> values;       // one ordinate per breakpoint, in [0,1]
  std::vector<double> slopes;       // per segment, derived
  int turn = 0;                     // index of the maximum

  double operator()(double x) const;
  double turn_point() const { return breakpoints[static_cast<std::size_t>(turn)]; }
  double critical_value() const { return values[static_cast<std::size_t>(turn)]; }
  double min_abs_slope() const;
  int segment_count() const { return static_cast<int>(breakpoints.size()) - 1; }
};

PLUnimodalMap make_pl_unimodal(std::vector<double> breakpoints,
                               std::vector<double> values);

// Three-node piecewise linear form of a skew tent map.
PLUnimodalMap to_pl(const SkewTentMap& f);

KneadingWord kneading_word(const SkewTentMap& f, int max_len);
KneadingWord kneading_word(const PLUnimodalMap& f, int max_len);

// Slope pair (t^2, s*t): linearly conjugate to f^2 on its invariant interval.
// Requires st^2 - s - t <= 0 (boundary included); throws NotRenormalizable
// for mixing maps.
SkewTentMap renormalize(const SkewTentMap& f);

// The skew tent map with f(0) = a whose critical orbit is periodic with
// period 2n+3 and itinerary R L R^{2n} C: t solves (t - a(t+1)) t^{2n+1} = 1
// and s = t(1-a)/(t-1). The result is verified by direct iteration.
SkewTentMap stefan_map(double a, int n);

}  // namespace skewtent
