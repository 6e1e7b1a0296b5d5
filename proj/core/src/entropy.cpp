#include "skewtent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "itinerary.hpp"
#include "skewtent/ulam.hpp"

namespace skewtent {

namespace {

constexpr int kWordCap = 10'000;        // kneading length cap for the determinant
constexpr double kDetTailTol = 1e-12;   // default certified tail
constexpr long long kLapCap = 2'000'000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int det_terms_for(double z, double tol) {
  // smallest N with z^{N+1}/(1-z) <= tol
  const double n = std::log(tol * (1.0 - z)) / std::log(z);
  if (!(n < kWordCap)) return kWordCap;
  return std::max(8, static_cast<int>(std::ceil(n)));
}

struct DetEval {
  double value = 0.0;
  double tail = 0.0;
  bool certified = false;
  int terms = 0;
};

// Sums theta_k z^k until the remainder either certifies the sign or drops
// below target_tail. theta_0 = 1, theta_k flips sign on every R.
DetEval det_eval(const KneadingWord& w, double z, int max_terms, double target_tail) {
  const std::size_t available =
      w.periodic() ? static_cast<std::size_t>(max_terms)
                   : std::min<std::size_t>(max_terms, w.prefix_len());
  double theta = 1.0;
  double power = 1.0;  // z^added after the update below
  double sum = 0.0;
  std::size_t added = 0;
  while (added < available) {
    sum += theta * power;
    if (w.at(added) == 'R') theta = -theta;
    power *= z;
    ++added;
    if ((added & 7u) == 0u) {
      const double rem = power / (1.0 - z);
      if (std::abs(sum) > 2.0 * rem) {
        return {sum, rem, true, static_cast<int>(added)};
      }
      if (rem <= target_tail) break;
    }
  }
  const double rem = power / (1.0 - z);
  return {sum, rem, std::abs(sum) > 2.0 * rem, static_cast<int>(added)};
}

template <class Map>
EntropyEstimate smallest_determinant_root(const Map& f) {
  // A short word already certifies every root away from z = 1 (the tail past
  // 1024 terms at z = 0.95 is below 1e-21); only entropies under ~0.05 need
  // the full-length word.
  for (const int len : {1024, kWordCap}) {
    const KneadingWord w = kneading_word(f, len);

    // Scan for the first certified sign change; near the root the truncated
    // value is too small to certify, so the bracket spans from the last
    // certified-positive point to the first certified-negative one.
    constexpr double kStep = 1e-3;
    double last_pos = 0.0;
    double first_neg = -1.0;
    for (double z = kStep; z < 0.9996; z += kStep) {
      const DetEval e = det_eval(w, z, len, kDetTailTol);
      if (e.certified && e.value > 0.0) {
        last_pos = z;
      } else if (e.certified && e.value < 0.0) {
        first_neg = z;
        break;
      }
    }
    if (first_neg < 0.0) {
      if (len == kWordCap) {
        throw NoRootInUnitInterval(
            "kneading determinant has no certified sign change");
      }
      continue;
    }

    // Bisect down to the evaluation noise floor; the truncation target is
    // pushed well below it so the raw sign stays meaningful almost all the
    // way in and the residual at the returned root is rounding-sized.
    double lo = last_pos, hi = first_neg;
    while (hi - lo > 4e-16 * hi) {
      const double mid = 0.5 * (lo + hi);
      const DetEval e = det_eval(w, mid, len, 1e-15);
      (e.value > 0.0 ? lo : hi) = mid;
    }
    EntropyEstimate est;
    est.z_root = 0.5 * (lo + hi);
    est.h = -std::log(est.z_root);
    if (est.z_root > 0.95 && len < kWordCap) continue;
    const DetEval at_root = det_eval(w, est.z_root, kWordCap, kDetTailTol);
    est.tail = at_root.tail;
    est.bracket = (hi - lo) + 1e-13;
    return est;
  }
  throw NoRootInUnitInterval("kneading determinant has no certified sign change");
}

}  // namespace

double metric_entropy(const SkewTentMap& f, const StepDensity& rho) {
  const double total = rho.mass();
  if (std::abs(total - 1.0) > 1e-9) {
    throw NotNormalized("density integrates to " + fmt(total));
  }
  return std::log(f.s) * integrate(rho, 0.0, f.c) +
         std::log(f.t) * integrate(rho, f.c, 1.0);
}

DeterminantValue kneading_determinant(const SkewTentMap& f, double z, int n_terms) {
  if (!(z > 0.0 && z < 1.0)) {
    throw DomainError("determinant evaluation needs z in (0,1)");
  }
  const int n = n_terms < 0 ? det_terms_for(z, kDetTailTol) : n_terms;
  const KneadingWord w = kneading_word(f, std::min(n + 1, kWordCap));
  double theta = 1.0, power = 1.0, sum = 0.0;
  const std::size_t limit =
      w.periodic() ? static_cast<std::size_t>(n) + 1
                   : std::min<std::size_t>(static_cast<std::size_t>(n) + 1,
                                           w.prefix_len());
  for (std::size_t k = 0; k < limit; ++k) {
    sum += theta * power;
    if (w.at(k) == 'R') theta = -theta;
    power *= z;
  }
  DeterminantValue out;
  out.value = sum;
  out.tail = power / (1.0 - z);
  out.terms = static_cast<int>(limit) - 1;
  return out;
}

EntropyEstimate topological_entropy_certified(const SkewTentMap& f) {
  return smallest_determinant_root(f);
}

EntropyEstimate topological_entropy_certified(const PLUnimodalMap& f) {
  return smallest_determinant_root(f);
}

double topological_entropy(const SkewTentMap& f) {
  return smallest_determinant_root(f).h;
}

double topological_entropy(const PLUnimodalMap& f) {
  return smallest_determinant_root(f).h;
}

namespace {

// Preimages of y under one monotone lap of a piecewise linear map.
// Returns true and writes x when y is in the lap's value range.
bool invert_lap(const PLUnimodalMap& f, bool left_lap, double y, double& x) {
  const auto turn = static_cast<std::size_t>(f.turn);
  if (left_lap) {
    if (y < f.values.front() || y > f.values[turn]) return false;
    std::size_t lo = 0, hi = turn;  // values increasing on [0, turn]
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (f.values[mid] <= y ? lo : hi) = mid;
    }
    x = f.breakpoints[lo] + (y - f.values[lo]) / f.slopes[lo];
    return true;
  }
  if (y < f.values.back() || y > f.values[turn]) return false;
  std::size_t lo = turn, hi = f.values.size() - 1;  // decreasing past turn
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (f.values[mid] >= y ? lo : hi) = mid;
  }
  x = f.breakpoints[lo] + (y - f.values[lo]) / f.slopes[lo];
  return true;
}

long long lap_count_impl(const PLUnimodalMap& f, int n) {
  if (n < 1) throw DomainError("lap_count needs n >= 1");
  std::vector<double> level{f.turn_point()};
  long long total = 1 + 1;  // one lap plus the turning point itself
  std::vector<double> next;
  for (int k = 1; k < n; ++k) {
    next.clear();
    next.reserve(level.size() * 2);
    for (double y : level) {
      double xl, xr;
      const bool has_l = invert_lap(f, true, y, xl);
      const bool has_r = invert_lap(f, false, y, xr);
      if (has_l) next.push_back(xl);
      if (has_r && (!has_l || std::abs(xr - xl) > 1e-15)) next.push_back(xr);
    }
    total += static_cast<long long>(next.size());
    if (total > kLapCap) {
      throw LapOverflow("lap count exceeds " + std::to_string(kLapCap) +
                        " at iterate " + std::to_string(k + 1));
    }
    level.swap(next);
  }
  return total;
}

}  // namespace

long long lap_count(const PLUnimodalMap& f, int n) { return lap_count_impl(f, n); }

long long lap_count(const SkewTentMap& f, int n) {
  return lap_count_impl(to_pl(f), n);
}

std::vector<double> identity_partial_sums(const SkewTentMap& f, int n) {
  if (n < 0) throw DomainError("identity_partial_sums needs N >= 0");
  const OrbitRecord orb = orbit_with_derivatives(f, 1.0, n, LimitSide::FromLeft);
  std::vector<double> sums(static_cast<std::size_t>(n) + 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    acc += 1.0 / orb.derivs[k];
    sums[k] = acc;
  }
  return sums;
}

double f_expansion_residual(const SkewTentMap& f, double x, int n) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x outside [0,1]");
  if (n < 0) throw DomainError("N must be >= 0");
  const LimitSide side =
      std::abs(x - 1.0) <= kTurnHitTol ? LimitSide::FromLeft : LimitSide::FromRight;
  const OrbitRecord orb = orbit_with_derivatives(f, x, n, side);
  double sum = 0.0;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    sum += 1.0 / orb.derivs[k];
  }
  double residual = std::abs(x - (1.0 - sum / f.t));
  if (x > f.c + kTurnHitTol) {
    residual = std::max(residual, std::abs(f(x) - sum));
  }
  return residual;
}

EntropyReport entropy_report(const SkewTentMap& f, double tol) {
  const EntropyEstimate top = topological_entropy_certified(f);
  const StepDensity rho = itn_density(f, tol);
  EntropyReport rep;
  rep.h_top = top.h;
  rep.h_mu = metric_entropy(f, rho);
  rep.h_top_method = "kneading-determinant";
  rep.h_mu_method = "rohlin-itn";
  rep.tail_bound = top.tail;
  rep.bracket = top.bracket;
  if (rep.h_mu > rep.h_top + 1e-9 || rep.h_top > std::log(2.0) + 1e-9 ||
      !(rep.h_mu > 0.0)) {
    throw Error("entropy report violates 0 < h_mu <= h_top <= log 2: h_top = " +
                fmt(rep.h_top) + ", h_mu = " + fmt(rep.h_mu));
  }
  return rep;
}

EntropyReport entropy_report(const PLUnimodalMap& f, int ulam_bins) {
  const EntropyEstimate top = topological_entropy_certified(f);
  EntropyReport rep;
  rep.h_top = top.h;
  rep.h_mu = metric_entropy_ulam(f, ulam_bins);
  rep.h_top_method = "kneading-determinant";
  rep.h_mu_method = "rohlin-ulam";
  rep.tail_bound = top.tail;
  rep.bracket = top.bracket;
  return rep;
}

}  // namespace skewtent
