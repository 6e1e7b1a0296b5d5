#include "skewtent/ulam.hpp"

#include <algorithm>
#include <cmath>

#include "itinerary.hpp"

namespace skewtent {

namespace {

constexpr int kMaxPowerIterations = 100'000;

// Preimage of [ylo, yhi] under one monotone lap, clamped to the lap's value
// range. Returns false when the ranges do not meet.
bool lap_preimage(const PLUnimodalMap& f, bool left_lap, double ylo, double yhi,
                  double& a, double& b) {
  const auto turn = static_cast<std::size_t>(f.turn);
  const auto invert = [&](std::size_t lo, std::size_t hi, bool increasing,
                          double y) {
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      const bool go_low = increasing ? f.values[mid] <= y : f.values[mid] >= y;
      (go_low ? lo : hi) = mid;
    }
    return f.breakpoints[lo] + (y - f.values[lo]) / f.slopes[lo];
  };
  if (left_lap) {
    const double vmin = f.values.front(), vmax = f.values[turn];
    const double u = std::max(ylo, vmin), v = std::min(yhi, vmax);
    if (!(v > u)) return false;
    a = invert(0, turn, true, u);
    b = invert(0, turn, true, v);
  } else {
    const double vmin = f.values.back(), vmax = f.values[turn];
    const double u = std::max(ylo, vmin), v = std::min(yhi, vmax);
    if (!(v > u)) return false;
    a = invert(turn, f.values.size() - 1, false, v);
    b = invert(turn, f.values.size() - 1, false, u);
  }
  if (b < a) std::swap(a, b);
  a = detail::clamp01(a);
  b = detail::clamp01(b);
  return b > a;
}

}  // namespace

void UlamMatrix::apply(const std::vector<double>& v, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int k = row_ptr[static_cast<std::size_t>(i)];
         k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      acc += weight[static_cast<std::size_t>(k)] *
             v[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
}

std::vector<double> UlamMatrix::column_sums() const {
  std::vector<double> sums(static_cast<std::size_t>(m), 0.0);
  for (std::size_t k = 0; k < weight.size(); ++k) {
    sums[static_cast<std::size_t>(col[k])] += weight[k];
  }
  return sums;
}

UlamMatrix build_matrix(const PLUnimodalMap& f, int m) {
  if (m < 2) throw DomainError("ulam matrix needs m >= 2");
  UlamMatrix mat;
  mat.m = m;
  mat.row_ptr.reserve(static_cast<std::size_t>(m) + 1);
  mat.row_ptr.push_back(0);
  const double dm = static_cast<double>(m);
  for (int i = 0; i < m; ++i) {
    const double ylo = i / dm;
    const double yhi = (i + 1) / dm;
    for (bool left_lap : {true, false}) {
      double a, b;
      if (!lap_preimage(f, left_lap, ylo, yhi, a, b)) continue;
      const int j0 = std::clamp(static_cast<int>(a * dm), 0, m - 1);
      const int j1 = std::clamp(static_cast<int>(b * dm), 0, m - 1);
      for (int j = j0; j <= j1; ++j) {
        const double overlap = std::min(b, (j + 1) / dm) - std::max(a, j / dm);
        if (overlap <= 0.0) continue;
        mat.col.push_back(j);
        mat.weight.push_back(overlap * dm);
      }
    }
    mat.row_ptr.push_back(static_cast<int>(mat.col.size()));
  }
  return mat;
}

UlamMatrix build_matrix(const SkewTentMap& f, int m) {
  return build_matrix(to_pl(f), m);
}

StepDensity stationary_density(const UlamMatrix& mat, double tol) {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const auto m = static_cast<std::size_t>(mat.m);
  std::vector<double> v(m, 1.0 / static_cast<double>(m));
  std::vector<double> mv;
  for (int it = 0; it < kMaxPowerIterations; ++it) {
    mat.apply(v, mv);
    double delta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double next = 0.5 * (v[i] + mv[i]);
      delta += std::abs(next - v[i]);
      v[i] = next;
    }
    if (delta <= 0.5 * tol) {
      double total = 0.0;
      for (double x : v) total += x;
      for (double& x : v) x /= total;
      return step_density_from_masses(v);
    }
  }
  throw NoConvergence("power iteration did not settle in " +
                      std::to_string(kMaxPowerIterations) + " rounds");
}

double metric_entropy_ulam(const PLUnimodalMap& f, int m) {
  if (m < 64) throw DomainError("metric_entropy_ulam needs m >= 64");
  const StepDensity rho = stationary_density(build_matrix(f, m));
  double h = 0.0;
  for (std::size_t seg = 0; seg + 1 < f.breakpoints.size(); ++seg) {
    h += std::log(std::abs(f.slopes[seg])) *
         integrate(rho, f.breakpoints[seg], f.breakpoints[seg + 1]);
  }
  return h;
}

double metric_entropy_ulam(const SkewTentMap& f, int m) {
  if (m < 64) throw DomainError("metric_entropy_ulam needs m >= 64");
  const StepDensity rho = stationary_density(build_matrix(f, m));
  return std::log(f.s) * integrate(rho, 0.0, f.c) +
         std::log(f.t) * integrate(rho, f.c, 1.0);
}

}  // namespace skewtent
