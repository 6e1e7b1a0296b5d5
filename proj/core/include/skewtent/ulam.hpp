#pragma once

#include <vector>

#include "skewtent/acim.hpp"
#include "skewtent/maps.hpp"

namespace skewtent {

// Discretized transfer operator on m uniform bins: entry (i,j) is the
// fraction of bin j mapped into bin i, computed from the exact intersection
// lengths of the linear branches. Columns sum to 1.
struct UlamMatrix {
  int m = 0;
  // Compressed rows: entries[row_ptr[i] .. row_ptr[i+1]) are (col, weight).
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> weight;

  // v -> M v for a vector of bin masses.
  void apply(const std::vector<double>& v, std::vector<double>& out) const;
  std::vector<double> column_sums() const;
};

UlamMatrix build_matrix(const PLUnimodalMap& f, int m);
UlamMatrix build_matrix(const SkewTentMap& f, int m);

// Stationary bin masses by damped power iteration from the uniform vector,
// rescaled to total mass 1 and wrapped on the uniform grid. The damping
// (averaging with the identity) removes the period-2 block structure that
// square-root-type maps produce. Throws NoConvergence after 1e5 rounds.
StepDensity stationary_density(const UlamMatrix& mat, double tol = 1e-10);

// Rohlin integral of log|f'| against the Ulam stationary density, with the
// log factored exactly per linear piece.
double metric_entropy_ulam(const PLUnimodalMap& f, int m);
double metric_entropy_ulam(const SkewTentMap& f, int m);

}  // namespace skewtent
