#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace dipolebound {

/// Real symmetric tridiagonal matrix. `off_diagonal[i]` couples rows i and
/// i + 1; storing it once makes the matrix equal to its transpose by
/// construction.
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
};

/// Number of eigenvalues strictly below x, from the signs of the pivots of
/// the LDL^T factorisation of T - x I (Sturm sequence).
std::size_t count_below(const SymmetricTridiagonal& t, double x);

/// Interval [lo, hi] containing every eigenvalue.
std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t);

/// k-th smallest eigenvalue (k = 0 is the lowest) by bisection on the Sturm
/// count. Stops once the bracket is below abs_tol or a few ulps of the
/// eigenvalue, whichever is larger.
double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t k, double abs_tol = 1e-12);

}  // namespace dipolebound
