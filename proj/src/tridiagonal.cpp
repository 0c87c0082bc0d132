#include "dipolebound/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dipolebound/error.hpp"

namespace dipolebound {

std::size_t count_below(const SymmetricTridiagonal& t, double x) {
  const std::size_t n = t.size();
  if (n == 0) return 0;
  // Replacing an exact zero pivot by -pivmin keeps the recurrence finite and
  // counts an eigenvalue sitting exactly at x as lying below it.
  const double pivmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double d = t.diagonal[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double e = t.off_diagonal[i - 1];
    d = (t.diagonal[i] - x) - (e * e) / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  if (n == 0) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - radius);
    hi = std::max(hi, t.diagonal[i] + radius);
  }
  const double pad = std::numeric_limits<double>::epsilon() * std::max({std::abs(lo), std::abs(hi), 1.0}) * n;
  return {lo - pad, hi + pad};
}

double kth_eigenvalue(const SymmetricTridiagonal& t, std::size_t k, double abs_tol) {
  if (k >= t.size())
    throw DomainError(fmt::format("eigenvalue index {} out of range for size {}", k, t.size()));
  auto [lo, hi] = gershgorin_bounds(t);
  // Invariant: count_below(lo) <= k < count_below(hi).
  const double eps = std::numeric_limits<double>::epsilon();
  while (true) {
    const double mid = 0.5 * (lo + hi);
    const double width = hi - lo;
    if (width <= std::max(abs_tol, 4.0 * eps * std::max(std::abs(lo), std::abs(hi))) || mid <= lo ||
        mid >= hi)
      return mid;
    if (count_below(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
}

}  // namespace dipolebound
