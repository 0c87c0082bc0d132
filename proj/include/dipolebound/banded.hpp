#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "dipolebound/error.hpp"

namespace dipolebound {

/// Square banded matrix with `lower` sub-diagonals and `upper`
/// super-diagonals, stored row-wise.
template <typename T>
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
      : n_(n), lower_(lower), upper_(upper), data_(n * (lower + upper + 1), T{0}) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  /// Entries outside the band read as zero.
  T at(std::size_t row, std::size_t col) const {
    if (col + lower_ < row || col > row + upper_) return T{0};
    return data_[row * width() + (col + lower_ - row)];
  }

  void set(std::size_t row, std::size_t col, T value) {
    if (row >= n_ || col >= n_ || col + lower_ < row || col > row + upper_)
      throw ContractError(fmt::format("banded entry ({}, {}) outside the band", row, col));
    data_[row * width() + (col + lower_ - row)] = value;
  }

  std::vector<T> multiply(const std::vector<T>& x) const {
    std::vector<T> y(n_, T{0});
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t first = i > lower_ ? i - lower_ : 0;
      const std::size_t last = std::min(n_ - 1, i + upper_);
      for (std::size_t j = first; j <= last; ++j) y[i] += at(i, j) * x[j];
    }
    return y;
  }

 private:
  std::size_t width() const noexcept { return lower_ + upper_ + 1; }

  std::size_t n_, lower_, upper_;
  std::vector<T> data_;
};

namespace detail {

// A working row covering columns [start, start + width). At elimination
// step k every candidate row has its nonzeros in [k, k + lower + upper], so
// the rows taking part in a step are rebased to start at k.
template <typename T>
struct WorkRow {
  std::ptrdiff_t start = 0;
  std::vector<T> v;

  T get(std::ptrdiff_t col) const {
    const auto k = col - start;
    return k >= 0 && k < static_cast<std::ptrdiff_t>(v.size()) ? v[k] : T{0};
  }
  T& ref(std::ptrdiff_t col) { return v[col - start]; }

  void rebase(std::ptrdiff_t new_start) {
    if (new_start == start) return;
    std::vector<T> w(v.size(), T{0});
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = get(new_start + static_cast<std::ptrdiff_t>(k));
    v = std::move(w);
    start = new_start;
  }
};

}  // namespace detail

/// Gaussian elimination with partial pivoting restricted to the band
/// (fill-in up to lower + upper super-diagonals). Throws ClosureError when a
/// pivot is zero relative to the matrix scale.
template <typename T>
std::vector<T> solve_banded(const BandedMatrix<T>& a, std::vector<T> rhs) {
  using std::abs;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const auto kl = static_cast<std::ptrdiff_t>(a.lower());
  const auto ku = static_cast<std::ptrdiff_t>(a.upper());
  if (static_cast<std::ptrdiff_t>(rhs.size()) != n)
    throw ContractError("right-hand side length does not match the matrix");

  T scale{0};
  std::vector<detail::WorkRow<T>> rows(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rows[i].start = i - kl;
    rows[i].v.assign(2 * kl + ku + 1, T{0});
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
      rows[i].ref(j) = a.at(i, j);
      scale = std::max(scale, abs(a.at(i, j)));
    }
  }
  const T tiny = scale * static_cast<T>(n) * std::numeric_limits<T>::epsilon();

  for (std::ptrdiff_t k = 0; k < n; ++k) {
    for (std::ptrdiff_t i = k; i <= std::min(n - 1, k + kl); ++i) rows[i].rebase(k);
    std::ptrdiff_t pivot = k;
    for (std::ptrdiff_t i = k + 1; i <= std::min(n - 1, k + kl); ++i) {
      if (abs(rows[i].get(k)) > abs(rows[pivot].get(k))) pivot = i;
    }
    if (!(abs(rows[pivot].get(k)) > tiny))
      throw ClosureError(fmt::format("singular banded system at column {}", k));
    if (pivot != k) {
      std::swap(rows[pivot], rows[k]);
      std::swap(rhs[pivot], rhs[k]);
    }
    const T diag = rows[k].get(k);
    const std::ptrdiff_t last_col = std::min(n - 1, k + kl + ku);
    for (std::ptrdiff_t i = k + 1; i <= std::min(n - 1, k + kl); ++i) {
      const T f = rows[i].get(k) / diag;
      if (f == T{0}) continue;
      for (std::ptrdiff_t j = k; j <= last_col; ++j) rows[i].ref(j) -= f * rows[k].get(j);
      rhs[i] -= f * rhs[k];
    }
  }

  std::vector<T> x(n, T{0});
  for (std::ptrdiff_t i = n - 1; i >= 0; --i) {
    T sum = rhs[i];
    for (std::ptrdiff_t j = i + 1; j <= std::min(n - 1, i + kl + ku); ++j) sum -= rows[i].get(j) * x[j];
    x[i] = sum / rows[i].get(i);
  }
  return x;
}

}  // namespace dipolebound
