#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "dipolebound/tridiagonal.hpp"

using namespace dipolebound;

namespace {

oracle::Dense dense_of(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  oracle::Dense d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = t.diagonal[i];
    if (i + 1 < n) d[i][i + 1] = d[i + 1][i] = t.off_diagonal[i];
  }
  return d;
}

}  // namespace

TEST_SUITE("tridiagonal") {
  TEST_CASE("second-difference matrix has closed-form eigenvalues") {
    const std::size_t n = 50;
    SymmetricTridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
    for (std::size_t k = 0; k < n; ++k) {
      const double exact = 2.0 - 2.0 * std::cos(M_PI * (k + 1) / (n + 1));
      CHECK(kth_eigenvalue(t, k) == doctest::Approx(exact).epsilon(1e-11));
    }
    CHECK(count_below(t, 0.0) == 0);
    CHECK(count_below(t, 4.0) == n);
  }

  TEST_CASE("matches dense Jacobi on random matrices") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 3 + trial;
      SymmetricTridiagonal t;
      for (std::size_t i = 0; i < n; ++i) t.diagonal.push_back(u(rng));
      for (std::size_t i = 0; i + 1 < n; ++i) t.off_diagonal.push_back(trial % 4 == 0 && i == 1 ? 0.0 : u(rng));
      const auto ref = oracle::jacobi_eigenvalues(dense_of(t));
      const auto [lo, hi] = gershgorin_bounds(t);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(kth_eigenvalue(t, k) == doctest::Approx(ref[k]).epsilon(1e-9).scale(1.0));
        CHECK(ref[k] >= lo);
        CHECK(ref[k] <= hi);
        CHECK(count_below(t, ref[k] - 1e-6) == k);
      }
    }
  }

  TEST_CASE("pivot landing exactly on zero") {
    SymmetricTridiagonal t{{0.0, 0.0}, {1.0}};
    CHECK(count_below(t, 0.0) == 1);
    CHECK(kth_eigenvalue(t, 0) == doctest::Approx(-1.0));
    CHECK(kth_eigenvalue(t, 1) == doctest::Approx(1.0));
  }
}
