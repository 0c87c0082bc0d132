#include <doctest.h>

#include <cmath>

#include "dipolebound/error.hpp"
#include "dipolebound/spectral_oracle.hpp"

using namespace dipolebound;

TEST_SUITE("spectral_oracle") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS((GridSpec{0.0, 10.0, 500, Spacing::Uniform}.validate()), ConfigError);
    CHECK_THROWS_AS((GridSpec{1.0, 0.5, 500, Spacing::Uniform}.validate()), ConfigError);
    CHECK_THROWS_AS((GridSpec{1e-3, 10.0, 50, Spacing::Logarithmic}.validate()), ConfigError);
    CHECK_THROWS_AS((discretize(PotentialSpec::coulomb(1, 0), GridSpec{-1.0, 10.0, 500, Spacing::Uniform})),
                    ConfigError);
  }

  TEST_CASE("grid centres are ordered and inside the box") {
    for (auto spacing : {Spacing::Uniform, Spacing::Logarithmic}) {
      const GridSpec g{1e-3, 20.0, 300, spacing};
      const auto c = grid_centers(g);
      REQUIRE(c.size() == 300);
      CHECK(c.front() > g.rho_min);
      CHECK(c.back() < g.rho_max);
      for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
    }
  }

  TEST_CASE("Coulomb levels") {
    const auto ground = coulomb_benchmark(1.0, 0, 0, coulomb_grid(4000));
    CHECK(ground.analytic == -1.0);
    CHECK(ground.rel_error <= 1e-3);
    CHECK(coulomb_benchmark(1.0, 1, 0, coulomb_grid(4000)).numeric == doctest::Approx(-1.0 / 9.0).epsilon(1e-3));
    CHECK(coulomb_benchmark(1.0, 0, 1, coulomb_grid(4000)).numeric == doctest::Approx(-1.0 / 9.0).epsilon(1e-3));
    CHECK(coulomb_benchmark(2.0, 0, 0, coulomb_grid(4000)).numeric == doctest::Approx(-4.0).epsilon(1e-3));
  }

  TEST_CASE("Coulomb error falls at second order under refinement") {
    const double e1 = coulomb_benchmark(1.0, 0, 0, coulomb_grid(1000)).rel_error;
    const double e2 = coulomb_benchmark(1.0, 0, 0, coulomb_grid(2000)).rel_error;
    const double e4 = coulomb_benchmark(1.0, 0, 0, coulomb_grid(4000)).rel_error;
    CHECK(e2 < e1);
    CHECK(e4 < e2);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e2 / e4 == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("non-negative potentials give no negative eigenvalues") {
    for (double g : {0.5, 5.0}) {
      for (int m : {0, 3}) {
        for (const auto& spec : {PotentialSpec::far_field(g, m), PotentialSpec::full_ring(g, m, 0.1)}) {
          const auto p = discretize(spec, GridSpec{});
          for (double v : p.potential) CHECK(v >= 0.0);
          CHECK(count_negative_eigenvalues(p, kDefaultThreshold) == 0);
          CHECK(lowest_eigenvalue(p) > 0.0);
        }
      }
    }
  }

  TEST_CASE("perfect-square residual") {
    for (double g : {0.5, 1.0, 2.0, 5.0})
      for (int m = 0; m <= 3; ++m) CHECK(perfect_square_residual(couplings_from_field(g, m), GridSpec{}) <= 1e-12);
    CHECK_THROWS_AS(perfect_square_residual(Couplings::free_form(2, 0, 1), GridSpec{}), ContractError);
  }

  TEST_CASE("shooting roots coincide with Sturm eigenvalues") {
    const auto problem = discretize(PotentialSpec::coulomb(1.0, 1), GridSpec{1e-6, 80.0, 3000, Spacing::Uniform});
    const auto roots = shooting_roots(problem, -0.5, -0.03, 300);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(eigenvalue(problem, 0)).epsilon(1e-9));
    CHECK(roots[1] == doctest::Approx(eigenvalue(problem, 1)).epsilon(1e-9));
    CHECK(shoot(problem, -0.6) > 0.0);
  }

  TEST_CASE("shooting finds nothing for the physical dipole") {
    const auto problem = discretize(PotentialSpec::full_ring(2.0, 1, 0.1), GridSpec{});
    for (const auto& s : mismatch_curve(problem, -5.0, -1e-4, 100)) CHECK(s.mismatch > 0.0);
    CHECK(shooting_roots(problem, -5.0, -1e-4, 100).empty());
  }

  TEST_CASE("shooting rejects non-negative energies") {
    CHECK_THROWS_AS(shoot(PotentialSpec::coulomb(1, 0), coulomb_grid(1000), 0.0), DomainError);
    CHECK_THROWS_AS(shoot(PotentialSpec::coulomb(1, 0), coulomb_grid(1000), 0.5), DomainError);
  }

  TEST_CASE("cutoff scan converges for Coulomb") {
    const auto report = cutoff_convergence_scan(PotentialSpec::coulomb(1.0, 0), coulomb_grid(4000),
                                                {1e-8, 1e-9, 1e-10, 1e-11});
    REQUIRE(report.trace.size() == 4);
    CHECK(report.converged);
    CHECK(report.trace.back().lowest == doctest::Approx(-1.0).epsilon(1e-3));
  }

  TEST_CASE("cutoff scan diverges for the eta-only model") {
    const auto report =
        cutoff_convergence_scan(PotentialSpec::eta_only(2.0, 1), GridSpec{}, eta_only_cutoffs());
    CHECK_FALSE(report.converged);
    for (std::size_t i = 1; i < report.trace.size(); ++i) {
      CHECK(report.trace[i].lowest < report.trace[i - 1].lowest);
      CHECK(report.trace[i].negative_count >= report.trace[i - 1].negative_count);
    }
  }

  TEST_CASE("cutoff scan contract") {
    const auto spec = PotentialSpec::coulomb(1.0, 0);
    CHECK_THROWS_AS(cutoff_convergence_scan(spec, GridSpec{}, {1e-1, 1e-2, 1e-3}), ContractError);
    CHECK_THROWS_AS(cutoff_convergence_scan(spec, GridSpec{}, {1e-1, 1e-3, 1e-2, 1e-4}), ContractError);
    CHECK_THROWS_AS(cutoff_convergence_scan(spec, GridSpec{}, {1e-1, 1e-2, 1e-3, 0.0}), ContractError);
  }

  TEST_CASE("eigen scan summary") {
    const auto r = eigen_scan(PotentialSpec::coulomb(1.0, 0), coulomb_grid(2000), {}, 3);
    CHECK(r.negative_count > 3);
    REQUIRE(r.lowest_eigenvalues.size() == 3);
    CHECK(r.lowest_eigenvalues[0] < r.lowest_eigenvalues[1]);
    CHECK(r.lowest_eigenvalues[1] == doctest::Approx(-1.0 / 9.0).epsilon(1e-3));
    CHECK_FALSE(r.converged);
    CHECK(r.cutoff_trace.empty());
  }

  TEST_CASE("physical dipole sweep is ordered and deterministic") {
    SweepConfig config;
    config.g_values = {2.0, 0.5};
    config.m_values = {1, 0};
    config.grid.n_points = 400;
    const auto a = physical_dipole_sweep(config);
    const auto b = physical_dipole_sweep(config);
    REQUIRE(a.size() == 2 * 2 * 2 * 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].lowest_e == b[i].lowest_e);
      CHECK(a[i].negative_count == 0);
    }
    CHECK(a.front().g == 0.5);
    CHECK(a.front().m_q == 0);
    CHECK(a.front().rho_min == 1e-1);
    CHECK(a[1].rho_min == 1e-2);
  }

  TEST_CASE("potential evaluation") {
    CHECK(PotentialSpec::coulomb(2.0, 1)(0.5) == doctest::Approx(4.0 - 4.0));
    CHECK(PotentialSpec::eta_only(2.0, 1)(0.5) == doctest::Approx(4.0 - 16.0));
    CHECK(PotentialSpec::far_field(1.0, 1)(1.0) == doctest::Approx(0.0));
    CHECK(PotentialSpec::far_field(1.5, 1).coupling_g() == 1.5);
    CHECK(PotentialSpec::coulomb(1.0, 0).coupling_g() == 0.0);
  }
}
