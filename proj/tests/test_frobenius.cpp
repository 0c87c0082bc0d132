#include <doctest.h>

#include <cmath>
#include <vector>

#include "dipolebound/error.hpp"
#include "dipolebound/frobenius.hpp"

using namespace dipolebound;

namespace {

SeriesParams params(double s, int m, double beta, double eta, double sigma, int nu_max) {
  SeriesParams p;
  p.s = s;
  p.m_q = m;
  p.beta = beta;
  p.eta = eta;
  p.sigma = sigma;
  p.nu_max = nu_max;
  return p;
}

}  // namespace

TEST_SUITE("frobenius") {
  TEST_CASE("q and p") {
    CHECK(qp(0, 0, 1).q == 3);
    CHECK(qp(0, 0, 1).p == 3);
    CHECK(qp(0, 1, 1).q == 8);
    CHECK(qp(0, 1, 1).p == 5);
    CHECK(qp(-2, 0, 1).q == -1);
    CHECK(qp(-2, 0, 1).p == -1);
    CHECK(qp(0, 2, -3).q == qp(0, 2, 3).q);
  }

  TEST_CASE("indicial roots") {
    CHECK(indicial_candidates(0) == std::array<double, 2>{0, 0});
    CHECK(indicial_candidates(1) == std::array<double, 2>{0, -2});
    CHECK(indicial_candidates(3) == std::array<double, 2>{0, -6});
    for (int m = 0; m <= 4; ++m)
      for (double s : indicial_candidates(m)) CHECK(s * (s + 2 * m) == 0);
  }

  TEST_CASE("case-C chain golden values") {
    const auto sol = generate_coefficients(params(0, 1, 1, 1, 0, 10), Closure::CaseCForward);
    CHECK(static_cast<double>(sol.coefficients[1]) == doctest::Approx(24.0 / 29.0).epsilon(1e-15));

    const auto c = terminate_case_c(0, 1, 0, 1, 1, 1);
    CHECK(c.b_next == doctest::Approx(24.0 / 29.0).epsilon(1e-15));
    CHECK(c.b_next2 == doctest::Approx(15.0 / 29.0).epsilon(1e-15));
    CHECK_FALSE(c.verdict.required_beta);
    CHECK_FALSE(c.verdict.bound_state_possible);
    CHECK(c.verdict.explanation == "beta undetermined by case C");
  }

  TEST_CASE("case-C chain for general beta solves its own 2x2 system") {
    // q_nu b1 - beta p_nu b0 + eta b2 = 0 and q_{nu+1} b2 = beta p_{nu+1} b1.
    for (double beta : {0.1, 0.7, 2.5}) {
      for (int nu : {0, 3}) {
        const auto c = terminate_case_c(0, 2, nu, 1.3, beta, 0.8);
        const auto here = qp(0, nu, 2);
        const auto next = qp(0, nu + 1, 2);
        CHECK(here.q * c.b_next - beta * here.p * 0.8 + 1.3 * c.b_next2 == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(next.q * c.b_next2 == doctest::Approx(beta * next.p * c.b_next));
      }
    }
  }

  TEST_CASE("beta = 0 terminates immediately") {
    const auto sol = generate_coefficients(params(0, 1, 0, 3, 0, 40), Closure::CaseCForward);
    for (std::size_t i = 1; i < sol.coefficients.size(); ++i) CHECK(sol.coefficients[i] == 0);
    CHECK(sol.growth == Growth::Terminating);
    const auto c = terminate_case_c(0, 1, 0, 1, 0, 1);
    CHECK(c.b_next == 0);
    CHECK(c.b_next2 == 0);
  }

  TEST_CASE("eta = 0 reduces to the two-term recurrence") {
    const auto sol = generate_coefficients(params(0, 1, 1, 0, 0, 30), Closure::CaseCForward);
    CHECK(sol.coefficients[1] == 1);
    for (int nu = 0; nu < 30; ++nu) {
      const auto c = qp(0, nu, 1);
      CHECK(static_cast<double>(sol.coefficients[nu + 1] / sol.coefficients[nu]) ==
            doctest::Approx(c.p / c.q).epsilon(1e-15));
    }
  }

  TEST_CASE("residuals cover orders -3 .. nu_max-1") {
    const auto sol = generate_coefficients(params(0, 1, 1, 1, 0, 12), Closure::TruncatedLinearSystem);
    REQUIRE(sol.residuals.size() == 15);
    CHECK(sol.residuals.front().order == -3);
    CHECK(sol.residuals.back().order == 11);
    // The eta b_0 term at order -2 has no partner.
    CHECK(static_cast<double>(sol.residuals[1].value) == doctest::Approx(1.0));
  }

  TEST_CASE("truncated system satisfies every interior order") {
    for (double sigma : {0.0, -1.0, -4.0}) {
      for (int m = 0; m <= 3; ++m) {
        const auto sol = generate_coefficients(params(0, m, 0.8, 2.0 * m + 0.5, sigma, 60),
                                               Closure::TruncatedLinearSystem);
        CHECK(sol.max_interior_residual() <= 1e-10L * sol.max_abs_coefficient());
      }
    }
  }

  TEST_CASE("closures agree when the truncation tail is negligible") {
    const int nu_max = 80;
    for (int m = 0; m <= 2; ++m) {
      const auto p = params(0, m, 1e-5, 1.0, 0.0, nu_max);
      const auto c = generate_coefficients(p, Closure::CaseCForward);
      const auto t = generate_coefficients(p, Closure::TruncatedLinearSystem);
      for (int nu = 1; nu <= nu_max / 2; ++nu) {
        const auto rel = std::abs(c.coefficients[nu] - t.coefficients[nu]) / std::abs(t.coefficients[nu]);
        CHECK(static_cast<double>(rel) <= 1e-8);
      }
    }
  }

  TEST_CASE("growth law") {
    const auto sol = generate_coefficients(params(0, 1, 1, 1, 0, 200), Closure::CaseCForward);
    CHECK(sol.growth == Growth::ExpGrowth2Beta);
    const auto& b = sol.coefficients;
    for (int nu = 150; nu < 200; ++nu) {
      const double expected = 2.0 / (nu + 1);
      CHECK(static_cast<double>(b[nu + 1] / b[nu]) == doctest::Approx(expected).epsilon(0.05));
    }
  }

  TEST_CASE("tail ratio error shrinks like 1/nu^2") {
    const auto sol = generate_coefficients(params(0, 1, 1, 1, 0, 201), Closure::CaseCForward);
    const auto err = [&](int nu) {
      return std::abs(static_cast<double>(sol.coefficients[nu + 1] / sol.coefficients[nu]) - 2.0 / (nu + 1));
    };
    const double e100 = err(100);
    const double e200 = err(200);
    CHECK(e100 * 100 * 100 < 10.0);
    CHECK(e200 * 200 * 200 < 10.0);
    CHECK(e200 / e100 == doctest::Approx(0.25).epsilon(0.1));
  }

  TEST_CASE("growth classification edge cases") {
    CHECK(growth_classification(std::vector<long double>(40, 1.0L), 1.0) == Growth::Indeterminate);
    CHECK(growth_classification(std::vector<long double>(10, 0.0L), 1.0) == Growth::Indeterminate);
    std::vector<long double> b(40, 0.0L);
    b[0] = 1;
    b[1] = 0.5;
    CHECK(growth_classification(b, 1.0) == Growth::Terminating);
  }

  TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(generate_coefficients(params(0, 1, 1, 1, 0, 3), Closure::CaseCForward), DomainError);
    CHECK_THROWS_AS(generate_coefficients(params(0, 1, -1, 1, 0, 10), Closure::CaseCForward), DomainError);
    CHECK_THROWS_AS(generate_coefficients(params(0, 1, 1, 1, -1, 10), Closure::CaseCForward), DomainError);
    CHECK_THROWS_AS(generate_coefficients(params(0, 1, 1, 1, 0, 10), Closure::CaseCForward, 0.0), DomainError);
  }

  TEST_CASE("vanishing denominator carries the order") {
    // s = -2, m = 0: q_1 = (s+2)(s+2) = 0.
    try {
      generate_coefficients(params(-2, 0, 1, 1, 0, 10), Closure::CaseCForward);
      FAIL("expected SingularOrderError");
    } catch (const SingularOrderError& e) {
      CHECK(e.order() == 0);
    }
  }

  TEST_CASE("case A") {
    for (int m = 0; m <= 3; ++m) {
      for (int nu = 0; nu <= 10; ++nu) {
        const auto v = terminate_case_a(0, m, nu, 1.0);
        REQUIRE(v.required_beta);
        CHECK(*v.required_beta == 0.0);
        CHECK_FALSE(v.bound_state_possible);
      }
    }
    const auto free = terminate_case_a(-0.5, 0, 0, 1.0);
    CHECK_FALSE(free.required_beta);
    CHECK(free.flagged);
  }

  TEST_CASE("case B") {
    CHECK(*terminate_case_b(0, 1, 0, 1).required_beta == doctest::Approx(-4.8));
    CHECK(*terminate_case_b(0, 0, 0, 2).required_beta == doctest::Approx(-2.0 / 3.0));
    const auto flipped = terminate_case_b(0, 1, 0, -1);
    CHECK(*flipped.required_beta == doctest::Approx(4.8));
    CHECK(flipped.bound_state_possible);
    CHECK(flipped.flagged);
    CHECK_THROWS_AS(terminate_case_b(0, 1, 0, 0), NoSolutionError);
    // p_1 = 2s + 3 vanishes at s = -1.5 for m = 0.
    CHECK_THROWS_AS(terminate_case_b(-1.5, 0, 0, 1), NoSolutionError);
  }

  TEST_CASE("case B sign over a grid") {
    for (double s : {0.0, 0.5, 2.0})
      for (int m = 0; m <= 3; ++m)
        for (int nu = 0; nu <= 10; ++nu)
          for (double eta : {0.5, 1.0, 2.0, 5.0}) CHECK(*terminate_case_b(s, m, nu, eta).required_beta <= 0.0);
  }

  TEST_CASE("no-bound-state reports") {
    TerminationScan scan;
    const auto physical = no_bound_state_report(1, 2.0, scan);
    CHECK_FALSE(physical.bound_state_possible);
    CHECK(physical.entries.size() == 33);

    const auto free = no_bound_state_report(0, 0.0, scan);
    CHECK_FALSE(free.bound_state_possible);

    const auto flipped = no_bound_state_report(1, -2.0, scan);
    CHECK_FALSE(flipped.bound_state_possible);
    bool flagged_b = false;
    for (const auto& e : flipped.flagged())
      flagged_b = flagged_b || (e.verdict.case_label == TerminationCase::B && *e.verdict.required_beta > 0);
    CHECK(flagged_b);

    scan.s_values = {0.5, 0.0};
    const auto sorted = no_bound_state_report(1, 2.0, scan);
    CHECK(sorted.entries.front().s == 0.0);
    CHECK_THROWS_AS(no_bound_state_report(1, 2.0, TerminationScan{{}, 0, 10, 1.0}), ContractError);
  }
}
