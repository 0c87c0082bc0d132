#include <doctest.h>

#include <cmath>

#include "dipolebound/dipole_potential.hpp"
#include "dipolebound/error.hpp"

using namespace dipolebound;

TEST_SUITE("dipole_potential") {
  TEST_CASE("physical couplings") {
    const auto c = couplings_from_field(1.5, 2);
    CHECK(c.eta == 6.0);
    CHECK(c.sigma == -2.25);
    CHECK(c.physical);
    REQUIRE(c.g);
    CHECK(*c.g == 1.5);
    CHECK_THROWS_AS(couplings_from_field(INFINITY, 1), DomainError);
  }

  TEST_CASE("far-field potential is a perfect square for physical couplings") {
    const DipoleField field{};
    for (double g : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      for (int m = -3; m <= 3; ++m) {
        const auto c = couplings_from_field(g, m);
        for (double rho = 1e-3; rho < 100.0; rho *= 1.37) {
          const double v = effective_potential(c, field, rho);
          const double square = std::pow(m / rho - g / (rho * rho), 2);
          CHECK(std::abs(v - square) <= 1e-12 * std::max(1.0, square));
          CHECK(v >= -1e-12 * std::max(1.0, square));
        }
      }
    }
  }

  TEST_CASE("far-field zero of the potential") {
    // (m/rho - g/rho^2)^2 vanishes at rho = g/m.
    const auto c = couplings_from_field(2.0, 1);
    CHECK(effective_potential(c, DipoleField{}, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
  }

  TEST_CASE("full ring reduces to the far field at a = 0 and far away") {
    const auto c = couplings_from_field(1.0, 1);
    DipoleField ring{1.0, 0.0, PotentialForm::FullRing};
    for (double rho : {0.01, 0.3, 1.0, 7.0}) {
      CHECK(effective_potential(c, ring, rho) == doctest::Approx(effective_potential(c, DipoleField{}, rho)));
    }
    ring.ring_radius_a = 0.1;
    CHECK(vector_potential(ring, 1000.0) == doctest::Approx(1e-6).epsilon(1e-6));
    // Regular at the origin: A ~ rho / a^3.
    CHECK(vector_potential(ring, 1e-6) == doctest::Approx(1e-6 / 1e-3));
  }

  TEST_CASE("full ring needs physical couplings") {
    const DipoleField ring{1.0, 0.1, PotentialForm::FullRing};
    CHECK_THROWS_AS(effective_potential(Couplings::free_form(2.0, 0.0, 1), ring, 1.0), ContractError);
  }

  TEST_CASE("free-form couplings use the expansion") {
    const auto c = Couplings::free_form(2.0, 0.0, 1);
    CHECK(effective_potential(c, DipoleField{}, 0.5) == doctest::Approx(4.0 - 16.0));
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(vector_potential(DipoleField{}, 0.0), DomainError);
    CHECK_THROWS_AS(vector_potential(DipoleField{}, -1.0), DomainError);
    CHECK_THROWS_AS(effective_potential(couplings_from_field(1, 1), DipoleField{}, NAN), DomainError);
    CHECK_THROWS_AS(energy_of(-1.5), DomainError);
    CHECK_THROWS_AS(curly_e_of(-0.1), DomainError);
    CHECK_THROWS_AS(SpectralParameter::from_beta(-1.0), DomainError);
  }

  TEST_CASE("energy and curly_e are inverse") {
    for (double e : {-1.0, -0.75, -0.1, 0.0, 0.3, 2.0}) CHECK(curly_e_of(energy_of(e)) == doctest::Approx(e));
    CHECK(energy_of(-0.75) == doctest::Approx(0.5));
    const auto p = SpectralParameter::from_curly_e(-0.25);
    REQUIRE(p.beta);
    CHECK(*p.beta == doctest::Approx(0.5));
    CHECK_FALSE(SpectralParameter::from_curly_e(0.1).beta);
    CHECK(SpectralParameter::from_beta(2.0).curly_e == -4.0);
  }
}
