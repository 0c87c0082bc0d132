#include "dipolebound/dipole_potential.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dipolebound/error.hpp"

namespace dipolebound {
namespace {

void require_positive_radius(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw DomainError(fmt::format("radius must be positive and finite, got {}", rho));
}

}  // namespace

Couplings Couplings::free_form(double eta, double sigma, int m_q) {
  if (!std::isfinite(eta) || !std::isfinite(sigma))
    throw DomainError("couplings must be finite");
  return Couplings{eta, sigma, std::nullopt, m_q, false};
}

SpectralParameter SpectralParameter::from_curly_e(double curly_e) {
  if (!std::isfinite(curly_e)) throw DomainError("curly_e must be finite");
  SpectralParameter p{curly_e, std::nullopt};
  if (curly_e <= 0.0) p.beta = std::sqrt(-curly_e);
  return p;
}

SpectralParameter SpectralParameter::from_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw DomainError("beta must be finite and non-negative");
  return SpectralParameter{-beta * beta, beta};
}

double vector_potential(const DipoleField& field, double rho) {
  require_positive_radius(rho);
  switch (field.form) {
    case PotentialForm::FarField:
      return field.lambda_strength / (rho * rho);
    case PotentialForm::FullRing: {
      if (!(field.ring_radius_a >= 0.0)) throw DomainError("ring radius must be non-negative");
      const double r2 = rho * rho + field.ring_radius_a * field.ring_radius_a;
      return field.lambda_strength * rho / (r2 * std::sqrt(r2));
    }
  }
  return 0.0;
}

Couplings couplings_from_field(double g, int m_q) {
  if (!std::isfinite(g)) throw DomainError("coupling g must be finite");
  return Couplings{2.0 * m_q * g, -(g * g), g, m_q, true};
}

Couplings couplings_for(const DipoleField& field, int m_q) {
  return couplings_from_field(field.lambda_strength, m_q);
}

double effective_potential(const Couplings& couplings, const DipoleField& field, double rho) {
  require_positive_radius(rho);
  const double inv = 1.0 / rho;
  const double inv2 = inv * inv;
  const double m = couplings.m_q;

  if (field.form == PotentialForm::FarField) {
    return (m * m) * inv2 - couplings.eta * (inv2 * inv) - couplings.sigma * (inv2 * inv2);
  }

  if (!couplings.physical || !couplings.g)
    throw ContractError("full-ring potential needs couplings built from a field");
  DipoleField unit = field;
  unit.lambda_strength = 1.0;
  const double term = m * inv - *couplings.g * vector_potential(unit, rho);
  return term * term;
}

double energy_of(double curly_e) {
  if (!(curly_e >= -1.0)) throw DomainError("curly_e < -1 has no real energy");
  return std::sqrt(1.0 + curly_e);
}

double curly_e_of(double energy) {
  if (!(energy >= 0.0)) throw DomainError("energy must be non-negative");
  return (energy - 1.0) * (energy + 1.0);
}

}  // namespace dipolebound
