#pragma once

#include <optional>

namespace dipolebound {

// All quantities here are dimensionless: lengths in hbar/(m c), and the
// charge-to-hbar ratio is absorbed into the coupling g = e*lambda/hbar. The
// particle is confined to the theta = pi/2 plane.

enum class PotentialForm {
  FarField,  // A_phi = lambda / rho^2
  FullRing,  // A_phi = lambda * rho / (rho^2 + a^2)^(3/2)
};

struct DipoleField {
  double lambda_strength = 1.0;
  double ring_radius_a = 0.0;
  PotentialForm form = PotentialForm::FarField;
};

/// Radial couplings of the 2D Klein-Gordon problem. For couplings built from
/// a field (`physical`), eta = 2 m_q g and sigma = -g^2, which makes the
/// effective potential a perfect square. Free-form couplings decouple eta and
/// sigma, e.g. for the sigma-dropped model.
struct Couplings {
  double eta = 0.0;
  double sigma = 0.0;
  std::optional<double> g;
  int m_q = 0;
  bool physical = false;

  static Couplings free_form(double eta, double sigma, int m_q);
};

/// E^2/(hbar c)^2 - (m c/hbar)^2 in units of (m c/hbar)^2, together with
/// beta = sqrt(-curly_e) when curly_e <= 0.
struct SpectralParameter {
  double curly_e = 0.0;
  std::optional<double> beta;

  static SpectralParameter from_curly_e(double curly_e);
  static SpectralParameter from_beta(double beta);
};

/// Throws DomainError for rho <= 0.
double vector_potential(const DipoleField& field, double rho);

/// Throws DomainError for non-finite g.
Couplings couplings_from_field(double g, int m_q);

/// Physical couplings for a field in units where e/hbar = 1, so g equals the
/// field's lambda_strength.
Couplings couplings_for(const DipoleField& field, int m_q);

/// Grouped centrifugal + magnetic term (m_q/rho - (e/hbar) A_phi)^2 of the
/// radial equation.
///
/// FarField evaluates m_q^2/rho^2 - eta/rho^3 - sigma/rho^4 and so also
/// serves free-form couplings. FullRing evaluates the square directly with
/// the unit-strength ring profile scaled by g, and therefore requires
/// physical couplings (ContractError otherwise).
double effective_potential(const Couplings& couplings, const DipoleField& field, double rho);

/// E / (m c^2) = sqrt(1 + curly_e). Throws DomainError for curly_e < -1.
double energy_of(double curly_e);

/// Inverse of energy_of: E^2 - 1. Throws DomainError for E < 0.
double curly_e_of(double energy);

}  // namespace dipolebound
