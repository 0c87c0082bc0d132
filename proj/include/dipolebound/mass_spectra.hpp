#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dipolebound/constants.hpp"

namespace dipolebound {

enum class FormulaId {
  Barut,  // 1 + (3/2) alpha^-1 sum_{l<=n} l^4
  Mod12,  // 1 + (1/2) alpha^-1 sum_{l<=n} C(3,l) l^4
  Mod13,  // C(3,n) 2^(-n^2) alpha^-n
  Mod14,  // C(3,n) C(2,n) (alpha^-1 / 4)^n
};

/// Binomial coefficient with C(n, k) = 0 for k > n, which is what cuts the
/// modified spectra off after a finite number of generations. Throws
/// DomainError for negative arguments.
std::int64_t binom(int n, int k);

/// Mass ratios m_n / m_e. All of them throw DomainError for n < 0.
double barut_ratio(int n, double alpha_inverse);
/// Frozen at the n = 3 value beyond the last generation.
double mod12_ratio(int n, double alpha_inverse);
/// Zero beyond the last generation.
double mod13_ratio(int n, double alpha_inverse);
double mod14_ratio(int n, double alpha_inverse);
double mass_ratio(FormulaId formula, int n, double alpha_inverse);

/// Barut's magnetic energy (3/2) alpha^-1 n^4 in units of m_e c^2.
double barut_magnetic_energy(int n, double alpha_inverse);

/// Number of generations the formula admits; nullopt means unbounded.
std::optional<int> generation_count(FormulaId formula);

/// Published mass of the fourth lepton, kept as an annotation next to the
/// computed value and never substituted for it.
std::optional<double> quoted_f_lepton_mass_gev(FormulaId formula);

/// Published agreement claim for the formula, as a relative error bound.
struct AgreementClaim {
  double bound;
  bool approximate;  // "about": compared after rounding to one significant digit
  std::string text;
};
std::optional<AgreementClaim> agreement_claim(FormulaId formula);

/// True when rel_error is outside the formula's claimed agreement.
bool exceeds_claim(const AgreementClaim& claim, double rel_error);

struct SpectrumRow {
  int n = 0;
  std::string label;  // e, mu, tau, f, then gen<n>
  double ratio = 0.0;
  double mass_mev = 0.0;
  std::optional<double> experimental_ratio;
  std::optional<double> rel_error;
  bool beyond_last_generation = false;
  std::string annotation;
};

struct MassSpectrum {
  FormulaId formula = FormulaId::Barut;
  double alpha_inverse = 0.0;
  double electron_mass_mev = 0.0;
  std::optional<int> generation_count;
  std::vector<SpectrumRow> rows;  // sorted by n
};

/// Rows n = 0..max_n with masses in MeV and relative errors against the
/// reference table for n <= 2 (n = 0 is exact by construction).
MassSpectrum spectrum_report(FormulaId formula, const PhysicalConstants& constants,
                             const ExperimentalLeptons& reference, int max_n = 3);

const char* to_string(FormulaId formula);
/// Accepts barut, mod12, mod13, mod14 (case-sensitive).
std::optional<FormulaId> formula_from_string(const std::string& name);

}  // namespace dipolebound
