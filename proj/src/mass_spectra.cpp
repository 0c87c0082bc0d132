#include "dipolebound/mass_spectra.hpp"

#include <cmath>

#include <fmt/format.h>

#include "dipolebound/error.hpp"

namespace dipolebound {
namespace {

// Keeps sum l^4 well inside int64.
constexpr int kMaxGeneration = 5000;

void check_generation(int n) {
  if (n < 0) throw DomainError(fmt::format("generation index must be non-negative, got {}", n));
  if (n > kMaxGeneration) throw DomainError(fmt::format("generation index {} too large", n));
}

std::int64_t fourth_power(std::int64_t l) {
  return l * l * l * l;
}

std::string label_for(int n) {
  switch (n) {
    case 0: return "e";
    case 1: return "mu";
    case 2: return "tau";
    case 3: return "f";
    default: return fmt::format("gen{}", n);
  }
}

}  // namespace

std::int64_t binom(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("binomial arguments must be non-negative");
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double barut_ratio(int n, double alpha_inverse) {
  check_generation(n);
  std::int64_t sum = 0;
  for (int l = 0; l <= n; ++l) sum += fourth_power(l);
  return 1.0 + 1.5 * alpha_inverse * static_cast<double>(sum);
}

double mod12_ratio(int n, double alpha_inverse) {
  check_generation(n);
  std::int64_t sum = 0;
  for (int l = 0; l <= n; ++l) sum += binom(3, l) * fourth_power(l);
  return 1.0 + 0.5 * alpha_inverse * static_cast<double>(sum);
}

double mod13_ratio(int n, double alpha_inverse) {
  check_generation(n);
  const auto c = binom(3, n);
  if (c == 0) return 0.0;
  return static_cast<double>(c) * std::ldexp(1.0, -n * n) * std::pow(alpha_inverse, n);
}

double mod14_ratio(int n, double alpha_inverse) {
  check_generation(n);
  const auto c = binom(3, n) * binom(2, n);
  if (c == 0) return 0.0;
  return static_cast<double>(c) * std::pow(alpha_inverse / 4.0, n);
}

double mass_ratio(FormulaId formula, int n, double alpha_inverse) {
  switch (formula) {
    case FormulaId::Barut: return barut_ratio(n, alpha_inverse);
    case FormulaId::Mod12: return mod12_ratio(n, alpha_inverse);
    case FormulaId::Mod13: return mod13_ratio(n, alpha_inverse);
    case FormulaId::Mod14: return mod14_ratio(n, alpha_inverse);
  }
  return 0.0;
}

double barut_magnetic_energy(int n, double alpha_inverse) {
  check_generation(n);
  return 1.5 * alpha_inverse * static_cast<double>(fourth_power(n));
}

std::optional<int> generation_count(FormulaId formula) {
  switch (formula) {
    case FormulaId::Barut: return std::nullopt;
    case FormulaId::Mod12:
    case FormulaId::Mod13: return 4;
    case FormulaId::Mod14: return 3;
  }
  return std::nullopt;
}

std::optional<double> quoted_f_lepton_mass_gev(FormulaId formula) {
  switch (formula) {
    case FormulaId::Mod12: return 3.4;
    case FormulaId::Mod13: return 2.6;
    default: return std::nullopt;
  }
}

std::optional<AgreementClaim> agreement_claim(FormulaId formula) {
  switch (formula) {
    case FormulaId::Barut:
    case FormulaId::Mod12: return AgreementClaim{1e-3, true, "about one part in 1e3"};
    case FormulaId::Mod14: return AgreementClaim{1e-2, false, "less than 1%"};
    case FormulaId::Mod13: return std::nullopt;
  }
  return std::nullopt;
}

bool exceeds_claim(const AgreementClaim& claim, double rel_error) {
  if (!claim.approximate) return !(rel_error < claim.bound);
  // "about" a bound: compare at one significant digit.
  if (rel_error == 0.0) return false;
  const double exponent = std::floor(std::log10(rel_error));
  const double scale = std::pow(10.0, exponent);
  const double rounded = std::round(rel_error / scale) * scale;
  return rounded > claim.bound * (1.0 + 1e-12);
}

MassSpectrum spectrum_report(FormulaId formula, const PhysicalConstants& constants,
                             const ExperimentalLeptons& reference, int max_n) {
  check_generation(max_n);
  MassSpectrum spec;
  spec.formula = formula;
  spec.alpha_inverse = constants.alpha_inverse;
  spec.electron_mass_mev = constants.electron_mass_mev;
  spec.generation_count = generation_count(formula);
  const auto claim = agreement_claim(formula);

  for (int n = 0; n <= max_n; ++n) {
    SpectrumRow row;
    row.n = n;
    row.label = label_for(n);
    row.ratio = mass_ratio(formula, n, constants.alpha_inverse);
    row.mass_mev = row.ratio * constants.electron_mass_mev;
    row.beyond_last_generation = spec.generation_count && n >= *spec.generation_count;

    std::vector<std::string> notes;
    if (n <= 2) {
      const double experimental = n == 0 ? 1.0 : (n == 1 ? reference.mu_over_e : reference.tau_over_e);
      row.experimental_ratio = experimental;
      row.rel_error = n == 0 ? 0.0 : std::abs(row.ratio - experimental) / experimental;
      if (claim && n > 0 && exceeds_claim(*claim, *row.rel_error))
        notes.push_back(fmt::format("rel_error exceeds stated agreement ({})", claim->text));
    }
    if (n == 3) {
      if (auto quoted = quoted_f_lepton_mass_gev(formula)) {
        notes.push_back(fmt::format("stated f mass {} GeV, computed {:.4g} GeV{}", *quoted, row.mass_mev / 1000.0,
                                    std::abs(row.mass_mev / 1000.0 - *quoted) / *quoted > 0.02 ? "; unresolved" : ""));
      }
    }
    if (row.beyond_last_generation) notes.push_back("beyond last generation");
    for (std::size_t i = 0; i < notes.size(); ++i) row.annotation += (i ? "; " : "") + notes[i];
    spec.rows.push_back(std::move(row));
  }
  return spec;
}

const char* to_string(FormulaId formula) {
  switch (formula) {
    case FormulaId::Barut: return "barut";
    case FormulaId::Mod12: return "mod12";
    case FormulaId::Mod13: return "mod13";
    case FormulaId::Mod14: return "mod14";
  }
  return "?";
}

std::optional<FormulaId> formula_from_string(const std::string& name) {
  if (name == "barut") return FormulaId::Barut;
  if (name == "mod12") return FormulaId::Mod12;
  if (name == "mod13") return FormulaId::Mod13;
  if (name == "mod14") return FormulaId::Mod14;
  return std::nullopt;
}

}  // namespace dipolebound
