#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace dipolebound {

/// Physical constants used by the mass-spectrum reports. Spectral work is
/// done in units where lengths are measured in hbar/(m c), so only the
/// mass-spectrum module ever looks at MeV.
struct PhysicalConstants {
  double alpha_inverse = 137.035999;
  double electron_mass_mev = 0.51099895;
  double hbar_c_mev_fm = 197.3269804;

  bool operator==(const PhysicalConstants&) const = default;
};

/// Experimental charged-lepton mass ratios (CODATA 2018) used as comparison
/// targets.
struct ExperimentalLeptons {
  double mu_over_e = 206.768283;
  double tau_over_e = 3477.23;
  double mu_uncertainty = 0.0000046;
  double tau_uncertainty = 0.23;

  bool operator==(const ExperimentalLeptons&) const = default;
};

using Overrides = std::map<std::string, double, std::less<>>;

// Recognised override keys.
inline constexpr std::string_view kAlphaInverse = "alpha_inverse";
inline constexpr std::string_view kElectronMassMev = "electron_mass_mev";
inline constexpr std::string_view kHbarC = "hbar_c";
inline constexpr std::string_view kMuOverE = "mu_over_e";
inline constexpr std::string_view kTauOverE = "tau_over_e";
inline constexpr std::string_view kMuUncertainty = "mu_uncertainty";
inline constexpr std::string_view kTauUncertainty = "tau_uncertainty";

bool is_known_key(std::string_view key);

/// Defaults with the constant-related entries of `overrides` applied. Keys
/// belonging to other tables are ignored; unknown keys are rejected.
/// Throws ConfigError naming the offending key.
PhysicalConstants load_constants(const Overrides& overrides = {});

/// Same contract as load_constants for the lepton reference table.
ExperimentalLeptons reference_leptons(const Overrides& overrides = {});

/// `key = value` lines, one per field, in shortest round-trip decimal form.
std::string to_config_text(const PhysicalConstants& constants,
                           const ExperimentalLeptons& leptons);

/// Parses the TOML subset used by constants.toml: `key = number` pairs,
/// `#` comments, blank lines. Section headers are accepted and ignored.
Overrides parse_config_text(std::string_view text);

Overrides read_config_file(const std::filesystem::path& path);

}  // namespace dipolebound
