#include "dipolebound/constants.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "dipolebound/error.hpp"

namespace dipolebound {
namespace {

constexpr std::array kKnownKeys{kAlphaInverse,  kElectronMassMev, kHbarC,
                                kMuOverE,       kTauOverE,        kMuUncertainty,
                                kTauUncertainty};

void reject_unknown(const Overrides& overrides) {
  for (const auto& [key, value] : overrides) {
    if (!is_known_key(key)) throw ConfigError(fmt::format("unknown configuration key '{}'", key));
  }
}

double finite_value(std::string_view key, double value) {
  if (!std::isfinite(value)) throw ConfigError(fmt::format("{} must be finite", key));
  return value;
}

double positive(std::string_view key, double value) {
  if (finite_value(key, value) <= 0.0) throw ConfigError(fmt::format("{} must be positive", key));
  return value;
}

double ratio_above_one(std::string_view key, double value) {
  if (finite_value(key, value) <= 1.0) throw ConfigError(fmt::format("{}: ratio must exceed 1", key));
  return value;
}

double non_negative(std::string_view key, double value) {
  if (finite_value(key, value) < 0.0)
    throw ConfigError(fmt::format("{} must be non-negative", key));
  return value;
}

template <typename Check>
void apply(const Overrides& overrides, std::string_view key, double& field, Check check) {
  if (auto it = overrides.find(key); it != overrides.end()) field = check(key, it->second);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_known_key(std::string_view key) {
  for (auto k : kKnownKeys) {
    if (k == key) return true;
  }
  return false;
}

PhysicalConstants load_constants(const Overrides& overrides) {
  reject_unknown(overrides);
  PhysicalConstants c;
  apply(overrides, kAlphaInverse, c.alpha_inverse, positive);
  apply(overrides, kElectronMassMev, c.electron_mass_mev, positive);
  apply(overrides, kHbarC, c.hbar_c_mev_fm, positive);
  return c;
}

ExperimentalLeptons reference_leptons(const Overrides& overrides) {
  reject_unknown(overrides);
  ExperimentalLeptons r;
  apply(overrides, kMuOverE, r.mu_over_e, ratio_above_one);
  apply(overrides, kTauOverE, r.tau_over_e, ratio_above_one);
  apply(overrides, kMuUncertainty, r.mu_uncertainty, non_negative);
  apply(overrides, kTauUncertainty, r.tau_uncertainty, non_negative);
  return r;
}

std::string to_config_text(const PhysicalConstants& constants,
                           const ExperimentalLeptons& leptons) {
  // fmt's default float formatting is the shortest string that round-trips.
  std::string out;
  auto line = [&out](std::string_view key, double v) { out += fmt::format("{} = {}\n", key, v); };
  line(kAlphaInverse, constants.alpha_inverse);
  line(kElectronMassMev, constants.electron_mass_mev);
  line(kHbarC, constants.hbar_c_mev_fm);
  line(kMuOverE, leptons.mu_over_e);
  line(kTauOverE, leptons.tau_over_e);
  line(kMuUncertainty, leptons.mu_uncertainty);
  line(kTauUncertainty, leptons.tau_uncertainty);
  return out;
}

Overrides parse_config_text(std::string_view text) {
  Overrides result;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const auto key = trim(line.substr(0, eq));
    const auto raw = trim(line.substr(eq + 1));
    if (!is_known_key(key)) throw ConfigError(fmt::format("unknown configuration key '{}'", key));

    if (raw.empty()) throw ConfigError(fmt::format("{}: missing value", key));
    double value = 0.0;
    const auto* begin = raw.data();
    const auto* end = raw.data() + raw.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
      throw ConfigError(fmt::format("{}: '{}' is not a number", key, raw));
    result[std::string(key)] = value;
  }
  return result;
}

Overrides read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace dipolebound
