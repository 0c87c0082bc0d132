#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dipolebound/constants.hpp"
#include "dipolebound/error.hpp"

using namespace dipolebound;

TEST_SUITE("constants") {
  TEST_CASE("defaults") {
    const auto c = load_constants();
    CHECK(c.alpha_inverse == 137.035999);
    CHECK(c.electron_mass_mev == 0.51099895);
    const auto r = reference_leptons();
    CHECK(r.mu_over_e == 206.768283);
    CHECK(r.tau_over_e == 3477.23);
  }

  TEST_CASE("overrides apply to their own table") {
    const Overrides o{{"alpha_inverse", 137.0}, {"tau_over_e", 3400.0}};
    CHECK(load_constants(o).alpha_inverse == 137.0);
    CHECK(load_constants(o).electron_mass_mev == 0.51099895);
    CHECK(reference_leptons(o).tau_over_e == 3400.0);
  }

  TEST_CASE("invalid values are rejected with the key named") {
    CHECK_THROWS_WITH_AS(load_constants({{"alpha_inverse", 0.0}}), "alpha_inverse must be positive", ConfigError);
    CHECK_THROWS_WITH_AS(load_constants({{"alpha_inverse", -137.0}}), "alpha_inverse must be positive", ConfigError);
    CHECK_THROWS_WITH_AS(reference_leptons({{"mu_over_e", 0.5}}), "mu_over_e: ratio must exceed 1", ConfigError);
    CHECK_THROWS_AS(load_constants({{"electron_mass_mev", std::nan("")}}), ConfigError);
    CHECK_THROWS_AS(load_constants({{"planck", 1.0}}), ConfigError);
    CHECK_THROWS_AS(reference_leptons({{"tau_uncertainty", -1.0}}), ConfigError);
  }

  TEST_CASE("config text parsing") {
    const auto o = parse_config_text("# constants\n[physics]\nalpha_inverse = 137.5  # comment\n\nmu_over_e=+207\n");
    REQUIRE(o.size() == 2);
    CHECK(o.at("alpha_inverse") == 137.5);
    CHECK(o.at("mu_over_e") == 207.0);
    CHECK_THROWS_AS(parse_config_text("alpha_inverse 137"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha_inverse ="), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha_inverse = 13x"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("speed = 1"), ConfigError);
  }

  TEST_CASE("round trip through config text is exact") {
    PhysicalConstants c;
    c.alpha_inverse = 137.035999084;
    c.electron_mass_mev = 0.1 + 0.2;
    ExperimentalLeptons r;
    r.tau_over_e = 3477.2300000000005;
    for (int i = 0; i < 50; ++i) {
      c.hbar_c_mev_fm = 197.0 + i / 7.0;
      r.mu_uncertainty = 1e-7 * (i + 1) / 3.0;
      const auto o = parse_config_text(to_config_text(c, r));
      CHECK(load_constants(o) == c);
      CHECK(reference_leptons(o) == r);
    }
  }

  TEST_CASE("config file") {
    const auto path = std::filesystem::temp_directory_path() / "dipolebound_constants_test.toml";
    {
      std::ofstream out(path);
      out << "alpha_inverse = 140\n";
    }
    CHECK(load_constants(read_config_file(path)).alpha_inverse == 140.0);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_config_file(path), ConfigError);
  }
}
