#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dipolebound/error.hpp"
#include "dipolebound/report.hpp"

using namespace dipolebound;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("number formatting") {
    CHECK(format_number(206.5539985) == "206.5539985");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_exact(1.0L / 3.0L) == "0.33333333333333333");
    CHECK(format_exact(0.1L) == "0.1");
    CHECK(format_from_string("json") == Format::Json);
    CHECK_FALSE(format_from_string("xml"));
  }

  TEST_CASE("mass spectrum CSV header and JSON shape") {
    const std::vector<MassSpectrum> spectra{
        spectrum_report(FormulaId::Barut, PhysicalConstants{}, ExperimentalLeptons{}, 3)};
    const auto csv = render(spectra, Format::Csv);
    CHECK(first_line(csv) == "formula,n,label,ratio,mass_mev,experimental_ratio,rel_error,annotation");
    CHECK(csv.find("barut,1,mu,206.5539985,") != std::string::npos);
    const auto json = nlohmann::json::parse(render(spectra, Format::Json));
    REQUIRE(json.is_array());
    CHECK(json[0]["formula"] == "barut");
    CHECK(json[0]["rows"].size() == 4);
  }

  TEST_CASE("series CSV and JSON") {
    SeriesParams p;
    p.m_q = 1;
    p.beta = 1;
    p.eta = 1;
    p.nu_max = 6;
    const auto sol = generate_coefficients(p, Closure::CaseCForward);
    const auto csv = render(sol, Format::Csv);
    CHECK(first_line(csv) == "nu,b_nu,residual");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 + 7);
    const auto json = nlohmann::json::parse(render(sol, Format::Json));
    CHECK(json["coefficients"][1].get<std::string>().substr(0, 10) == "0.82758620");
  }

  TEST_CASE("termination text") {
    TerminationRecord rec;
    rec.m_q = 1;
    rec.eta = 1;
    rec.verdict = terminate_case_b(0, 1, 0, 1);
    CHECK(render(rec, Format::Text).find("beta = -4.8, not bound") != std::string::npos);
    CHECK(nlohmann::json::parse(render(rec, Format::Json))["verdict"]["required_beta"] == -4.8);
  }

  TEST_CASE("scan rows CSV header") {
    std::vector<ScanRow> rows{{1.0, 1, PotentialKind::DipoleFarField, 1e-4, 2000, 0, 0.0123, true}};
    const auto csv = render(rows, Format::Csv);
    CHECK(first_line(csv) == "g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged");
    CHECK(csv.find("1,1,far_field,0.0001,2000,0,0.0123,true") != std::string::npos);
  }

  TEST_CASE("validation CSV quotes free text") {
    ValidationReport r;
    r.checks.push_back({"a", 1.0, 1.0, 0.0, true, "x, y"});
    const auto csv = render(r, Format::Csv);
    CHECK(first_line(csv) == "check,value,expected,tolerance,passed,detail");
    CHECK(csv.find("\"x, y\"") != std::string::npos);
  }

  TEST_CASE("rendering is deterministic") {
    const std::vector<MassSpectrum> spectra{
        spectrum_report(FormulaId::Mod12, PhysicalConstants{}, ExperimentalLeptons{}, 4),
        spectrum_report(FormulaId::Mod14, PhysicalConstants{}, ExperimentalLeptons{}, 4)};
    for (auto f : {Format::Csv, Format::Json, Format::Text}) CHECK(render(spectra, f) == render(spectra, f));
  }

  TEST_CASE("emit to file and failure") {
    const auto path = std::filesystem::temp_directory_path() / "dipolebound_report_test.csv";
    emit_report("a,b\n", path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a,b\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_report("x", std::filesystem::path("/nonexistent-dir/out.csv")), IoError);
  }
}
