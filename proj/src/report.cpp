#include "dipolebound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <fmt/format.h>
#include <json.hpp>

#include "dipolebound/error.hpp"

namespace dipolebound {
namespace {

using Json = nlohmann::ordered_json;

// JSON numbers carry the same 12 digits as the text and CSV forms.
Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

template <typename T>
Json optional_number(const std::optional<T>& v) {
  return v ? number(static_cast<double>(*v)) : Json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

const char* yes_no(bool b) {
  return b ? "true" : "false";
}

std::string dump(const Json& j) {
  return j.dump(2) + "\n";
}

Json verdict_json(const TerminationVerdict& v) {
  Json j;
  j["case"] = to_string(v.case_label);
  j["required_beta"] = optional_number(v.required_beta);
  j["bound_state_possible"] = v.bound_state_possible;
  j["flagged"] = v.flagged;
  j["explanation"] = v.explanation;
  return j;
}

std::string beta_text(const TerminationVerdict& v) {
  return v.required_beta ? format_number(*v.required_beta) : std::string("none");
}

std::string g_field(const ScanRow& r) {
  return r.form == PotentialKind::DipoleFarField || r.form == PotentialKind::DipoleFullRing ? format_number(r.g)
                                                                                           : std::string{};
}

}  // namespace

std::optional<Format> format_from_string(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "text") return Format::Text;
  return std::nullopt;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", value);
}

std::string format_exact(long double value) {
  if (value == 0) return "0";
  return fmt::format("{:.17g}", value);
}

std::string render(const std::vector<MassSpectrum>& spectra, Format format) {
  if (format == Format::Csv) {
    std::string out = "formula,n,label,ratio,mass_mev,experimental_ratio,rel_error,annotation\n";
    for (const auto& s : spectra) {
      for (const auto& r : s.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(s.formula), r.n, r.label, format_number(r.ratio),
                           format_number(r.mass_mev), opt(r.experimental_ratio), opt(r.rel_error),
                           csv_field(r.annotation));
      }
    }
    return out;
  }

  if (format == Format::Json) {
    Json j = Json::array();
    for (const auto& s : spectra) {
      Json js;
      js["formula"] = to_string(s.formula);
      js["alpha_inverse"] = number(s.alpha_inverse);
      js["electron_mass_mev"] = number(s.electron_mass_mev);
      js["generation_count"] = s.generation_count ? Json(*s.generation_count) : Json("unbounded");
      js["rows"] = Json::array();
      for (const auto& r : s.rows) {
        Json jr;
        jr["n"] = r.n;
        jr["label"] = r.label;
        jr["ratio"] = number(r.ratio);
        jr["mass_mev"] = number(r.mass_mev);
        jr["experimental_ratio"] = optional_number(r.experimental_ratio);
        jr["rel_error"] = optional_number(r.rel_error);
        jr["annotation"] = r.annotation;
        js["rows"].push_back(std::move(jr));
      }
      j.push_back(std::move(js));
    }
    return dump(j);
  }

  std::string out;
  for (const auto& s : spectra) {
    out += fmt::format("formula {}  alpha^-1 = {}  m_e = {} MeV  generations: {}\n", to_string(s.formula),
                       format_number(s.alpha_inverse), format_number(s.electron_mass_mev),
                       s.generation_count ? std::to_string(*s.generation_count) : std::string("unbounded"));
    out += fmt::format("  {:>2}  {:<5}  {:>16}  {:>16}  {:>14}  {:>12}  {}\n", "n", "label", "ratio", "mass_mev",
                       "experimental", "rel_error", "note");
    for (const auto& r : s.rows) {
      out += fmt::format("  {:>2}  {:<5}  {:>16}  {:>16}  {:>14}  {:>12}  {}\n", r.n, r.label, format_number(r.ratio),
                         format_number(r.mass_mev), opt(r.experimental_ratio), opt(r.rel_error), r.annotation);
    }
    out += "\n";
  }
  return out;
}

std::string render(const SeriesSolution& sol, Format format) {
  const auto& p = sol.params;
  auto residual_at = [&sol](int order) -> std::optional<long double> {
    for (const auto& r : sol.residuals) {
      if (r.order == order) return r.value;
    }
    return std::nullopt;
  };

  if (format == Format::Csv) {
    std::string out = "nu,b_nu,residual\n";
    for (int nu = -3; nu <= p.nu_max; ++nu) {
      const long double b = nu >= 0 ? sol.coefficients[nu] : 0.0L;
      const auto r = residual_at(nu);
      out += fmt::format("{},{},{}\n", nu, format_exact(b), r ? format_exact(*r) : std::string{});
    }
    return out;
  }

  if (format == Format::Json) {
    Json j;
    j["params"] = {{"s", number(p.s)},         {"m_q", p.m_q},          {"beta", number(p.beta)},
                   {"eta", number(p.eta)},     {"sigma", number(p.sigma)}, {"nu_max", p.nu_max}};
    j["closure"] = to_string(sol.closure);
    j["growth"] = to_string(sol.growth);
    j["coefficients"] = Json::array();
    for (auto b : sol.coefficients) j["coefficients"].push_back(format_exact(b));
    j["residuals"] = Json::array();
    for (const auto& r : sol.residuals) j["residuals"].push_back({{"order", r.order}, {"value", format_exact(r.value)}});
    j["max_abs_coefficient"] = format_exact(sol.max_abs_coefficient());
    j["max_interior_residual"] = format_exact(sol.max_interior_residual());
    return dump(j);
  }

  std::string out = fmt::format("series s = {}  m_q = {}  beta = {}  eta = {}  sigma = {}  nu_max = {}\n",
                                format_number(p.s), p.m_q, format_number(p.beta), format_number(p.eta),
                                format_number(p.sigma), p.nu_max);
  out += fmt::format("closure {}  growth {}  max|b| = {}  max interior residual = {}\n", to_string(sol.closure),
                     to_string(sol.growth), format_exact(sol.max_abs_coefficient()),
                     format_exact(sol.max_interior_residual()));
  out += fmt::format("  {:>4}  {:>26}  {:>26}\n", "nu", "b_nu", "residual");
  for (int nu = -3; nu <= p.nu_max; ++nu) {
    const long double b = nu >= 0 ? sol.coefficients[nu] : 0.0L;
    const auto r = residual_at(nu);
    out += fmt::format("  {:>4}  {:>26}  {:>26}\n", nu, format_exact(b), r ? format_exact(*r) : std::string{});
  }
  return out;
}

std::string render(const TerminationRecord& rec, Format format) {
  const auto& v = rec.verdict;
  if (format == Format::Csv) {
    std::string out =
        "case,s,m_q,nu,eta,beta,required_beta,bound_state_possible,flagged,b_next,b_next2,explanation\n";
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(v.case_label), format_number(rec.s), rec.m_q,
                       rec.nu, format_number(rec.eta), opt(rec.beta), opt(v.required_beta),
                       yes_no(v.bound_state_possible), yes_no(v.flagged), opt(rec.b_next), opt(rec.b_next2),
                       csv_field(v.explanation));
    return out;
  }
  if (format == Format::Json) {
    Json j = {{"s", number(rec.s)}, {"m_q", rec.m_q}, {"nu", rec.nu}, {"eta", number(rec.eta)},
              {"beta", optional_number(rec.beta)}};
    j["verdict"] = verdict_json(v);
    j["b_next"] = optional_number(rec.b_next);
    j["b_next2"] = optional_number(rec.b_next2);
    return dump(j);
  }
  std::string out = fmt::format("case {} (s = {}, m = {}, nu = {}, eta = {}): ", to_string(v.case_label),
                                format_number(rec.s), rec.m_q, rec.nu, format_number(rec.eta));
  if (rec.b_next) {
    out += fmt::format("b_{} = {}, b_{} = {}, ", rec.nu + 1, format_number(*rec.b_next), rec.nu + 2,
                       format_number(rec.b_next2.value_or(0.0)));
  }
  out += fmt::format("beta = {}, {}{}\n", beta_text(v), v.bound_state_possible ? "bound state possible" : "not bound",
                     v.flagged ? " [flagged]" : "");
  out += fmt::format("  {}\n", v.explanation);
  return out;
}

std::string render(const NoBoundStateReport& report, Format format) {
  const auto flagged = report.flagged();
  if (format == Format::Csv) {
    std::string out =
        "m_q,eta,s,nu,case,applicable,physical,required_beta,bound_state_possible,flagged,explanation\n";
    for (const auto& e : report.entries) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", report.m_q, format_number(report.eta),
                         format_number(e.s), e.nu, to_string(e.verdict.case_label), yes_no(e.applicable),
                         yes_no(e.physical), opt(e.verdict.required_beta), yes_no(e.verdict.bound_state_possible),
                         yes_no(e.verdict.flagged), csv_field(e.applicable ? e.verdict.explanation : e.note));
    }
    return out;
  }

  auto entry_json = [](const ScanEntry& e) {
    Json j = {{"s", number(e.s)}, {"nu", e.nu}, {"applicable", e.applicable}, {"physical", e.physical}};
    j["verdict"] = verdict_json(e.verdict);
    j["note"] = e.note;
    return j;
  };
  if (format == Format::Json) {
    Json j = {{"m_q", report.m_q}, {"eta", number(report.eta)}, {"bound_state_possible", report.bound_state_possible}};
    j["entries"] = Json::array();
    for (const auto& e : report.entries) j["entries"].push_back(entry_json(e));
    j["flagged"] = Json::array();
    for (const auto& e : flagged) j["flagged"].push_back(entry_json(e));
    return dump(j);
  }

  std::string out = fmt::format("termination scan m_q = {}, eta = {}: {} entries, {}\n", report.m_q,
                                format_number(report.eta), report.entries.size(),
                                report.bound_state_possible ? "a physical channel admits beta > 0"
                                                            : "no terminating series with beta > 0 on a physical channel");
  out += fmt::format("flagged entries: {}\n", flagged.size());
  for (const auto& e : flagged) {
    out += fmt::format("  case {}  s = {}  nu = {}  beta = {}  {}\n", to_string(e.verdict.case_label),
                       format_number(e.s), e.nu, beta_text(e.verdict), e.verdict.explanation);
  }
  return out;
}

std::string render(const std::vector<ScanRow>& rows, Format format) {
  if (format == Format::Csv) {
    std::string out = "g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged\n";
    for (const auto& r : rows) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", g_field(r), r.m_q, to_string(r.form), format_number(r.rho_min),
                         r.n_points, r.negative_count, format_number(r.lowest_e), yes_no(r.converged));
    }
    return out;
  }
  if (format == Format::Json) {
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back({{"g", g_field(r).empty() ? Json(nullptr) : number(r.g)},
                   {"m_q", r.m_q},
                   {"form", to_string(r.form)},
                   {"rho_min", number(r.rho_min)},
                   {"n_points", r.n_points},
                   {"negative_count", r.negative_count},
                   {"lowest_e", number(r.lowest_e)},
                   {"converged", r.converged}});
    }
    return dump(j);
  }
  std::string out = fmt::format("{:>6}  {:>3}  {:<9}  {:>10}  {:>8}  {:>8}  {:>20}  {}\n", "g", "m_q", "form", "rho_min",
                                "n_points", "negative", "lowest_e", "converged");
  for (const auto& r : rows) {
    out += fmt::format("{:>6}  {:>3}  {:<9}  {:>10}  {:>8}  {:>8}  {:>20}  {}\n", g_field(r), r.m_q, to_string(r.form),
                       format_number(r.rho_min), r.n_points, r.negative_count, format_number(r.lowest_e),
                       yes_no(r.converged));
  }
  return out;
}

std::string render(const std::vector<MismatchSample>& samples, Format format) {
  if (format == Format::Json) {
    Json j = Json::array();
    for (const auto& s : samples) j.push_back({{"curly_e", number(s.curly_e)}, {"mismatch", number(s.mismatch)}});
    return dump(j);
  }
  std::string out = format == Format::Csv ? "curly_e,mismatch\n" : fmt::format("{:>20}  {:>20}\n", "curly_e", "mismatch");
  for (const auto& s : samples) {
    out += format == Format::Csv
               ? fmt::format("{},{}\n", format_number(s.curly_e), format_number(s.mismatch))
               : fmt::format("{:>20}  {:>20}\n", format_number(s.curly_e), format_number(s.mismatch));
  }
  return out;
}

std::string render(const ValidationReport& report, Format format) {
  if (format == Format::Csv) {
    std::string out = "check,value,expected,tolerance,passed,detail\n";
    for (const auto& c : report.checks) {
      out += fmt::format("{},{},{},{},{},{}\n", c.name, format_number(c.value), format_number(c.expected),
                         format_number(c.tolerance), yes_no(c.passed), csv_field(c.detail));
    }
    return out;
  }
  if (format == Format::Json) {
    Json j = {{"all_passed", report.all_passed()}, {"checks", Json::array()}};
    for (const auto& c : report.checks) {
      j["checks"].push_back({{"check", c.name},
                             {"value", number(c.value)},
                             {"expected", number(c.expected)},
                             {"tolerance", number(c.tolerance)},
                             {"passed", c.passed},
                             {"detail", c.detail}});
    }
    return dump(j);
  }
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  std::string out;
  for (const auto& c : report.checks) {
    out += fmt::format("[{}] {:<{}} value {:>16}  expected {:>16}  tol {:>8}  {}\n", c.passed ? "PASS" : "FAIL", c.name,
                       width, format_number(c.value), format_number(c.expected), format_number(c.tolerance), c.detail);
  }
  out += fmt::format("{}\n", report.all_passed() ? "all checks passed" : "SOME CHECKS FAILED");
  return out;
}

std::vector<ScanRow> scan_rows(const PotentialSpec& spec, const EigenScanResult& result) {
  std::vector<ScanRow> rows;
  const double g = spec.coupling_g();
  if (result.cutoff_trace.empty()) {
    rows.push_back({g, spec.m_q, spec.kind, result.grid.rho_min, result.grid.n_points, result.negative_count,
                    result.lowest_eigenvalues.empty() ? 0.0 : result.lowest_eigenvalues.front(), result.converged});
  } else {
    for (const auto& t : result.cutoff_trace) {
      rows.push_back({g, spec.m_q, spec.kind, t.rho_min, result.grid.n_points, t.negative_count, t.lowest,
                      result.converged});
    }
  }
  return rows;
}

std::string render(const PotentialSpec& spec, const EigenScanResult& result, Format format) {
  const auto rows = scan_rows(spec, result);
  if (format == Format::Csv) return render(rows, format);

  if (format == Format::Json) {
    Json j;
    j["potential"] = to_string(spec.kind);
    j["m_q"] = spec.m_q;
    j["grid"] = {{"rho_min", number(result.grid.rho_min)},
                 {"rho_max", number(result.grid.rho_max)},
                 {"n_points", result.grid.n_points},
                 {"spacing", to_string(result.grid.spacing)}};
    j["negative_count"] = result.negative_count;
    j["lowest_eigenvalues"] = Json::array();
    for (double e : result.lowest_eigenvalues) j["lowest_eigenvalues"].push_back(number(e));
    j["converged"] = result.converged;
    j["rows"] = Json::parse(render(rows, Format::Json));
    return dump(j);
  }

  std::string out = fmt::format("potential {}  m_q = {}  grid [{}, {}] n = {} {}\n", to_string(spec.kind), spec.m_q,
                                format_number(result.grid.rho_min), format_number(result.grid.rho_max),
                                result.grid.n_points, to_string(result.grid.spacing));
  out += fmt::format("negative eigenvalues: {}\nlowest eigenvalues:", result.negative_count);
  for (double e : result.lowest_eigenvalues) out += " " + format_number(e);
  out += "\n";
  if (!result.cutoff_trace.empty())
    out += fmt::format("cutoff scan: {}\n", result.converged ? "converged" : "not converged");
  return out + render(rows, Format::Text);
}

void emit_report(const std::string& content, const std::optional<std::filesystem::path>& destination) {
  if (!destination || destination->empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream out(*destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", destination->string()));
  out << content;
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing '{}'", destination->string()));
}

}  // namespace dipolebound
