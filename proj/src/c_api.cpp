#include "dipolebound/dipolebound.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include <json.hpp>

#include "dipolebound/constants.hpp"
#include "dipolebound/error.hpp"
#include "dipolebound/frobenius.hpp"
#include "dipolebound/mass_spectra.hpp"
#include "dipolebound/report.hpp"
#include "dipolebound/spectral_oracle.hpp"
#include "dipolebound/validation.hpp"

struct dpb_config {
  dipolebound::Overrides values;
  dipolebound::PhysicalConstants constants() const { return dipolebound::load_constants(values); }
  dipolebound::ExperimentalLeptons leptons() const { return dipolebound::reference_leptons(values); }
};

struct dpb_text {
  std::string content;
};

struct dpb_series {
  dipolebound::SeriesSolution solution;
};

namespace {

namespace db = dipolebound;

thread_local std::string last_error;

class InvalidArgument : public std::exception {
 public:
  explicit InvalidArgument(const char* what) : what_(what) {}
  const char* what() const noexcept override { return what_; }

 private:
  const char* what_;
};

dpb_status status_of(db::ErrorKind kind) {
  switch (kind) {
    case db::ErrorKind::Config: return DPB_ERR_CONFIG;
    case db::ErrorKind::Domain: return DPB_ERR_DOMAIN;
    case db::ErrorKind::SingularOrder: return DPB_ERR_SINGULAR_ORDER;
    case db::ErrorKind::Closure: return DPB_ERR_CLOSURE;
    case db::ErrorKind::NoSolution: return DPB_ERR_NO_SOLUTION;
    case db::ErrorKind::Contract: return DPB_ERR_CONTRACT;
    case db::ErrorKind::Io: return DPB_ERR_IO;
  }
  return DPB_ERR_INTERNAL;
}

template <typename Fn>
dpb_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return DPB_OK;
  } catch (const db::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return DPB_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DPB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DPB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return DPB_ERR_INTERNAL;
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw InvalidArgument(message);
}

db::Format format_of(dpb_format f) {
  switch (f) {
    case DPB_FORMAT_CSV: return db::Format::Csv;
    case DPB_FORMAT_JSON: return db::Format::Json;
    case DPB_FORMAT_TEXT: return db::Format::Text;
  }
  throw InvalidArgument("unknown format");
}

db::FormulaId formula_of(dpb_formula f) {
  switch (f) {
    case DPB_FORMULA_BARUT: return db::FormulaId::Barut;
    case DPB_FORMULA_MOD12: return db::FormulaId::Mod12;
    case DPB_FORMULA_MOD13: return db::FormulaId::Mod13;
    case DPB_FORMULA_MOD14: return db::FormulaId::Mod14;
  }
  throw InvalidArgument("unknown formula");
}

db::Closure closure_of(dpb_closure c) {
  switch (c) {
    case DPB_CLOSURE_CASE_C: return db::Closure::CaseCForward;
    case DPB_CLOSURE_TRUNCATED: return db::Closure::TruncatedLinearSystem;
  }
  throw InvalidArgument("unknown closure");
}

dpb_growth growth_of(db::Growth g) {
  switch (g) {
    case db::Growth::Terminating: return DPB_GROWTH_TERMINATING;
    case db::Growth::ExpGrowth2Beta: return DPB_GROWTH_EXP_2BETA;
    case db::Growth::Indeterminate: break;
  }
  return DPB_GROWTH_INDETERMINATE;
}

db::PotentialSpec spec_of(const dpb_potential_spec* s) {
  require(s != nullptr, "potential spec is null");
  switch (s->kind) {
    case DPB_POTENTIAL_FAR_FIELD: return db::PotentialSpec::far_field(s->g, s->m_q);
    case DPB_POTENTIAL_FULL_RING: return db::PotentialSpec::full_ring(s->g, s->m_q, s->ring_radius);
    case DPB_POTENTIAL_ETA_ONLY: return db::PotentialSpec::eta_only(s->eta, s->m_q);
    case DPB_POTENTIAL_COULOMB: return db::PotentialSpec::coulomb(s->kappa, s->m_q);
  }
  throw InvalidArgument("unknown potential kind");
}

db::GridSpec grid_of(const dpb_grid* g) {
  require(g != nullptr, "grid is null");
  db::GridSpec grid;
  grid.rho_min = g->rho_min;
  grid.rho_max = g->rho_max;
  grid.n_points = g->n_points;
  switch (g->spacing) {
    case DPB_SPACING_UNIFORM: grid.spacing = db::Spacing::Uniform; break;
    case DPB_SPACING_LOG: grid.spacing = db::Spacing::Logarithmic; break;
    default: throw InvalidArgument("unknown grid spacing");
  }
  return grid;
}

template <typename T>
std::vector<T> array_of(const T* data, std::size_t n, const char* what) {
  require(n == 0 || data != nullptr, what);
  return n == 0 ? std::vector<T>{} : std::vector<T>(data, data + n);
}

void hand_out(std::string content, dpb_text** out) {
  *out = new dpb_text{std::move(content)};
}

struct TerminationOutcome {
  db::TerminationVerdict verdict;
  std::optional<double> b_next;
  std::optional<double> b_next2;
};

TerminationOutcome run_termination(dpb_case which, double s, int m_q, int nu, double eta, double beta,
                                   double b_nu) {
  switch (which) {
    case DPB_CASE_A: return {db::terminate_case_a(s, m_q, nu, eta), {}, {}};
    case DPB_CASE_B: return {db::terminate_case_b(s, m_q, nu, eta), {}, {}};
    case DPB_CASE_C: {
      auto r = db::terminate_case_c(s, m_q, nu, eta, beta, b_nu);
      return {r.verdict, r.b_next, r.b_next2};
    }
  }
  throw InvalidArgument("unknown termination case");
}

std::vector<db::MassSpectrum> all_spectra(const dpb_config* config) {
  const auto constants = config->constants();
  const auto leptons = config->leptons();
  std::vector<db::MassSpectrum> spectra;
  for (auto f : {db::FormulaId::Barut, db::FormulaId::Mod12, db::FormulaId::Mod13, db::FormulaId::Mod14})
    spectra.push_back(db::spectrum_report(f, constants, leptons, 3));
  return spectra;
}

std::string combine(db::Format format, const std::vector<std::pair<const char*, std::string>>& sections) {
  if (format == db::Format::Json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [name, body] : sections) doc[name] = nlohmann::ordered_json::parse(body);
    return doc.dump(2) + "\n";
  }
  std::string out;
  for (const auto& [name, body] : sections) {
    if (!out.empty()) out += "\n";
    out += format == db::Format::Csv ? std::string("# ") + name + "\n" : std::string("== ") + name + " ==\n";
    out += body;
  }
  return out;
}

}  // namespace

extern "C" {

const char* dpb_last_error(void) { return last_error.c_str(); }

const char* dpb_status_name(dpb_status status) {
  switch (status) {
    case DPB_OK: return "ok";
    case DPB_ERR_CONFIG: return "config error";
    case DPB_ERR_DOMAIN: return "domain error";
    case DPB_ERR_SINGULAR_ORDER: return "singular order";
    case DPB_ERR_CLOSURE: return "closure error";
    case DPB_ERR_NO_SOLUTION: return "no solution";
    case DPB_ERR_CONTRACT: return "contract violation";
    case DPB_ERR_IO: return "i/o error";
    case DPB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DPB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dpb_version(void) { return "0.1.0"; }

dpb_status dpb_config_create(dpb_config** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new dpb_config{};
  });
}

void dpb_config_destroy(dpb_config* config) { delete config; }

dpb_status dpb_config_set(dpb_config* config, const char* key, double value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr, "config or key is null");
    auto next = config->values;
    next[key] = value;
    db::load_constants(next);
    db::reference_leptons(next);
    config->values = std::move(next);
  });
}

dpb_status dpb_config_get(const dpb_config* config, const char* key, double* value) {
  return guarded([&] {
    require(config != nullptr && key != nullptr && value != nullptr, "null argument");
    const std::string_view k(key);
    if (!db::is_known_key(k)) throw db::ConfigError("unknown configuration key '" + std::string(k) + "'");
    const auto c = config->constants();
    const auto l = config->leptons();
    if (k == db::kAlphaInverse) *value = c.alpha_inverse;
    else if (k == db::kElectronMassMev) *value = c.electron_mass_mev;
    else if (k == db::kHbarC) *value = c.hbar_c_mev_fm;
    else if (k == db::kMuOverE) *value = l.mu_over_e;
    else if (k == db::kTauOverE) *value = l.tau_over_e;
    else if (k == db::kMuUncertainty) *value = l.mu_uncertainty;
    else *value = l.tau_uncertainty;
  });
}

dpb_status dpb_config_load_file(dpb_config* config, const char* path) {
  return guarded([&] {
    require(config != nullptr && path != nullptr, "config or path is null");
    auto next = config->values;
    for (const auto& [key, value] : db::read_config_file(path)) next[key] = value;
    db::load_constants(next);
    db::reference_leptons(next);
    config->values = std::move(next);
  });
}

dpb_status dpb_config_to_text(const dpb_config* config, dpb_text** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    hand_out(db::to_config_text(config->constants(), config->leptons()), out);
  });
}

const char* dpb_text_data(const dpb_text* text) { return text ? text->content.c_str() : ""; }

size_t dpb_text_size(const dpb_text* text) { return text ? text->content.size() : 0; }

dpb_status dpb_text_write(const dpb_text* text, const char* path) {
  return guarded([&] {
    require(text != nullptr, "text is null");
    std::optional<std::filesystem::path> destination;
    if (path != nullptr && *path != '\0') destination = path;
    db::emit_report(text->content, destination);
  });
}

void dpb_text_destroy(dpb_text* text) { delete text; }

dpb_status dpb_formula_from_name(const char* name, dpb_formula* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const auto id = db::formula_from_string(name);
    if (!id) throw db::ConfigError(std::string("unknown formula '") + name + "'");
    *out = static_cast<dpb_formula>(static_cast<int>(*id));
  });
}

dpb_status dpb_mass_ratio(const dpb_config* config, dpb_formula formula, int n, double* ratio) {
  return guarded([&] {
    require(config != nullptr && ratio != nullptr, "null argument");
    *ratio = db::mass_ratio(formula_of(formula), n, config->constants().alpha_inverse);
  });
}

int dpb_generation_count(dpb_formula formula) {
  try {
    return db::generation_count(formula_of(formula)).value_or(-1);
  } catch (...) {
    return -1;
  }
}

dpb_status dpb_masses_report(const dpb_config* config, const dpb_formula* formulas, size_t n_formulas, int max_n,
                             dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    require(n_formulas > 0 && formulas != nullptr, "no formulas given");
    const auto constants = config->constants();
    const auto leptons = config->leptons();
    std::vector<db::MassSpectrum> spectra;
    for (std::size_t i = 0; i < n_formulas; ++i)
      spectra.push_back(db::spectrum_report(formula_of(formulas[i]), constants, leptons, max_n));
    hand_out(db::render(spectra, format_of(format)), out);
  });
}

dpb_series_params dpb_series_params_default(void) {
  const db::SeriesParams p;
  return {p.s, p.m_q, p.beta, p.eta, p.sigma, p.nu_max};
}

dpb_status dpb_series_generate(const dpb_series_params* params, dpb_closure closure, double b0, dpb_series** out) {
  return guarded([&] {
    require(params != nullptr && out != nullptr, "null argument");
    db::SeriesParams p;
    p.s = params->s;
    p.m_q = params->m_q;
    p.beta = params->beta;
    p.eta = params->eta;
    p.sigma = params->sigma;
    p.nu_max = params->nu_max;
    *out = new dpb_series{db::generate_coefficients(p, closure_of(closure), b0)};
  });
}

void dpb_series_destroy(dpb_series* series) { delete series; }

size_t dpb_series_size(const dpb_series* series) { return series ? series->solution.coefficients.size() : 0; }

double dpb_series_coefficient(const dpb_series* series, size_t nu) {
  if (!series || nu >= series->solution.coefficients.size()) return 0.0;
  return static_cast<double>(series->solution.coefficients[nu]);
}

double dpb_series_residual(const dpb_series* series, int order) {
  if (!series) return 0.0;
  for (const auto& r : series->solution.residuals)
    if (r.order == order) return static_cast<double>(r.value);
  return 0.0;
}

double dpb_series_max_interior_residual(const dpb_series* series) {
  return series ? static_cast<double>(series->solution.max_interior_residual()) : 0.0;
}

dpb_growth dpb_series_growth(const dpb_series* series) {
  return series ? growth_of(series->solution.growth) : DPB_GROWTH_INDETERMINATE;
}

dpb_status dpb_series_render(const dpb_series* series, dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    hand_out(db::render(series->solution, format_of(format)), out);
  });
}

dpb_status dpb_terminate(dpb_case which, double s, int m_q, int nu, double eta, double beta, double b_nu,
                         dpb_termination* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto r = run_termination(which, s, m_q, nu, eta, beta, b_nu);
    dpb_termination t{};
    t.case_label = which;
    t.has_required_beta = r.verdict.required_beta.has_value();
    t.required_beta = r.verdict.required_beta.value_or(0.0);
    t.bound_state_possible = r.verdict.bound_state_possible;
    t.flagged = r.verdict.flagged;
    t.b_next = r.b_next.value_or(0.0);
    t.b_next2 = r.b_next2.value_or(0.0);
    *out = t;
  });
}

dpb_status dpb_terminate_report(dpb_case which, double s, int m_q, int nu, double eta, double beta, double b_nu,
                                dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    auto r = run_termination(which, s, m_q, nu, eta, beta, b_nu);
    db::TerminationRecord rec;
    rec.s = s;
    rec.m_q = m_q;
    rec.nu = nu;
    rec.eta = eta;
    if (which == DPB_CASE_C) rec.beta = beta;
    rec.verdict = std::move(r.verdict);
    rec.b_next = r.b_next;
    rec.b_next2 = r.b_next2;
    hand_out(db::render(rec, format_of(format)), out);
  });
}

dpb_status dpb_no_bound_state_report(int m_q, double eta, const double* s_values, size_t n_s, int nu_min,
                                     int nu_max, double case_c_beta, int* bound_state_possible, dpb_format format,
                                     dpb_text** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    db::TerminationScan scan;
    scan.s_values = array_of(s_values, n_s, "s values are null");
    scan.nu_min = nu_min;
    scan.nu_max = nu_max;
    scan.case_c_beta = case_c_beta;
    const auto report = db::no_bound_state_report(m_q, eta, scan);
    auto text = db::render(report, format_of(format));
    if (bound_state_possible) *bound_state_possible = report.bound_state_possible;
    hand_out(std::move(text), out);
  });
}

dpb_grid dpb_grid_default(void) {
  const db::GridSpec g;
  return {g.rho_min, g.rho_max, g.n_points, g.spacing == db::Spacing::Uniform ? DPB_SPACING_UNIFORM : DPB_SPACING_LOG};
}

dpb_status dpb_count_negative(const dpb_potential_spec* spec, const dpb_grid* grid, double threshold,
                              size_t* count) {
  return guarded([&] {
    require(count != nullptr, "output pointer is null");
    *count = db::count_negative_eigenvalues(db::discretize(spec_of(spec), grid_of(grid)), threshold);
  });
}

dpb_status dpb_lowest_eigenvalue(const dpb_potential_spec* spec, const dpb_grid* grid, double* value) {
  return guarded([&] {
    require(value != nullptr, "output pointer is null");
    *value = db::lowest_eigenvalue(db::discretize(spec_of(spec), grid_of(grid)));
  });
}

dpb_status dpb_shoot(const dpb_potential_spec* spec, const dpb_grid* grid, double curly_e, double* mismatch) {
  return guarded([&] {
    require(mismatch != nullptr, "output pointer is null");
    *mismatch = db::shoot(spec_of(spec), grid_of(grid), curly_e);
  });
}

dpb_status dpb_spectrum_report(const dpb_potential_spec* spec, const dpb_grid* grid, const double* cutoffs,
                               size_t n_cutoffs, size_t n_lowest, double threshold, int* converged,
                               dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const auto s = spec_of(spec);
    const auto result =
        db::eigen_scan(s, grid_of(grid), array_of(cutoffs, n_cutoffs, "cutoffs are null"), n_lowest, threshold);
    auto text = db::render(s, result, format_of(format));
    if (converged) *converged = result.converged;
    hand_out(std::move(text), out);
  });
}

dpb_status dpb_mismatch_report(const dpb_potential_spec* spec, const dpb_grid* grid, double e_lo, double e_hi,
                               int steps, dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(steps > 0, "steps must be positive");
    const auto problem = db::discretize(spec_of(spec), grid_of(grid));
    hand_out(db::render(db::mismatch_curve(problem, e_lo, e_hi, steps), format_of(format)), out);
  });
}

dpb_status dpb_dipole_sweep_report(const double* g_values, size_t n_g, const int* m_values, size_t n_m,
                                   const double* cutoffs, size_t n_cutoffs, const dpb_grid* grid,
                                   double ring_radius, size_t* negative_total, dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    db::SweepConfig config;
    config.g_values = array_of(g_values, n_g, "g values are null");
    config.m_values = array_of(m_values, n_m, "m values are null");
    config.cutoffs = array_of(cutoffs, n_cutoffs, "cutoffs are null");
    config.grid = grid_of(grid);
    config.ring_radius = ring_radius;
    const auto rows = db::physical_dipole_sweep(config);
    std::size_t total = 0;
    for (const auto& r : rows) total += r.negative_count;
    auto text = db::render(rows, format_of(format));
    if (negative_total) *negative_total = total;
    hand_out(std::move(text), out);
  });
}

dpb_status dpb_validate(const dpb_config* config, int* all_passed, dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    const auto report = db::run_validation(config->constants(), config->leptons());
    auto text = db::render(report, format_of(format));
    if (all_passed) *all_passed = report.all_passed();
    hand_out(std::move(text), out);
  });
}

dpb_status dpb_full_report(const dpb_config* config, int* all_passed, dpb_format format, dpb_text** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    const auto f = format_of(format);
    const auto validation = db::run_validation(config->constants(), config->leptons());
    auto text = combine(f, {{"masses", db::render(all_spectra(config), f)},
                            {"validation", db::render(validation, f)},
                            {"dipole_sweep", db::render(db::physical_dipole_sweep(db::SweepConfig{}), f)}});
    if (all_passed) *all_passed = validation.all_passed();
    hand_out(std::move(text), out);
  });
}

}  // extern "C"
