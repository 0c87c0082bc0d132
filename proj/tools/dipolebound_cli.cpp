// Command-line front end. Talks to the library only through the C API.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dipolebound/dipolebound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

struct TextDeleter {
  void operator()(dpb_text* t) const { dpb_text_destroy(t); }
};
struct ConfigDeleter {
  void operator()(dpb_config* c) const { dpb_config_destroy(c); }
};
using Text = std::unique_ptr<dpb_text, TextDeleter>;
using Config = std::unique_ptr<dpb_config, ConfigDeleter>;

// Configuration problems and bad arguments are usage errors; everything the
// numerics reject is a domain error.
void check(dpb_status status) {
  if (status == DPB_OK) return;
  const int code = status == DPB_ERR_CONFIG || status == DPB_ERR_INVALID_ARGUMENT ? kExitUsage : kExitDomain;
  throw Failure{code, std::string(dpb_status_name(status)) + ": " + dpb_last_error()};
}

struct Globals {
  std::optional<double> alpha_inv;
  std::optional<double> me_mev;
  std::string config_path;
  std::string format_name;
  std::string out;
};

struct MassesOpts {
  std::string formula = "all";
  int max_n = 3;
};

struct SeriesOpts {
  double s = 0.0;
  int m = 0;
  double beta = 1.0;
  double eta = 0.0;
  double sigma = 0.0;
  double g = 0.0;
  int nu_max = 20;
  std::string closure = "auto";
  double b0 = 1.0;
};

struct TerminateOpts {
  std::string which = "all";
  std::vector<double> s{0.0};
  int m = 0;
  int nu = 0;
  int nu_max = 10;
  double eta = 1.0;
  double g = 0.0;
  double beta = 1.0;
  double b0 = 1.0;
};

struct SpectrumOpts {
  std::string potential = "far";
  double g = 1.0;
  double eta = 2.0;
  double kappa = 1.0;
  int m = 0;
  double ring_a = 0.1;
  double rho_min = 1e-4;
  double rho_max = 60.0;
  int n_points = 2000;
  std::string spacing = "log";
  std::vector<double> cutoffs;
  int n_lowest = 3;
  double threshold = 1e-10;
  bool sweep = false;
  bool mismatch = false;
  double e_lo = -5.0;
  double e_hi = -1e-4;
  int steps = 200;
};

Config make_config(const Globals& g) {
  dpb_config* raw = nullptr;
  check(dpb_config_create(&raw));
  Config config(raw);
  std::string path = g.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("DIPOLE_BOUND_CONFIG"); env && *env) path = env;
  }
  if (!path.empty()) check(dpb_config_load_file(config.get(), path.c_str()));
  if (g.alpha_inv) check(dpb_config_set(config.get(), "alpha_inverse", *g.alpha_inv));
  if (g.me_mev) check(dpb_config_set(config.get(), "electron_mass_mev", *g.me_mev));
  return config;
}

dpb_format resolve_format(const Globals& g) {
  if (g.format_name == "csv") return DPB_FORMAT_CSV;
  if (g.format_name == "json") return DPB_FORMAT_JSON;
  if (g.format_name == "text") return DPB_FORMAT_TEXT;
  return g.out.empty() && isatty(STDOUT_FILENO) ? DPB_FORMAT_TEXT : DPB_FORMAT_CSV;
}

void emit(const Text& text, const Globals& g) { check(dpb_text_write(text.get(), g.out.c_str())); }

template <typename Fn>
Text produce(Fn&& fn) {
  dpb_text* raw = nullptr;
  check(fn(&raw));
  return Text(raw);
}

int run_masses(const Globals& g, const MassesOpts& o) {
  auto config = make_config(g);
  std::vector<dpb_formula> formulas;
  if (o.formula == "all") {
    formulas = {DPB_FORMULA_BARUT, DPB_FORMULA_MOD12, DPB_FORMULA_MOD13, DPB_FORMULA_MOD14};
  } else {
    dpb_formula f{};
    check(dpb_formula_from_name(o.formula.c_str(), &f));
    formulas.push_back(f);
  }
  emit(produce([&](dpb_text** t) {
         return dpb_masses_report(config.get(), formulas.data(), formulas.size(), o.max_n, resolve_format(g), t);
       }),
       g);
  return kExitOk;
}

int run_series(const Globals& g, const SeriesOpts& o, bool from_g) {
  dpb_series_params p = dpb_series_params_default();
  p.s = o.s;
  p.m_q = o.m;
  p.beta = o.beta;
  p.eta = from_g ? 2.0 * o.m * o.g : o.eta;
  p.sigma = from_g ? -o.g * o.g : o.sigma;
  p.nu_max = o.nu_max;
  const bool truncated = o.closure == "truncated" || (o.closure == "auto" && p.sigma != 0.0);
  const dpb_closure closure = truncated ? DPB_CLOSURE_TRUNCATED : DPB_CLOSURE_CASE_C;
  dpb_series* raw = nullptr;
  check(dpb_series_generate(&p, closure, o.b0, &raw));
  std::unique_ptr<dpb_series, void (*)(dpb_series*)> series(raw, dpb_series_destroy);
  emit(produce([&](dpb_text** t) { return dpb_series_render(series.get(), resolve_format(g), t); }), g);
  return kExitOk;
}

int run_terminate(const Globals& g, const TerminateOpts& o, bool from_g) {
  const double eta = from_g ? 2.0 * o.m * o.g : o.eta;
  const auto format = resolve_format(g);
  if (o.which == "all") {
    int possible = 0;
    emit(produce([&](dpb_text** t) {
           return dpb_no_bound_state_report(o.m, eta, o.s.data(), o.s.size(), 0, o.nu_max, o.beta, &possible,
                                            format, t);
         }),
         g);
    return kExitOk;
  }
  if (o.s.size() != 1) throw Failure{kExitUsage, "--case " + o.which + " takes a single --s value"};
  const dpb_case which = o.which == "a" ? DPB_CASE_A : o.which == "b" ? DPB_CASE_B : DPB_CASE_C;
  emit(produce([&](dpb_text** t) {
         return dpb_terminate_report(which, o.s.front(), o.m, o.nu, eta, o.beta, o.b0, format, t);
       }),
       g);
  return kExitOk;
}

int run_spectrum(const Globals& g, const SpectrumOpts& o) {
  const auto format = resolve_format(g);
  const dpb_grid grid{o.rho_min, o.rho_max, o.n_points,
                      o.spacing == "uniform" ? DPB_SPACING_UNIFORM : DPB_SPACING_LOG};
  if (o.sweep) {
    const std::vector<double> gs{0.5, 1.0, 2.0, 5.0};
    const std::vector<int> ms{0, 1, 2, 3};
    const std::vector<double> cutoffs =
        o.cutoffs.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4} : o.cutoffs;
    emit(produce([&](dpb_text** t) {
           return dpb_dipole_sweep_report(gs.data(), gs.size(), ms.data(), ms.size(), cutoffs.data(),
                                          cutoffs.size(), &grid, o.ring_a, nullptr, format, t);
         }),
         g);
    return kExitOk;
  }

  dpb_potential_spec spec{};
  spec.m_q = o.m;
  spec.g = o.g;
  spec.eta = o.eta;
  spec.kappa = o.kappa;
  spec.ring_radius = o.ring_a;
  if (o.potential == "far") spec.kind = DPB_POTENTIAL_FAR_FIELD;
  else if (o.potential == "ring") spec.kind = DPB_POTENTIAL_FULL_RING;
  else if (o.potential == "eta-only") spec.kind = DPB_POTENTIAL_ETA_ONLY;
  else spec.kind = DPB_POTENTIAL_COULOMB;

  if (o.mismatch) {
    emit(produce([&](dpb_text** t) {
           return dpb_mismatch_report(&spec, &grid, o.e_lo, o.e_hi, o.steps, format, t);
         }),
         g);
    return kExitOk;
  }
  emit(produce([&](dpb_text** t) {
         return dpb_spectrum_report(&spec, &grid, o.cutoffs.data(), o.cutoffs.size(),
                                    static_cast<size_t>(o.n_lowest), o.threshold, nullptr, format, t);
       }),
       g);
  return kExitOk;
}

int run_validate(const Globals& g, bool full) {
  auto config = make_config(g);
  int passed = 0;
  emit(produce([&](dpb_text** t) {
         return full ? dpb_full_report(config.get(), &passed, resolve_format(g), t)
                     : dpb_validate(config.get(), &passed, resolve_format(g), t);
       }),
       g);
  if (!passed) {
    std::fprintf(stderr, "dipolebound: validation failed\n");
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of a charged particle in a magnetic dipole field, and dipole-model lepton mass "
               "formulas."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--alpha-inv", globals.alpha_inv, "Inverse fine-structure constant (default 137.035999)");
  app.add_option("--me-mev", globals.me_mev, "Electron mass in MeV (default 0.51099895)");
  app.add_option("--config", globals.config_path,
                 "Constants file of `key = value` lines; defaults to $DIPOLE_BOUND_CONFIG");
  app.add_option("--format", globals.format_name, "Output format (text on a terminal, csv otherwise)")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", globals.out, "Write the report to this file instead of standard output");

  MassesOpts masses;
  auto* masses_cmd = app.add_subcommand(
      "masses",
      "Lepton mass ratios m_n/m_e from the dipole-model formulas:\n"
      "  barut: 1 + (3/2) alpha^-1 sum_{l<=n} l^4\n"
      "  mod12: 1 + (1/2) alpha^-1 sum_{l<=n} C(3,l) l^4\n"
      "  mod13: C(3,n) 2^(-n^2) alpha^-n\n"
      "  mod14: C(3,n) C(2,n) (alpha^-1/4)^n\n"
      "with relative errors against the measured mu and tau ratios.");
  masses_cmd->add_option("--formula", masses.formula, "barut, mod12, mod13, mod14 or all")
      ->check(CLI::IsMember({"all", "barut", "mod12", "mod13", "mod14"}));
  masses_cmd->add_option("--max-n", masses.max_n, "Highest generation index")->check(CLI::Range(0, 5000));

  SeriesOpts series;
  auto* series_cmd = app.add_subcommand(
      "series",
      "Power-series coefficients of R = rho^|m| exp(-beta rho) sum b_nu rho^(s+nu) for\n"
      "  R'' + R'/rho - m^2/rho^2 R + eta/rho^3 R + sigma/rho^4 R + curly_e R = 0,\n"
      "using q_nu b_{nu+1} - beta p_nu b_nu + eta b_{nu+2} + sigma b_{nu+3} = 0 with\n"
      "q_nu = (s+nu+1)(s+nu+2|m|+1), p_nu = 2s+2nu+2|m|+1. Closures: case-c (sigma = 0,\n"
      "forward chain), truncated (linear system with b_{nu>nu_max} = 0) or auto (case-c when\n"
      "sigma = 0). Reports residuals and the tail growth class.");
  series_cmd->add_option("--s", series.s, "Indicial exponent");
  series_cmd->add_option("--m", series.m, "Angular quantum number m_q");
  series_cmd->add_option("--beta", series.beta, "Decay constant beta = sqrt(-curly_e) >= 0");
  auto* series_eta = series_cmd->add_option("--eta", series.eta, "Coupling of the 1/rho^3 term");
  auto* series_sigma = series_cmd->add_option("--sigma", series.sigma, "Coupling of the 1/rho^4 term");
  auto* series_g = series_cmd->add_option("--g", series.g, "Dipole coupling; sets eta = 2 m g, sigma = -g^2");
  series_g->excludes(series_eta)->excludes(series_sigma);
  series_cmd->add_option("--nu-max", series.nu_max, "Highest coefficient order");
  series_cmd->add_option("--closure", series.closure, "auto, case-c or truncated")
      ->check(CLI::IsMember({"auto", "case-c", "truncated"}));
  series_cmd->add_option("--b0", series.b0, "Leading coefficient");

  TerminateOpts term;
  auto* term_cmd = app.add_subcommand(
      "terminate",
      "Termination conditions for the series:\n"
      "  a: b_{nu+1} = b_{nu+3} = 0 forces beta p_nu = 0\n"
      "  b: b_nu = b_{nu+3} = 0 needs q_nu q_{nu+1} + eta beta p_{nu+1} = 0\n"
      "  c: b_{nu+3} = 0 with p_{nu+2} = 0; reports b_{nu+1}, b_{nu+2}\n"
      "  all: every case over s values and nu = 0..nu-max, with a bound-state verdict.");
  term_cmd->add_option("--case", term.which, "a, b, c or all")->check(CLI::IsMember({"a", "b", "c", "all"}));
  term_cmd->add_option("--s", term.s, "Indicial exponent(s)")->delimiter(',');
  term_cmd->add_option("--m", term.m, "Angular quantum number m_q");
  term_cmd->add_option("--nu", term.nu, "Order at which the series terminates (cases a, b, c)");
  term_cmd->add_option("--nu-max", term.nu_max, "Highest order scanned by --case all");
  auto* term_eta = term_cmd->add_option("--eta", term.eta, "Coupling of the 1/rho^3 term");
  term_cmd->add_option("--g", term.g, "Dipole coupling; sets eta = 2 m g")->excludes(term_eta);
  term_cmd->add_option("--beta", term.beta, "beta for case c");
  term_cmd->add_option("--b0", term.b0, "b_nu for case c");

  SpectrumOpts spec;
  auto* spec_cmd = app.add_subcommand(
      "spectrum",
      "Direct spectrum of -R'' - R'/rho + V R = curly_e R with Dirichlet walls at rho-min and rho-max.\n"
      "Potentials:\n"
      "  far:      V = (m/rho - g/rho^2)^2\n"
      "  ring:     V = (m/rho - g rho/(rho^2 + a^2)^(3/2))^2\n"
      "  eta-only: V = m^2/rho^2 - eta/rho^3\n"
      "  coulomb:  V = m^2/rho^2 - kappa/rho, exact curly_e = -kappa^2/(2 n_r + 2|m| + 1)^2\n"
      "Counts negative eigenvalues, reports the lowest ones and a cutoff scan over --cutoffs.\n"
      "--mismatch prints the shooting mismatch curve; --sweep runs the physical-dipole grid.");
  spec_cmd->add_option("--potential", spec.potential, "far, ring, eta-only or coulomb")
      ->check(CLI::IsMember({"far", "ring", "eta-only", "coulomb"}));
  auto* spec_g = spec_cmd->add_option("--g", spec.g, "Dipole coupling (far, ring)");
  auto* spec_eta = spec_cmd->add_option("--eta", spec.eta, "Coupling of the 1/rho^3 term (eta-only)");
  spec_g->excludes(spec_eta);
  spec_cmd->add_option("--kappa", spec.kappa, "Coulomb strength");
  spec_cmd->add_option("--m", spec.m, "Angular quantum number m_q");
  spec_cmd->add_option("--ring-a", spec.ring_a, "Ring radius a");
  spec_cmd->add_option("--rho-min", spec.rho_min, "Inner wall");
  spec_cmd->add_option("--rho-max", spec.rho_max, "Outer wall");
  spec_cmd->add_option("--n-points", spec.n_points, "Number of cells");
  spec_cmd->add_option("--spacing", spec.spacing, "uniform or log")->check(CLI::IsMember({"uniform", "log"}));
  spec_cmd->add_option("--cutoffs", spec.cutoffs, "Inner cutoffs for the convergence scan, descending")
      ->delimiter(',');
  spec_cmd->add_option("--n-lowest", spec.n_lowest, "Number of eigenvalues to report")->check(CLI::Range(1, 100));
  spec_cmd->add_option("--threshold", spec.threshold, "Eigenvalues below -threshold count as negative");
  auto* spec_sweep = spec_cmd->add_flag("--sweep", spec.sweep,
                                        "Physical dipole sweep: g in {0.5,1,2,5}, m in {0..3}, both forms");
  auto* spec_mismatch = spec_cmd->add_flag("--mismatch", spec.mismatch, "Shooting mismatch over [e-lo, e-hi]");
  spec_sweep->excludes(spec_mismatch);
  spec_cmd->add_option("--e-lo", spec.e_lo, "Lower end of the mismatch window");
  spec_cmd->add_option("--e-hi", spec.e_hi, "Upper end of the mismatch window (< 0)");
  spec_cmd->add_option("--steps", spec.steps, "Mismatch samples minus one")->check(CLI::Range(1, 100000));

  auto* validate_cmd = app.add_subcommand(
      "validate",
      "Runs every cross-check: mass-formula values and identities, the termination theorems, the\n"
      "exp(2 beta rho) growth law, the 2D Coulomb benchmark of the spectral solver, shooting vs\n"
      "eigenvalue agreement, the perfect-square identity, the physical-dipole no-bound-state sweep and\n"
      "the eta-only cutoff divergence. Exit status 1 if any check fails.");
  auto* report_cmd = app.add_subcommand(
      "report", "Mass spectra of all formulas, the validation checks and the physical-dipole sweep.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*masses_cmd) return run_masses(globals, masses);
    if (*series_cmd) return run_series(globals, series, series_g->count() > 0);
    if (*term_cmd) return run_terminate(globals, term, term_cmd->get_option("--g")->count() > 0);
    if (*spec_cmd) return run_spectrum(globals, spec);
    if (*validate_cmd) return run_validate(globals, false);
    if (*report_cmd) return run_validate(globals, true);
  } catch (const Failure& f) {
    std::fprintf(stderr, "dipolebound: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitUsage;
}
