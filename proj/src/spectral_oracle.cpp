#include "dipolebound/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "dipolebound/error.hpp"
#include "dipolebound/parallel.hpp"

namespace dipolebound {
namespace {

constexpr double kRescale = 1e100;

std::vector<double> grid_faces(const GridSpec& grid) {
  const auto n = static_cast<std::size_t>(grid.n_points);
  std::vector<double> faces(n + 1);
  if (grid.spacing == Spacing::Uniform) {
    const double h = (grid.rho_max - grid.rho_min) / grid.n_points;
    for (std::size_t i = 0; i <= n; ++i) faces[i] = grid.rho_min + h * static_cast<double>(i);
  } else {
    const double x0 = std::log(grid.rho_min);
    const double h = (std::log(grid.rho_max) - x0) / grid.n_points;
    for (std::size_t i = 0; i <= n; ++i) faces[i] = std::exp(x0 + h * static_cast<double>(i));
  }
  faces.front() = grid.rho_min;
  faces.back() = grid.rho_max;
  return faces;
}

std::vector<double> centers_of(const GridSpec& grid, const std::vector<double>& faces) {
  std::vector<double> c(faces.size() - 1);
  for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
    c[i] = grid.spacing == Spacing::Uniform ? 0.5 * (faces[i] + faces[i + 1])
                                            : std::sqrt(faces[i] * faces[i + 1]);
  }
  return c;
}

// Fixed matching cell: the bottom of the potential, kept away from the ends.
std::size_t matching_index(const DiscretizedProblem& p) {
  const auto n = p.potential.size();
  const auto it = std::min_element(p.potential.begin(), p.potential.end());
  const auto idx = static_cast<std::size_t>(it - p.potential.begin());
  return std::clamp<std::size_t>(idx, 1, n - 3);
}

double positive_cutoff_check(double cutoff) {
  if (!(cutoff > 0.0)) throw ContractError("cutoffs must be positive");
  return cutoff;
}

}  // namespace

PotentialSpec PotentialSpec::far_field(double g, int m_q) {
  return {PotentialKind::DipoleFarField, couplings_from_field(g, m_q), 0.0, 0.0, m_q};
}

PotentialSpec PotentialSpec::full_ring(double g, int m_q, double ring_radius) {
  if (!(ring_radius >= 0.0)) throw DomainError("ring radius must be non-negative");
  return {PotentialKind::DipoleFullRing, couplings_from_field(g, m_q), 0.0, ring_radius, m_q};
}

PotentialSpec PotentialSpec::eta_only(double eta, int m_q) {
  return {PotentialKind::DipoleEtaOnly, Couplings::free_form(eta, 0.0, m_q), 0.0, 0.0, m_q};
}

PotentialSpec PotentialSpec::coulomb(double kappa, int m_q) {
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  PotentialSpec s;
  s.kind = PotentialKind::Coulomb2D;
  s.couplings.m_q = m_q;
  s.kappa = kappa;
  s.m_q = m_q;
  return s;
}

double PotentialSpec::operator()(double rho) const {
  switch (kind) {
    case PotentialKind::DipoleFarField:
    case PotentialKind::DipoleEtaOnly:
      return effective_potential(couplings, DipoleField{1.0, 0.0, PotentialForm::FarField}, rho);
    case PotentialKind::DipoleFullRing:
      return effective_potential(couplings, DipoleField{1.0, ring_radius, PotentialForm::FullRing}, rho);
    case PotentialKind::Coulomb2D: {
      const double m = m_q;
      return (m * m) / (rho * rho) - kappa / rho;
    }
  }
  return 0.0;
}

double PotentialSpec::coupling_g() const {
  return couplings.g.value_or(0.0);
}

void GridSpec::validate() const {
  if (!std::isfinite(rho_min) || !std::isfinite(rho_max) || !(rho_min > 0.0) || !(rho_max > rho_min))
    throw ConfigError(fmt::format("grid needs 0 < rho_min < rho_max, got [{}, {}]", rho_min, rho_max));
  if (n_points < 100) throw ConfigError(fmt::format("grid needs n_points >= 100, got {}", n_points));
}

std::vector<double> grid_centers(const GridSpec& grid) {
  grid.validate();
  return centers_of(grid, grid_faces(grid));
}

DiscretizedProblem discretize(const PotentialSpec& spec, const GridSpec& grid) {
  grid.validate();
  const auto faces = grid_faces(grid);
  const auto n = static_cast<std::size_t>(grid.n_points);

  DiscretizedProblem p;
  p.grid = grid;
  p.centers = centers_of(grid, faces);
  p.potential.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.potential[i] = spec(p.centers[i]);

  std::vector<double> measure(n);
  for (std::size_t i = 0; i < n; ++i) measure[i] = 0.5 * (faces[i + 1] - faces[i]) * (faces[i + 1] + faces[i]);

  // Conductances: k[0] and k[n] connect the outer cells to the Dirichlet
  // walls, k[i] couples cells i-1 and i.
  std::vector<double> k(n + 1);
  k[0] = faces[0] / (p.centers[0] - faces[0]);
  k[n] = faces[n] / (faces[n] - p.centers[n - 1]);
  for (std::size_t i = 1; i < n; ++i) k[i] = faces[i] / (p.centers[i] - p.centers[i - 1]);

  p.matrix.diagonal.resize(n);
  p.matrix.off_diagonal.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) p.matrix.diagonal[i] = (k[i] + k[i + 1]) / measure[i] + p.potential[i];
  for (std::size_t i = 0; i + 1 < n; ++i)
    p.matrix.off_diagonal[i] = -k[i + 1] / std::sqrt(measure[i] * measure[i + 1]);
  return p;
}

std::size_t count_negative_eigenvalues(const DiscretizedProblem& problem, double threshold) {
  if (!(threshold >= 0.0)) throw DomainError("threshold must be non-negative");
  return count_below(problem.matrix, -threshold);
}

double lowest_eigenvalue(const DiscretizedProblem& problem) {
  return eigenvalue(problem, 0);
}

double eigenvalue(const DiscretizedProblem& problem, std::size_t k) {
  return kth_eigenvalue(problem.matrix, k, 1e-10);
}

double shoot(const DiscretizedProblem& problem, double curly_e) {
  if (!(curly_e < 0.0)) throw DomainError("shooting searches bound states: curly_e must be negative");
  const auto& d = problem.matrix.diagonal;
  const auto& e = problem.matrix.off_diagonal;
  const std::size_t n = d.size();
  const std::size_t m = matching_index(problem);

  // Outward: y_{-1} = 0 (wall), y_0 = 1.
  double y_prev = 0.0, y = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lower = i > 0 ? e[i - 1] * y_prev : 0.0;
    const double y_next = -((d[i] - curly_e) * y + lower) / e[i];
    y_prev = y;
    y = y_next;
    if (std::abs(y) > kRescale) {
      y_prev /= kRescale;
      y /= kRescale;
    }
  }
  // (y_prev, y) = (y_m, y_{m+1}) after one more step.
  {
    const double lower = m > 0 ? e[m - 1] * y_prev : 0.0;
    const double y_next = -((d[m] - curly_e) * y + lower) / e[m];
    y_prev = y;
    y = y_next;
  }

  // Inward: z_n = 0 (wall), z_{n-1} = 1.
  double z_next = 0.0, z = 1.0;
  for (std::size_t i = n - 1; i > m + 1; --i) {
    const double upper = i + 1 < n ? e[i] * z_next : 0.0;
    const double z_prev = -((d[i] - curly_e) * z + upper) / e[i - 1];
    z_next = z;
    z = z_prev;
    if (std::abs(z) > kRescale) {
      z_next /= kRescale;
      z /= kRescale;
    }
  }
  // (z, z_next) = (z_m, z_{m+1}) after one more step.
  {
    const std::size_t i = m + 1;
    const double upper = i + 1 < n ? e[i] * z_next : 0.0;
    const double z_prev = -((d[i] - curly_e) * z + upper) / e[i - 1];
    z_next = z;
    z = z_prev;
  }

  const double norm = std::hypot(y_prev, y) * std::hypot(z, z_next);
  if (!std::isfinite(norm) || norm == 0.0) throw DomainError("shooting rescaling failed");
  return (y * z - y_prev * z_next) / norm;
}

double shoot(const PotentialSpec& spec, const GridSpec& grid, double curly_e) {
  return shoot(discretize(spec, grid), curly_e);
}

std::vector<MismatchSample> mismatch_curve(const DiscretizedProblem& problem, double e_lo, double e_hi,
                                           int steps) {
  if (steps < 1 || !(e_lo < e_hi)) throw DomainError("mismatch curve needs e_lo < e_hi and steps >= 1");
  std::vector<MismatchSample> out;
  out.reserve(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    const double energy = e_lo + (e_hi - e_lo) * i / steps;
    out.push_back({energy, shoot(problem, energy)});
  }
  return out;
}

std::vector<double> shooting_roots(const DiscretizedProblem& problem, double e_lo, double e_hi, int steps) {
  const auto curve = mismatch_curve(problem, e_lo, e_hi, steps);
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double a = curve[i].curly_e, b = curve[i + 1].curly_e;
    double fa = curve[i].mismatch, fb = curve[i + 1].mismatch;
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if ((fa > 0.0) == (fb > 0.0) || fb == 0.0) continue;
    while (b - a > 1e-12) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double fm = shoot(problem, mid);
      if ((fm > 0.0) == (fa > 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  if (!curve.empty() && curve.back().mismatch == 0.0) roots.push_back(curve.back().curly_e);
  return roots;
}

ConvergenceReport cutoff_convergence_scan(const PotentialSpec& spec, const GridSpec& base,
                                          const std::vector<double>& cutoffs, double threshold) {
  if (cutoffs.size() < 4) throw ContractError("cutoff scan needs at least four cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    positive_cutoff_check(cutoffs[i]);
    if (i > 0 && !(cutoffs[i] < cutoffs[i - 1])) throw ContractError("cutoffs must be strictly descending");
  }

  ConvergenceReport report;
  report.trace = parallel_map(cutoffs.size(), [&](std::size_t i) {
    GridSpec grid = base;
    grid.rho_min = cutoffs[i];
    const auto problem = discretize(spec, grid);
    return CutoffPoint{cutoffs[i], lowest_eigenvalue(problem), count_negative_eigenvalues(problem, threshold)};
  });

  const auto& t = report.trace;
  const std::size_t n = t.size();
  auto small_step = [&](std::size_t i) {
    return std::abs(t[i].lowest - t[i - 1].lowest) < 1e-6 * std::max(1.0, std::abs(t[i].lowest));
  };
  report.converged = small_step(n - 1) && small_step(n - 2);
  return report;
}

GridSpec coulomb_grid(int n_points) {
  return GridSpec{1e-10, 60.0, n_points, Spacing::Uniform};
}

CoulombBenchmark coulomb_benchmark(double kappa, int m_q, int n_r, const GridSpec& grid) {
  if (n_r < 0) throw DomainError("n_r must be non-negative");
  const double denom = 2.0 * n_r + 2.0 * std::abs(m_q) + 1.0;
  const double analytic = -(kappa * kappa) / (denom * denom);
  const double numeric = eigenvalue(discretize(PotentialSpec::coulomb(kappa, m_q), grid),
                                    static_cast<std::size_t>(n_r));
  return {numeric, analytic, std::abs(numeric - analytic) / std::abs(analytic)};
}

double perfect_square_residual(const Couplings& couplings, const GridSpec& grid) {
  if (!couplings.physical || !couplings.g)
    throw ContractError("perfect-square check needs couplings built from a field; use the eta-only model");
  const DipoleField far{1.0, 0.0, PotentialForm::FarField};
  const double m = couplings.m_q;
  const double g = *couplings.g;
  double worst = 0.0;
  for (double rho : grid_centers(grid)) {
    const double v = effective_potential(couplings, far, rho);
    const double inv = 1.0 / rho;
    const double root = m * inv - g * (inv * inv);
    worst = std::max(worst, std::abs(v - root * root) / std::max(1.0, v));
  }
  return worst;
}

EigenScanResult eigen_scan(const PotentialSpec& spec, const GridSpec& grid, const std::vector<double>& cutoffs,
                           std::size_t n_lowest, double threshold) {
  const auto problem = discretize(spec, grid);
  EigenScanResult r;
  r.grid = grid;
  r.negative_count = count_negative_eigenvalues(problem, threshold);
  const std::size_t count = std::min(n_lowest, problem.matrix.size());
  for (std::size_t k = 0; k < count; ++k) r.lowest_eigenvalues.push_back(eigenvalue(problem, k));
  if (!cutoffs.empty()) {
    auto conv = cutoff_convergence_scan(spec, grid, cutoffs, threshold);
    r.converged = conv.converged;
    r.cutoff_trace = std::move(conv.trace);
  }
  return r;
}

std::vector<ScanRow> physical_dipole_sweep(const SweepConfig& config) {
  struct Point {
    double g;
    int m;
    PotentialKind form;
  };
  std::vector<Point> points;
  auto gs = config.g_values;
  auto ms = config.m_values;
  auto forms = config.forms;
  std::sort(gs.begin(), gs.end());
  std::sort(ms.begin(), ms.end());
  std::sort(forms.begin(), forms.end());
  for (double g : gs)
    for (int m : ms)
      for (PotentialKind f : forms) {
        if (f != PotentialKind::DipoleFarField && f != PotentialKind::DipoleFullRing)
          throw ContractError("physical sweep covers the far-field and full-ring forms only");
        points.push_back({g, m, f});
      }

  const auto reports = parallel_map(points.size(), [&](std::size_t i) {
    const auto& pt = points[i];
    const auto spec = pt.form == PotentialKind::DipoleFarField
                          ? PotentialSpec::far_field(pt.g, pt.m)
                          : PotentialSpec::full_ring(pt.g, pt.m, config.ring_radius);
    return cutoff_convergence_scan(spec, config.grid, config.cutoffs, config.threshold);
  });

  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& t : reports[i].trace) {
      rows.push_back({points[i].g, points[i].m, points[i].form, t.rho_min, config.grid.n_points,
                      t.negative_count, t.lowest, reports[i].converged});
    }
  }
  return rows;
}

std::vector<double> eta_only_cutoffs() {
  return {0.2, 0.1, 0.05, 0.02, 0.01};
}

const char* to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::DipoleFarField: return "far_field";
    case PotentialKind::DipoleFullRing: return "full_ring";
    case PotentialKind::DipoleEtaOnly: return "eta_only";
    case PotentialKind::Coulomb2D: return "coulomb";
  }
  return "?";
}

const char* to_string(Spacing spacing) {
  return spacing == Spacing::Uniform ? "uniform" : "log";
}

}  // namespace dipolebound
