#pragma once

#include <cstddef>
#include <vector>

#include "dipolebound/dipole_potential.hpp"
#include "dipolebound/tridiagonal.hpp"

namespace dipolebound {

// Direct spectral check of the radial operator
//
//   -R'' - R'/rho + V(rho) R = curly_e R
//
// on [rho_min, rho_max] with Dirichlet walls. The operator is discretised in
// flux form on cells [f_i, f_{i+1}]: the kinetic part becomes a weighted
// graph Laplacian (conductances f/(c_{i+1} - c_i), cell measures
// (f_{i+1}^2 - f_i^2)/2) and is symmetrised by the square root of the cell
// measure. That symmetrisation is the discrete form of chi = sqrt(rho) R,
// which in the continuum shifts the centrifugal term m^2 -> m^2 - 1/4. The
// Laplacian part is positive semidefinite, so V >= 0 cannot produce a
// negative eigenvalue.

enum class PotentialKind { DipoleFarField, DipoleFullRing, DipoleEtaOnly, Coulomb2D };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::DipoleFarField;
  Couplings couplings;       // dipole kinds
  double kappa = 0.0;        // Coulomb2D: V = m^2/rho^2 - kappa/rho
  double ring_radius = 0.0;  // DipoleFullRing
  int m_q = 0;

  static PotentialSpec far_field(double g, int m_q);
  static PotentialSpec full_ring(double g, int m_q, double ring_radius);
  /// m^2/rho^2 - eta/rho^3; sigma forced to 0.
  static PotentialSpec eta_only(double eta, int m_q);
  static PotentialSpec coulomb(double kappa, int m_q);

  double operator()(double rho) const;
  /// g for the physical dipole kinds, 0 otherwise.
  double coupling_g() const;
};

enum class Spacing { Uniform, Logarithmic };

struct GridSpec {
  double rho_min = 1e-4;
  double rho_max = 60.0;
  int n_points = 2000;
  Spacing spacing = Spacing::Logarithmic;

  /// Throws ConfigError unless 0 < rho_min < rho_max and n_points >= 100.
  void validate() const;
};

struct DiscretizedProblem {
  GridSpec grid;
  std::vector<double> centers;    // rho at each unknown
  std::vector<double> potential;  // V(centers)
  SymmetricTridiagonal matrix;
};

DiscretizedProblem discretize(const PotentialSpec& spec, const GridSpec& grid);

/// Exact number of eigenvalues below -threshold of the discrete operator.
std::size_t count_negative_eigenvalues(const DiscretizedProblem& problem, double threshold);

double lowest_eigenvalue(const DiscretizedProblem& problem);

/// k-th eigenvalue (k = 0 lowest), bracket width <= 1e-10 or a few ulps.
double eigenvalue(const DiscretizedProblem& problem, std::size_t k);

/// Matching mismatch at curly_e < 0: the discrete equations are solved
/// outward from rho_min and inward from rho_max and compared at a fixed
/// matching cell through their normalised Wronskian (Casoratian). Zero
/// exactly at eigenvalues, positive below the spectrum. Both solutions are
/// rescaled on the fly. Throws DomainError for curly_e >= 0.
double shoot(const DiscretizedProblem& problem, double curly_e);
double shoot(const PotentialSpec& spec, const GridSpec& grid, double curly_e);

struct MismatchSample {
  double curly_e;
  double mismatch;
};

/// `steps` + 1 evenly spaced samples over [e_lo, e_hi].
std::vector<MismatchSample> mismatch_curve(const DiscretizedProblem& problem, double e_lo, double e_hi,
                                           int steps);

/// Sign changes of the mismatch over the sampled window, each refined by
/// bisection to 1e-12. Ascending.
std::vector<double> shooting_roots(const DiscretizedProblem& problem, double e_lo, double e_hi, int steps);

inline constexpr double kScanBoxLow = -25.0;
inline constexpr double kScanBoxHigh = -1e-6;
inline constexpr double kDefaultThreshold = 1e-10;

struct CutoffPoint {
  double rho_min;
  double lowest;
  std::size_t negative_count;
};

struct ConvergenceReport {
  std::vector<CutoffPoint> trace;
  /// Cauchy test: the last two differences of the lowest eigenvalue are
  /// each below 1e-6 * max(1, |curly_e|).
  bool converged = false;
};

/// Re-discretises with each inner cutoff (strictly descending, at least
/// four) keeping the rest of `base`. Throws ContractError otherwise.
ConvergenceReport cutoff_convergence_scan(const PotentialSpec& spec, const GridSpec& base,
                                          const std::vector<double>& cutoffs,
                                          double threshold = kDefaultThreshold);

struct CoulombBenchmark {
  double numeric;
  double analytic;  // -kappa^2 / (2 n_r + 2|m| + 1)^2
  double rel_error;
};

CoulombBenchmark coulomb_benchmark(double kappa, int m_q, int n_r, const GridSpec& grid);

/// Uniform grid on [1e-10, 60] used to validate the discretisation against
/// the Coulomb problem.
GridSpec coulomb_grid(int n_points = 4000);

/// max over the grid centres of |V_eff - (m/rho - g/rho^2)^2| / max(1, V_eff).
/// Throws ContractError for free-form couplings.
double perfect_square_residual(const Couplings& couplings, const GridSpec& grid);

/// Centres of the cells of a grid.
std::vector<double> grid_centers(const GridSpec& grid);

struct EigenScanResult {
  GridSpec grid;
  std::size_t negative_count = 0;
  std::vector<double> lowest_eigenvalues;
  bool converged = false;
  std::vector<CutoffPoint> cutoff_trace;
};

/// Spectrum summary on `grid` plus a cutoff scan. An empty cutoff list skips
/// the scan (converged stays false).
EigenScanResult eigen_scan(const PotentialSpec& spec, const GridSpec& grid, const std::vector<double>& cutoffs,
                           std::size_t n_lowest = 3, double threshold = kDefaultThreshold);

struct ScanRow {
  double g = 0.0;
  int m_q = 0;
  PotentialKind form = PotentialKind::DipoleFarField;
  double rho_min = 0.0;
  int n_points = 0;
  std::size_t negative_count = 0;
  double lowest_e = 0.0;
  bool converged = false;
};

struct SweepConfig {
  std::vector<double> g_values{0.5, 1.0, 2.0, 5.0};
  std::vector<int> m_values{0, 1, 2, 3};
  std::vector<PotentialKind> forms{PotentialKind::DipoleFarField, PotentialKind::DipoleFullRing};
  std::vector<double> cutoffs{1e-1, 1e-2, 1e-3, 1e-4};
  double ring_radius = 0.1;
  GridSpec grid{};
  double threshold = kDefaultThreshold;
};

/// One row per (g, m_q, form, cutoff), ordered by that key with cutoffs
/// descending. Parameter points are evaluated in parallel.
std::vector<ScanRow> physical_dipole_sweep(const SweepConfig& config);

/// Cutoffs used to classify the eta-only model.
std::vector<double> eta_only_cutoffs();

const char* to_string(PotentialKind kind);
const char* to_string(Spacing spacing);

}  // namespace dipolebound
