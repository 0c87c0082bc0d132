#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace dipolebound {

// Power-series treatment of the reduced radial equation. With
// R = rho^|m| exp(-beta rho) u and u = sum_nu b_nu rho^(s+nu), matching
// powers of rho gives, at order nu,
//
//   q_nu b_{nu+1} - beta p_nu b_nu + eta b_{nu+2} + sigma b_{nu+3} = 0
//
// with q_nu = (s+nu+1)(s+nu+2|m|+1) and p_nu = 2s+2nu+2|m|+1. The relation
// reaches up to b_{nu+3}, so it cannot be run forward as it stands; two
// closures are provided and both report residuals.

struct QP {
  double q;
  double p;
};

QP qp(double s, int nu, int m_q);

/// Roots {0, -2|m_q|} of the leading-order balance s(s + 2|m_q|) = 0.
std::array<double, 2> indicial_candidates(int m_q);

enum class Closure {
  CaseCForward,           // chain obtained by dropping b_{nu+3}; requires sigma = 0
  TruncatedLinearSystem,  // orders 0..nu_max-1 with b_{nu > nu_max} = 0
};

enum class Growth { Terminating, ExpGrowth2Beta, Indeterminate };

struct SeriesParams {
  double s = 0.0;
  int m_q = 0;
  double beta = 0.0;
  double eta = 0.0;
  double sigma = 0.0;
  int nu_max = 20;
};

struct OrderResidual {
  int order;
  long double value;
};

struct SeriesSolution {
  SeriesParams params;
  Closure closure = Closure::CaseCForward;
  /// b_0 .. b_{nu_max}. Extended precision keeps long tails (b_nu ~
  /// (2 beta)^nu / nu!) out of the double underflow range.
  std::vector<long double> coefficients;
  /// Orders -3..nu_max-1. Orders -3, -2, -1 carry the low-order balance that
  /// neither closure enforces; they are reported, not resolved.
  std::vector<OrderResidual> residuals;
  Growth growth = Growth::Indeterminate;

  long double max_abs_coefficient() const;
  /// Largest |residual| over orders 0..nu_max-1.
  long double max_interior_residual() const;
};

/// Residual of the order-nu relation for a coefficient list, with b_k = 0
/// outside [0, size).
long double recurrence_residual(const SeriesParams& params, const std::vector<long double>& b, int nu);

/// Throws DomainError for invalid parameters, SingularOrderError when a
/// case-C denominator vanishes, ClosureError when the truncated system is
/// singular.
SeriesSolution generate_coefficients(const SeriesParams& params, Closure closure, double b0 = 1.0);

/// Terminating when every coefficient in the tail window (last quarter of
/// orders) is exactly zero; ExpGrowth2Beta when every tail ratio
/// b_{nu+1}/b_nu lies within 5% of 2 beta/(nu+1); Indeterminate otherwise,
/// including nu_max < 20.
Growth growth_classification(const SeriesSolution& solution);
Growth growth_classification(const std::vector<long double>& coefficients, double beta);

enum class TerminationCase { A, B, C };

struct TerminationVerdict {
  TerminationCase case_label = TerminationCase::A;
  std::optional<double> required_beta;
  bool bound_state_possible = false;
  /// Set for channels outside the analysed regime (beta unconstrained,
  /// positive beta from eta < 0) so a sweep surfaces them.
  bool flagged = false;
  std::string explanation;
};

/// Requiring b_{nu+1} = 0 with b_{nu+3} = 0 forces beta p_nu = 0.
TerminationVerdict terminate_case_a(double s, int m_q, int nu, double eta);

/// Nontrivial (b_{nu+1}, b_{nu+2}) with b_nu = b_{nu+3} = 0 needs
/// q_nu q_{nu+1} + eta beta p_{nu+1} = 0. Throws NoSolutionError for
/// eta = 0 or p_{nu+1} = 0.
TerminationVerdict terminate_case_b(double s, int m_q, int nu, double eta);

struct CaseCResult {
  double b_next;   // b_{nu+1}
  double b_next2;  // b_{nu+2}
  TerminationVerdict verdict;
};

/// Coefficient chain under b_{nu+3} = 0, p_{nu+2} = 0; beta stays free.
CaseCResult terminate_case_c(double s, int m_q, int nu, double eta, double beta, double b_nu);

struct TerminationScan {
  std::vector<double> s_values{0.0};
  int nu_min = 0;
  int nu_max = 10;
  double case_c_beta = 1.0;
};

struct ScanEntry {
  double s = 0.0;
  int nu = 0;
  TerminationVerdict verdict;
  bool applicable = true;  // false when the case has no solution at this order
  bool physical = true;    // eta >= 0 and s >= 0
  std::string note;
};

struct NoBoundStateReport {
  int m_q = 0;
  double eta = 0.0;
  std::vector<ScanEntry> entries;
  /// True iff some case admits beta > 0 on a physical channel.
  bool bound_state_possible = false;

  std::vector<ScanEntry> flagged() const;
};

/// Runs cases A, B and C over every (s, nu) of the scan. Entries are ordered
/// by (s, nu, case). Throws ContractError for an empty scan.
NoBoundStateReport no_bound_state_report(int m_q, double eta, const TerminationScan& scan);

const char* to_string(Closure closure);
const char* to_string(Growth growth);
const char* to_string(TerminationCase label);

}  // namespace dipolebound
