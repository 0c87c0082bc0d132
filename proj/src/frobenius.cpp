#include "dipolebound/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "dipolebound/banded.hpp"
#include "dipolebound/error.hpp"

namespace dipolebound {
namespace {

using Real = long double;

void check_params(const SeriesParams& p) {
  if (p.nu_max < 4) throw DomainError(fmt::format("nu_max must be at least 4, got {}", p.nu_max));
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw DomainError("beta must be finite and >= 0");
  if (!std::isfinite(p.s) || !std::isfinite(p.eta) || !std::isfinite(p.sigma))
    throw DomainError("series parameters must be finite");
}

Real coefficient(const std::vector<Real>& b, int k) {
  return k >= 0 && k < static_cast<int>(b.size()) ? b[k] : Real{0};
}

std::vector<OrderResidual> all_residuals(const SeriesParams& p, const std::vector<Real>& b) {
  std::vector<OrderResidual> out;
  out.reserve(p.nu_max + 3);
  for (int nu = -3; nu < p.nu_max; ++nu) out.push_back({nu, recurrence_residual(p, b, nu)});
  return out;
}

// One link of the case-C chain: b_{nu+1} = beta p_nu b_nu / (q_nu + eta beta p_{nu+1} / q_{nu+1}).
Real case_c_link(const SeriesParams& p, int nu, Real b_nu) {
  const QP here = qp(p.s, nu, p.m_q);
  const QP next = qp(p.s, nu + 1, p.m_q);
  if (next.q == 0.0)
    throw SingularOrderError(nu, fmt::format("q_{} vanishes in the case-C chain", nu + 1));
  const Real denom = Real(here.q) + Real(p.eta) * Real(p.beta) * Real(next.p) / Real(next.q);
  if (denom == 0)
    throw SingularOrderError(nu, fmt::format("case-C denominator vanishes at order {}", nu));
  return Real(p.beta) * Real(here.p) * b_nu / denom;
}

std::vector<Real> case_c_forward(const SeriesParams& p, Real b0) {
  if (p.sigma != 0.0) throw DomainError("case-C forward closure requires sigma = 0");
  std::vector<Real> b(p.nu_max + 1, Real{0});
  b[0] = b0;
  for (int nu = 0; nu < p.nu_max; ++nu) b[nu + 1] = case_c_link(p, nu, b[nu]);
  return b;
}

std::vector<Real> truncated_system(const SeriesParams& p, Real b0) {
  // Unknowns b_1..b_N (N = nu_max), one row per order 0..N-1.
  const auto n = static_cast<std::size_t>(p.nu_max);
  BandedMatrix<Real> a(n, 1, 2);
  std::vector<Real> rhs(n, Real{0});
  for (std::size_t row = 0; row < n; ++row) {
    const int nu = static_cast<int>(row);
    const QP c = qp(p.s, nu, p.m_q);
    if (row >= 1) a.set(row, row - 1, -Real(p.beta) * Real(c.p));
    a.set(row, row, Real(c.q));
    if (row + 1 < n) a.set(row, row + 1, Real(p.eta));
    if (row + 2 < n) a.set(row, row + 2, Real(p.sigma));
  }
  rhs[0] = Real(p.beta) * Real(qp(p.s, 0, p.m_q).p) * b0;

  const auto x = solve_banded(a, std::move(rhs));
  std::vector<Real> b(n + 1);
  b[0] = b0;
  std::copy(x.begin(), x.end(), b.begin() + 1);
  for (Real v : b) {
    if (!std::isfinite(v)) throw ClosureError("truncated system produced non-finite coefficients");
  }
  return b;
}

}  // namespace

QP qp(double s, int nu, int m_q) {
  const double m = std::abs(m_q);
  return {(s + nu + 1.0) * (s + nu + 2.0 * m + 1.0), 2.0 * s + 2.0 * nu + 2.0 * m + 1.0};
}

std::array<double, 2> indicial_candidates(int m_q) {
  return {0.0, -2.0 * std::abs(m_q)};
}

long double SeriesSolution::max_abs_coefficient() const {
  long double m = 0;
  for (auto v : coefficients) m = std::max(m, std::abs(v));
  return m;
}

long double SeriesSolution::max_interior_residual() const {
  long double m = 0;
  for (const auto& r : residuals) {
    if (r.order >= 0) m = std::max(m, std::abs(r.value));
  }
  return m;
}

long double recurrence_residual(const SeriesParams& p, const std::vector<long double>& b, int nu) {
  const QP c = qp(p.s, nu, p.m_q);
  const Real lead = Real(c.q) * coefficient(b, nu + 1) - Real(p.beta) * Real(c.p) * coefficient(b, nu);
  const Real tail = Real(p.eta) * coefficient(b, nu + 2) + Real(p.sigma) * coefficient(b, nu + 3);
  return lead + tail;
}

SeriesSolution generate_coefficients(const SeriesParams& params, Closure closure, double b0) {
  check_params(params);
  if (b0 == 0.0 || !std::isfinite(b0)) throw DomainError("b0 must be finite and nonzero");

  SeriesSolution sol;
  sol.params = params;
  sol.closure = closure;
  sol.coefficients = closure == Closure::CaseCForward ? case_c_forward(params, b0)
                                                      : truncated_system(params, b0);
  sol.residuals = all_residuals(params, sol.coefficients);
  sol.growth = growth_classification(sol);
  return sol;
}

Growth growth_classification(const SeriesSolution& solution) {
  return growth_classification(solution.coefficients, solution.params.beta);
}

Growth growth_classification(const std::vector<long double>& b, double beta) {
  const int nu_max = static_cast<int>(b.size()) - 1;
  if (nu_max < 20) return Growth::Indeterminate;
  const int first = nu_max - nu_max / 4;

  if (std::all_of(b.begin() + first, b.end(), [](Real v) { return v == 0; }))
    return Growth::Terminating;
  if (!(beta > 0.0)) return Growth::Indeterminate;

  for (int nu = first; nu < nu_max; ++nu) {
    if (b[nu] == 0) return Growth::Indeterminate;
    const Real ratio = b[nu + 1] / b[nu];
    const Real expected = Real(2.0 * beta) / Real(nu + 1);
    if (!(std::abs(ratio - expected) <= Real(0.05) * expected)) return Growth::Indeterminate;
  }
  return Growth::ExpGrowth2Beta;
}

TerminationVerdict terminate_case_a(double s, int m_q, int nu, double eta) {
  (void)eta;  // eta drops out once b_{nu+3} = 0
  TerminationVerdict v;
  v.case_label = TerminationCase::A;
  if (qp(s, nu, m_q).p != 0.0) {
    v.required_beta = 0.0;
    v.explanation = "beta = 0 required (curly_e = 0, not bound)";
  } else {
    v.flagged = true;
    v.explanation = "p_nu = 0: beta unconstrained at this order";
  }
  v.bound_state_possible = false;
  return v;
}

TerminationVerdict terminate_case_b(double s, int m_q, int nu, double eta) {
  const QP here = qp(s, nu, m_q);
  const QP next = qp(s, nu + 1, m_q);
  if (eta == 0.0) throw NoSolutionError("case B has no solution for eta = 0");
  if (next.p == 0.0) throw NoSolutionError(fmt::format("case B has no solution: p_{} = 0", nu + 1));

  TerminationVerdict v;
  v.case_label = TerminationCase::B;
  const double beta = -(here.q * next.q) / (eta * next.p);
  v.required_beta = beta;
  v.bound_state_possible = beta > 0.0;
  if (v.bound_state_possible) {
    v.flagged = true;
    v.explanation = eta < 0.0 ? "beta > 0 only through eta < 0 (sign channel)"
                              : "beta > 0 on the singular branch";
  } else {
    v.explanation = "beta <= 0, series diverges";
  }
  return v;
}

CaseCResult terminate_case_c(double s, int m_q, int nu, double eta, double beta, double b_nu) {
  SeriesParams p;
  p.s = s;
  p.m_q = m_q;
  p.eta = eta;
  p.beta = beta;
  const Real b1 = case_c_link(p, nu, b_nu);
  // q_{nu+1} b_{nu+2} = beta p_{nu+1} b_{nu+1}; q_{nu+1} != 0 was checked by the link.
  const QP next = qp(s, nu + 1, m_q);
  const Real b2 = Real(beta) * Real(next.p) * b1 / Real(next.q);

  TerminationVerdict v;
  v.case_label = TerminationCase::C;
  v.bound_state_possible = false;
  v.explanation = "beta undetermined by case C";
  return {static_cast<double>(b1), static_cast<double>(b2), v};
}

std::vector<ScanEntry> NoBoundStateReport::flagged() const {
  std::vector<ScanEntry> out;
  for (const auto& e : entries) {
    if (e.verdict.flagged || (e.verdict.bound_state_possible && !e.physical)) out.push_back(e);
  }
  return out;
}

NoBoundStateReport no_bound_state_report(int m_q, double eta, const TerminationScan& scan) {
  if (scan.s_values.empty() || scan.nu_max < scan.nu_min)
    throw ContractError("termination scan needs at least one s value and order");

  NoBoundStateReport report;
  report.m_q = m_q;
  report.eta = eta;
  std::vector<double> s_values = scan.s_values;
  std::sort(s_values.begin(), s_values.end());

  for (double s : s_values) {
    const bool physical = eta >= 0.0 && s >= 0.0;
    for (int nu = scan.nu_min; nu <= scan.nu_max; ++nu) {
      report.entries.push_back({s, nu, terminate_case_a(s, m_q, nu, eta), true, physical, {}});

      ScanEntry b{s, nu, {}, true, physical, {}};
      b.verdict.case_label = TerminationCase::B;
      try {
        b.verdict = terminate_case_b(s, m_q, nu, eta);
      } catch (const NoSolutionError& e) {
        b.applicable = false;
        b.note = e.what();
      }
      report.entries.push_back(b);

      ScanEntry c{s, nu, {}, true, physical, {}};
      c.verdict.case_label = TerminationCase::C;
      try {
        c.verdict = terminate_case_c(s, m_q, nu, eta, scan.case_c_beta, 1.0).verdict;
      } catch (const SingularOrderError& e) {
        c.applicable = false;
        c.verdict.explanation = "beta undetermined by case C";
        c.note = e.what();
      }
      report.entries.push_back(c);
    }
  }

  report.bound_state_possible = std::any_of(report.entries.begin(), report.entries.end(), [](const ScanEntry& e) {
    return e.applicable && e.physical && e.verdict.bound_state_possible;
  });
  return report;
}

const char* to_string(Closure closure) {
  return closure == Closure::CaseCForward ? "case_c_forward" : "truncated_linear_system";
}

const char* to_string(Growth growth) {
  switch (growth) {
    case Growth::Terminating: return "terminating";
    case Growth::ExpGrowth2Beta: return "exp_growth_2beta";
    case Growth::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

const char* to_string(TerminationCase label) {
  switch (label) {
    case TerminationCase::A: return "A";
    case TerminationCase::B: return "B";
    case TerminationCase::C: return "C";
  }
  return "?";
}

}  // namespace dipolebound
