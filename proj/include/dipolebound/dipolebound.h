#ifndef DIPOLEBOUND_H
#define DIPOLEBOUND_H

/*
 * C interface to the dipolebound library.
 *
 * Objects are opaque handles released with the matching *_destroy call.
 * Every fallible function returns a dpb_status; on failure a thread-local
 * message is available from dpb_last_error() until the next call on the same
 * thread. Output parameters are left untouched on failure.
 */

#include <stddef.h>

#if defined(DPB_BUILDING_LIBRARY)
#define DPB_API __attribute__((visibility("default")))
#else
#define DPB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpb_status {
  DPB_OK = 0,
  DPB_ERR_CONFIG = 1,
  DPB_ERR_DOMAIN = 2,
  DPB_ERR_SINGULAR_ORDER = 3,
  DPB_ERR_CLOSURE = 4,
  DPB_ERR_NO_SOLUTION = 5,
  DPB_ERR_CONTRACT = 6,
  DPB_ERR_IO = 7,
  DPB_ERR_INVALID_ARGUMENT = 8,
  DPB_ERR_INTERNAL = 9
} dpb_status;

typedef enum dpb_format { DPB_FORMAT_CSV = 0, DPB_FORMAT_JSON = 1, DPB_FORMAT_TEXT = 2 } dpb_format;

typedef enum dpb_formula {
  DPB_FORMULA_BARUT = 0,
  DPB_FORMULA_MOD12 = 1,
  DPB_FORMULA_MOD13 = 2,
  DPB_FORMULA_MOD14 = 3
} dpb_formula;

typedef enum dpb_closure { DPB_CLOSURE_CASE_C = 0, DPB_CLOSURE_TRUNCATED = 1 } dpb_closure;

typedef enum dpb_growth {
  DPB_GROWTH_TERMINATING = 0,
  DPB_GROWTH_EXP_2BETA = 1,
  DPB_GROWTH_INDETERMINATE = 2
} dpb_growth;

typedef enum dpb_case { DPB_CASE_A = 0, DPB_CASE_B = 1, DPB_CASE_C = 2 } dpb_case;

typedef enum dpb_potential {
  DPB_POTENTIAL_FAR_FIELD = 0,
  DPB_POTENTIAL_FULL_RING = 1,
  DPB_POTENTIAL_ETA_ONLY = 2,
  DPB_POTENTIAL_COULOMB = 3
} dpb_potential;

typedef enum dpb_spacing { DPB_SPACING_UNIFORM = 0, DPB_SPACING_LOG = 1 } dpb_spacing;

typedef struct dpb_config dpb_config;
typedef struct dpb_text dpb_text;
typedef struct dpb_series dpb_series;

/* Message for the last failed call on this thread, or "" after a success. */
DPB_API const char* dpb_last_error(void);
DPB_API const char* dpb_status_name(dpb_status status);
DPB_API const char* dpb_version(void);

/* ---- configuration ---------------------------------------------------- */

/* Physical constants and lepton reference values. Setters validate the
 * value immediately; unknown keys give DPB_ERR_CONFIG. Keys: alpha_inverse,
 * electron_mass_mev, hbar_c, mu_over_e, tau_over_e, mu_uncertainty,
 * tau_uncertainty. */
DPB_API dpb_status dpb_config_create(dpb_config** out);
DPB_API void dpb_config_destroy(dpb_config* config);
DPB_API dpb_status dpb_config_set(dpb_config* config, const char* key, double value);
DPB_API dpb_status dpb_config_get(const dpb_config* config, const char* key, double* value);
/* Applies every `key = value` line of a config file on top of the current
 * values. Nothing is applied if any line is invalid. */
DPB_API dpb_status dpb_config_load_file(dpb_config* config, const char* path);
DPB_API dpb_status dpb_config_to_text(const dpb_config* config, dpb_text** out);

/* ---- text buffers ------------------------------------------------------ */

DPB_API const char* dpb_text_data(const dpb_text* text);
DPB_API size_t dpb_text_size(const dpb_text* text);
/* Writes the buffer to `path`, or standard output when path is NULL or "". */
DPB_API dpb_status dpb_text_write(const dpb_text* text, const char* path);
DPB_API void dpb_text_destroy(dpb_text* text);

/* ---- lepton mass formulas ---------------------------------------------- */

DPB_API dpb_status dpb_formula_from_name(const char* name, dpb_formula* out);
DPB_API dpb_status dpb_mass_ratio(const dpb_config* config, dpb_formula formula, int n, double* ratio);
/* -1 for a formula with no generation limit. */
DPB_API int dpb_generation_count(dpb_formula formula);
/* Rows n = 0..max_n for each listed formula, in list order. */
DPB_API dpb_status dpb_masses_report(const dpb_config* config, const dpb_formula* formulas, size_t n_formulas,
                                     int max_n, dpb_format format, dpb_text** out);

/* ---- power series ------------------------------------------------------ */

typedef struct dpb_series_params {
  double s;
  int m_q;
  double beta;
  double eta;
  double sigma;
  int nu_max;
} dpb_series_params;

DPB_API dpb_series_params dpb_series_params_default(void);
DPB_API dpb_status dpb_series_generate(const dpb_series_params* params, dpb_closure closure, double b0,
                                       dpb_series** out);
DPB_API void dpb_series_destroy(dpb_series* series);
/* Number of coefficients, nu_max + 1. */
DPB_API size_t dpb_series_size(const dpb_series* series);
DPB_API double dpb_series_coefficient(const dpb_series* series, size_t nu);
/* Residual of the relation at `order`, for orders -3..nu_max-1; 0 outside. */
DPB_API double dpb_series_residual(const dpb_series* series, int order);
DPB_API double dpb_series_max_interior_residual(const dpb_series* series);
DPB_API dpb_growth dpb_series_growth(const dpb_series* series);
DPB_API dpb_status dpb_series_render(const dpb_series* series, dpb_format format, dpb_text** out);

/* ---- termination analysis ---------------------------------------------- */

typedef struct dpb_termination {
  dpb_case case_label;
  int has_required_beta;
  double required_beta;
  int bound_state_possible;
  int flagged;
  /* Case C only. */
  double b_next;
  double b_next2;
} dpb_termination;

/* `beta` and `b_nu` are used by case C only. */
DPB_API dpb_status dpb_terminate(dpb_case which, double s, int m_q, int nu, double eta, double beta, double b_nu,
                                 dpb_termination* out);
DPB_API dpb_status dpb_terminate_report(dpb_case which, double s, int m_q, int nu, double eta, double beta,
                                        double b_nu, dpb_format format, dpb_text** out);
/* Cases A, B and C over s in `s_values` and nu in [nu_min, nu_max]. */
DPB_API dpb_status dpb_no_bound_state_report(int m_q, double eta, const double* s_values, size_t n_s, int nu_min,
                                             int nu_max, double case_c_beta, int* bound_state_possible,
                                             dpb_format format, dpb_text** out);

/* ---- spectral oracle --------------------------------------------------- */

typedef struct dpb_potential_spec {
  dpb_potential kind;
  int m_q;
  double g;           /* far field, full ring */
  double eta;         /* eta-only */
  double kappa;       /* Coulomb */
  double ring_radius; /* full ring */
} dpb_potential_spec;

typedef struct dpb_grid {
  double rho_min;
  double rho_max;
  int n_points;
  dpb_spacing spacing;
} dpb_grid;

DPB_API dpb_grid dpb_grid_default(void);
DPB_API dpb_status dpb_count_negative(const dpb_potential_spec* spec, const dpb_grid* grid, double threshold,
                                      size_t* count);
DPB_API dpb_status dpb_lowest_eigenvalue(const dpb_potential_spec* spec, const dpb_grid* grid, double* value);
DPB_API dpb_status dpb_shoot(const dpb_potential_spec* spec, const dpb_grid* grid, double curly_e,
                             double* mismatch);
/* Spectrum summary on `grid` with a cutoff scan over `cutoffs` (may be
 * empty). `converged` receives the scan verdict when non-NULL. */
DPB_API dpb_status dpb_spectrum_report(const dpb_potential_spec* spec, const dpb_grid* grid, const double* cutoffs,
                                       size_t n_cutoffs, size_t n_lowest, double threshold, int* converged,
                                       dpb_format format, dpb_text** out);
DPB_API dpb_status dpb_mismatch_report(const dpb_potential_spec* spec, const dpb_grid* grid, double e_lo,
                                       double e_hi, int steps, dpb_format format, dpb_text** out);
/* Physical-dipole sweep over g x m_q x {far field, full ring} x cutoffs. */
DPB_API dpb_status dpb_dipole_sweep_report(const double* g_values, size_t n_g, const int* m_values, size_t n_m,
                                           const double* cutoffs, size_t n_cutoffs, const dpb_grid* grid,
                                           double ring_radius, size_t* negative_total, dpb_format format,
                                           dpb_text** out);

/* ---- validation -------------------------------------------------------- */

DPB_API dpb_status dpb_validate(const dpb_config* config, int* all_passed, dpb_format format, dpb_text** out);
/* Mass spectra of every formula, the validation checks and the default
 * physical-dipole sweep in one document. */
DPB_API dpb_status dpb_full_report(const dpb_config* config, int* all_passed, dpb_format format, dpb_text** out);

#ifdef __cplusplus
}
#endif

#endif /* DIPOLEBOUND_H */
