/* omt - frequency-domain model of a feedback-enabled electro-optomechanical
 * optical-microwave transducer.
 *
 * C interface of the shared library. All functions return omt_status;
 * results come back through out-parameters. Handles are opaque and freed
 * with their matching *_free call. A thread-local message for the last
 * failure is available via omt_last_error().
 *
 * Conventions: rates are angular frequencies; frequency arguments are
 * detunings from the upper mechanical sideband (units of kappa_M = 1 for
 * reduced-parameter models, rad/s for physical ones); noise variances use
 * vacuum = 1/2 per quadrature.
 */
#ifndef OMT_H
#define OMT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define OMT_VERSION_STRING "0.1.0"

typedef enum omt_status {
  OMT_OK = 0,
  OMT_ERR_INVALID_ARGUMENT = 1,
  OMT_ERR_CRITICAL_COUPLING = 2,
  OMT_ERR_UNKNOWN_PRESET = 3,
  OMT_ERR_GRID_TOO_COARSE = 4,
  OMT_ERR_GRID_MISMATCH = 5,
  OMT_ERR_NUMERICAL_BRANCH = 6,
  OMT_ERR_UNSTABLE_STEP = 7,
  OMT_ERR_TOO_FEW_SEGMENTS = 8,
  OMT_ERR_IO = 9,
  OMT_ERR_INTERNAL = 10
} omt_status;

const char* omt_status_name(omt_status s);
const char* omt_last_error(void);
const char* omt_version(void);

/* ------------------------------------------------------------------ */
/* Model construction                                                   */

typedef struct omt_model omt_model;

typedef struct omt_physical_params {
  double omega;    /* mechanical angular frequency, rad/s */
  double gamma;    /* mechanical decay rate, rad/s */
  double kappa_l;  /* optical cavity decay rate, rad/s */
  double kappa_m;  /* microwave cavity decay rate, rad/s */
  double g_l;      /* boosted optomechanical coupling, rad/s */
  double g_m;      /* boosted electromechanical coupling, rad/s */
  double nbar;     /* thermal phonon occupancy */
  double eta_l;    /* optical coupling efficiency */
  double eta_m;    /* microwave coupling efficiency */
  double eta_d;    /* detection / feedback efficiency */
  double h_gain;   /* feedback gain ratio h' = G / G_sym */
} omt_physical_params;

typedef struct omt_reduced_params {
  double c_l;     /* optomechanical cooperativity */
  double c_mp;    /* dressed electromechanical cooperativity */
  double beta;    /* Gamma' / kappa_M */
  double eta_l;
  double eta_m;
  double eta_d;
  double nbar;
  double h_gain;
} omt_reduced_params;

typedef struct omt_effective_couplings {
  double lambda_l;
  double sigma;        /* +1 overcoupled, -1 undercoupled */
  double g_sym;
  double gamma_prime;  /* rad/s physical; units of Gamma reduced */
  double eta_b;
  double eta_om;
  double eta_ol;
  double eps;
  double tau;          /* pi / (2 Omega), NaN in reduced mode */
  double q_prime;      /* Omega / Gamma', NaN in reduced mode */
} omt_effective_couplings;

omt_status omt_model_from_physical(const omt_physical_params* p, omt_model** out);
omt_status omt_model_from_reduced(const omt_reduced_params* r, omt_model** out);
omt_status omt_model_from_preset(const char* name, omt_model** out);
/* `key = value` text; *_hz keys select the physical parameterisation. */
omt_status omt_model_from_config(const char* text, omt_model** out);
void omt_model_free(omt_model* m);

omt_status omt_model_reduced(const omt_model* m, omt_reduced_params* out);
omt_status omt_model_physical(const omt_model* m, omt_physical_params* out);
omt_status omt_model_effective(const omt_model* m, omt_effective_couplings* out);
/* Rate scales used for detuning arguments of this model. */
omt_status omt_model_scales(const omt_model* m, double* gamma_prime,
                            double* kappa_m, double* g_m);
int omt_model_warning_count(const omt_model* m);
const char* omt_model_warning(const omt_model* m, int index);

omt_status omt_preset_params(const char* name, omt_physical_params* out);

/* ------------------------------------------------------------------ */
/* Response and forward transfer                                        */

typedef struct omt_complex {
  double re;
  double im;
} omt_complex;

typedef struct omt_susceptibilities {
  omt_complex chi_b;
  omt_complex chi_c;
  omt_complex chi_b_em;
  omt_complex chi_c_em;
  omt_complex chi_cross;
} omt_susceptibilities;

omt_status omt_susceptibilities_at(const omt_model* m, double omega,
                                   omt_susceptibilities* out);
omt_status omt_ideal_gain(const omt_model* m, double omega, omt_complex* out);
omt_status omt_ideal_transmission(const omt_model* m, const double* omega,
                                  size_t n, double* out);
/* Detunings with exactly unit ideal transmission; *count in [0, 2]. */
omt_status omt_optimal_detunings(const omt_model* m, double out[2], size_t* count);
omt_status omt_matched_detuning(const omt_model* m, double* out);

typedef struct omt_forward_gains {
  omt_complex t_ac;
  omt_complex t_alc;
  omt_complex t_bc;
  omt_complex t_cc;
  omt_complex t_clc;
  omt_complex t_vc;
  double sigma;
} omt_forward_gains;

omt_status omt_forward_gains_at(const omt_model* m, double omega,
                                omt_forward_gains* out);
omt_status omt_sum_rule_residual(const omt_model* m, double omega, double* out);
omt_status omt_max_transmission(const omt_model* m, double* out);

/* ------------------------------------------------------------------ */
/* Noise budget and quantum transfer witness                            */

typedef struct omt_noise_budget {
  double v_opt;
  double v_mech;
  double v_mw;
  double v_det;
  double v_total;
  double omega;
  double t_ac;
} omt_noise_budget;

omt_status omt_noise_budget_at(const omt_model* m, double omega,
                               omt_noise_budget* out);
/* Budget at matched transfer (ideal transmission pinned to 1). */
omt_status omt_noise_budget_matched(const omt_model* m, omt_noise_budget* out);
omt_status omt_added_variance(const omt_model* m, double omega, double* out);

typedef struct omt_witness_report {
  double w_t;
  double w_t_min;   /* Heisenberg floor on W_T^2 */
  double w_floor;   /* sqrt(w_t_min), floor on W_T */
  double g_x, g_y;
  double v_x_add, v_y_add;
} omt_witness_report;

omt_status omt_transfer_witness(double g_x, double g_y, double v_x, double v_y,
                                omt_witness_report* out);

typedef enum omt_loss_axis {
  OMT_LOSS_ETA_L = 0,
  OMT_LOSS_ETA_M = 1,
  OMT_LOSS_ETA_D = 2
} omt_loss_axis;

typedef struct omt_tv_point {
  double loss_value;
  double t_ac;
  double v_add;
  double w_t;
  int tick;
  int skipped; /* critical coupling on the eta_L axis */
} omt_tv_point;

/* Writes at most *n_inout points, returns the actual count in *n_inout. */
omt_status omt_tv_trace(const omt_model* m, omt_loss_axis axis, int samples,
                        omt_tv_point* out, size_t* n_inout);

/* ------------------------------------------------------------------ */
/* Wigner-function channel model                                        */

typedef struct omt_grid_spec {
  double extent_x;
  double extent_y;
  int nx;
  int ny;
} omt_grid_spec;

/* values buffers are caller-owned arrays of nx*ny doubles, row-major with x
 * fastest; point (ix, iy) samples (-extent_x + ix dx, -extent_y + iy dy). */
omt_status omt_wigner_fock(int n, const omt_grid_spec* spec, double* values);
omt_status omt_wigner_cat(double alpha_re, double alpha_im, int odd_parity,
                          const omt_grid_spec* spec, double* values);
omt_status omt_wigner_gaussian(double variance, const omt_grid_spec* spec,
                               double* values);
omt_status omt_wigner_propagate(const omt_grid_spec* spec, const double* in,
                                double gain, double v_add, double* out);
omt_status omt_wigner_fidelity(const omt_grid_spec* spec, const double* a,
                               const double* b, double* out);
omt_status omt_wigner_negativity(const omt_grid_spec* spec, const double* w,
                                 double* out);

/* ------------------------------------------------------------------ */
/* Homodyne photocurrent content                                        */

typedef struct omt_light_gains {
  omt_complex t_aa;
  omt_complex t_ba;
  omt_complex t_ca;
} omt_light_gains;

omt_status omt_light_gains_at(const omt_model* m, double omega,
                              omt_light_gains* out);

typedef struct omt_pulse_spec {
  double omega_p;
  double b_theta_var;
  const double* shape; /* optional x(omega) samples, NULL for the default */
} omt_pulse_spec;

omt_status omt_photocurrent_spectrum(const omt_model* m, const double* omega,
                                     size_t n, const omt_pulse_spec* pulse,
                                     double* out);
/* Per-source vacuum-input spectra at feedback gain h; any of the four output
 * arrays may be NULL. h may be 0 or INFINITY for the closed-form limits. */
omt_status omt_vacuum_spectrum(const omt_model* m, double h,
                               const double* omega, size_t n, double* optical,
                               double* mechanical, double* microwave,
                               double* total);

/* ------------------------------------------------------------------ */
/* Coherent-feedback reverse transfer                                   */

typedef struct omt_reverse_channel {
  double s_ratio;
  omt_complex c_x_in;
  omt_complex c_y_in;
  omt_complex c_x_v;
  omt_complex c_y_v;
  omt_complex c_b_in;
  omt_complex c_c_in;
  double noise;
} omt_reverse_channel;

omt_status omt_reverse_channel_at(const omt_model* m, double omega,
                                  omt_reverse_channel* out);
omt_status omt_reverse_added_noise(const omt_model* m, double omega,
                                   double* out);

/* ------------------------------------------------------------------ */
/* Two-mode Gaussian entanglement                                       */

/* Covariance matrices are row-major 4x4 over (X1, Y1, X2, Y2). */
omt_status omt_tmss_covariance(double r, double cov[16]);
omt_status omt_apply_channel(const double cov[16], int mode, double g_x,
                             double g_y, double v_x, double v_y,
                             double out[16]);
omt_status omt_inseparability(const double cov[16], double* out);
omt_status omt_is_bona_fide(const double cov[16], int* out);

/* ------------------------------------------------------------------ */
/* Stochastic Langevin oracle                                           */

typedef struct omt_sim_config {
  double dt;        /* 0 selects the stability-bound default */
  double duration;  /* 0 selects a duration matching n_segments */
  uint64_t seed;
  int n_segments;
} omt_sim_config;

typedef struct omt_oracle_report {
  double max_rel;
  double rms_rel;
  double band_lo;
  double band_hi;
  int n_points;
  int pass;
} omt_oracle_report;

/* Runs the Monte Carlo, estimates the output-quadrature PSD and compares it
 * with the analytic spectrum over +-band_kappa * kappa_M. The PSD grids are
 * returned when the out pointers are non-NULL: call first with *n_psd = 0 to
 * query the length. */
omt_status omt_oracle_validate(const omt_model* m, const omt_sim_config* cfg,
                               double band_kappa, double tol,
                               omt_oracle_report* report, double* psd_omega,
                               double* psd_mc, double* psd_analytic,
                               size_t* n_psd);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OMT_H */
