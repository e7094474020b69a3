#include "omt/omt.h"

#include <cmath>
#include <cstring>
#include <string>

#include "core/forward.hpp"
#include "core/gaussian.hpp"
#include "core/homodyne.hpp"
#include "core/noise.hpp"
#include "core/oracle.hpp"
#include "core/params.hpp"
#include "core/response.hpp"
#include "core/reverse.hpp"
#include "core/wigner.hpp"

struct omt_model {
  omt::Model model;
};

namespace {

thread_local std::string g_last_error;

omt_status status_of(omt::ErrorCode c) {
  using omt::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return OMT_ERR_INVALID_ARGUMENT;
    case ErrorCode::CriticalCoupling: return OMT_ERR_CRITICAL_COUPLING;
    case ErrorCode::UnknownPreset: return OMT_ERR_UNKNOWN_PRESET;
    case ErrorCode::GridTooCoarse: return OMT_ERR_GRID_TOO_COARSE;
    case ErrorCode::GridMismatch: return OMT_ERR_GRID_MISMATCH;
    case ErrorCode::NumericalBranch: return OMT_ERR_NUMERICAL_BRANCH;
    case ErrorCode::UnstableStep: return OMT_ERR_UNSTABLE_STEP;
    case ErrorCode::TooFewSegments: return OMT_ERR_TOO_FEW_SEGMENTS;
    case ErrorCode::Io: return OMT_ERR_IO;
  }
  return OMT_ERR_INTERNAL;
}

template <typename Fn>
omt_status guarded(Fn&& fn) {
  try {
    fn();
    return OMT_OK;
  } catch (const omt::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OMT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OMT_ERR_INTERNAL;
  }
}

omt_status require_args(bool ok) {
  if (!ok) {
    g_last_error = "null argument";
    return OMT_ERR_INVALID_ARGUMENT;
  }
  return OMT_OK;
}

omt_complex pack(omt::cplx z) { return {z.real(), z.imag()}; }

omt::PhysicalParams unpack(const omt_physical_params& p) {
  return {p.omega, p.gamma, p.kappa_l, p.kappa_m, p.g_l,   p.g_m,
          p.nbar,  p.eta_l, p.eta_m,   p.eta_d,   p.h_gain};
}

omt_physical_params pack(const omt::PhysicalParams& p) {
  return {p.omega, p.gamma, p.kappa_l, p.kappa_m, p.g_l,   p.g_m,
          p.nbar,  p.eta_l, p.eta_m,   p.eta_d,   p.h_gain};
}

omt::ReducedParams unpack(const omt_reduced_params& r) {
  return {r.c_l, r.c_mp, r.beta, r.eta_l, r.eta_m, r.eta_d, r.nbar, r.h_gain};
}

omt_reduced_params pack(const omt::ReducedParams& r) {
  return {r.cl, r.cmp, r.beta, r.eta_l, r.eta_m, r.eta_d, r.nbar, r.h_gain};
}

omt::GridSpec unpack(const omt_grid_spec& s) {
  return {s.extent_x, s.extent_y, s.nx, s.ny};
}

omt::WignerGrid grid_from(const omt_grid_spec& spec, const double* values) {
  omt::WignerGrid g{unpack(spec), {}};
  const size_t n = static_cast<size_t>(spec.nx) * spec.ny;
  g.values.assign(values, values + n);
  return g;
}

}  // namespace

extern "C" {

const char* omt_status_name(omt_status s) {
  switch (s) {
    case OMT_OK: return "ok";
    case OMT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OMT_ERR_CRITICAL_COUPLING: return "critical_coupling";
    case OMT_ERR_UNKNOWN_PRESET: return "unknown_preset";
    case OMT_ERR_GRID_TOO_COARSE: return "grid_too_coarse";
    case OMT_ERR_GRID_MISMATCH: return "grid_mismatch";
    case OMT_ERR_NUMERICAL_BRANCH: return "numerical_branch";
    case OMT_ERR_UNSTABLE_STEP: return "unstable_step";
    case OMT_ERR_TOO_FEW_SEGMENTS: return "too_few_segments";
    case OMT_ERR_IO: return "io";
    case OMT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* omt_last_error(void) { return g_last_error.c_str(); }

const char* omt_version(void) { return OMT_VERSION_STRING; }

omt_status omt_model_from_physical(const omt_physical_params* p, omt_model** out) {
  if (auto s = require_args(p && out)) return s;
  return guarded([&] { *out = new omt_model{omt::Model::from_physical(unpack(*p))}; });
}

omt_status omt_model_from_reduced(const omt_reduced_params* r, omt_model** out) {
  if (auto s = require_args(r && out)) return s;
  return guarded([&] { *out = new omt_model{omt::Model::from_reduced(unpack(*r))}; });
}

omt_status omt_model_from_preset(const char* name, omt_model** out) {
  if (auto s = require_args(name && out)) return s;
  return guarded([&] {
    *out = new omt_model{omt::Model::from_physical(omt::preset(name))};
  });
}

omt_status omt_model_from_config(const char* text, omt_model** out) {
  if (auto s = require_args(text && out)) return s;
  return guarded([&] { *out = new omt_model{omt::Model::from_config_text(text)}; });
}

void omt_model_free(omt_model* m) { delete m; }

omt_status omt_model_reduced(const omt_model* m, omt_reduced_params* out) {
  if (auto s = require_args(m && out)) return s;
  *out = pack(m->model.reduced());
  return OMT_OK;
}

omt_status omt_model_physical(const omt_model* m, omt_physical_params* out) {
  if (auto s = require_args(m && out)) return s;
  if (!m->model.is_physical()) {
    g_last_error = "model was built from reduced parameters";
    return OMT_ERR_INVALID_ARGUMENT;
  }
  *out = pack(*m->model.physical());
  return OMT_OK;
}

omt_status omt_model_effective(const omt_model* m, omt_effective_couplings* out) {
  if (auto s = require_args(m && out)) return s;
  const omt::EffectiveCouplings& e = m->model.effective();
  *out = {e.lambda_l, e.sigma, e.g_sym, e.gamma_prime, e.eta_b,
          e.eta_om,   e.eta_ol, e.eps,  e.tau,         e.q_prime};
  return OMT_OK;
}

omt_status omt_model_scales(const omt_model* m, double* gamma_prime,
                            double* kappa_m, double* g_m) {
  if (auto s = require_args(m != nullptr)) return s;
  if (gamma_prime) *gamma_prime = m->model.gamma_prime();
  if (kappa_m) *kappa_m = m->model.kappa_m();
  if (g_m) *g_m = m->model.g_m();
  return OMT_OK;
}

int omt_model_warning_count(const omt_model* m) {
  return m ? static_cast<int>(m->model.warnings().size()) : 0;
}

const char* omt_model_warning(const omt_model* m, int index) {
  if (!m || index < 0 ||
      index >= static_cast<int>(m->model.warnings().size()))
    return nullptr;
  return m->model.warnings()[index].c_str();
}

omt_status omt_preset_params(const char* name, omt_physical_params* out) {
  if (auto s = require_args(name && out)) return s;
  return guarded([&] { *out = pack(omt::preset(name)); });
}

omt_status omt_susceptibilities_at(const omt_model* m, double omega,
                                   omt_susceptibilities* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::Susceptibilities s = omt::susceptibilities(m->model, omega);
    *out = {pack(s.chi_b), pack(s.chi_c), pack(s.chi_b_em), pack(s.chi_c_em),
            pack(s.chi_cross)};
  });
}

omt_status omt_ideal_gain(const omt_model* m, double omega, omt_complex* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] { *out = pack(omt::ideal_gain(m->model, omega)); });
}

omt_status omt_ideal_transmission(const omt_model* m, const double* omega,
                                  size_t n, double* out) {
  if (auto s = require_args(m && omega && out)) return s;
  return guarded([&] {
    for (size_t i = 0; i < n; ++i)
      out[i] = omt::ideal_transmission(m->model, omega[i]);
  });
}

omt_status omt_optimal_detunings(const omt_model* m, double out[2], size_t* count) {
  if (auto s = require_args(m && out && count)) return s;
  return guarded([&] {
    auto d = omt::optimal_detunings(m->model);
    *count = d.size();
    for (size_t i = 0; i < d.size() && i < 2; ++i) out[i] = d[i];
  });
}

omt_status omt_matched_detuning(const omt_model* m, double* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] { *out = omt::matched_detuning(m->model); });
}

omt_status omt_forward_gains_at(const omt_model* m, double omega,
                                omt_forward_gains* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::TransferGains g = omt::forward_gains(m->model, omega);
    *out = {pack(g.t_ac), pack(g.t_alc), pack(g.t_bc), pack(g.t_cc),
            pack(g.t_clc), pack(g.t_vc), g.sigma};
  });
}

omt_status omt_sum_rule_residual(const omt_model* m, double omega, double* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    *out = omt::sum_rule_residual(omt::forward_gains(m->model, omega));
  });
}

omt_status omt_max_transmission(const omt_model* m, double* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] { *out = omt::max_transmission(m->model); });
}

omt_status omt_noise_budget_at(const omt_model* m, double omega,
                               omt_noise_budget* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::NoiseBudget b = omt::noise_budget(m->model, omega);
    *out = {b.v_opt, b.v_mech, b.v_mw, b.v_det, b.v_total, b.omega, b.t_ac};
  });
}

omt_status omt_noise_budget_matched(const omt_model* m, omt_noise_budget* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::NoiseBudget b = omt::noise_budget_matched(m->model);
    *out = {b.v_opt, b.v_mech, b.v_mw, b.v_det, b.v_total, b.omega, b.t_ac};
  });
}

omt_status omt_added_variance(const omt_model* m, double omega, double* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] { *out = omt::added_variance(m->model, omega); });
}

omt_status omt_transfer_witness(double g_x, double g_y, double v_x, double v_y,
                                omt_witness_report* out) {
  if (auto s = require_args(out != nullptr)) return s;
  return guarded([&] {
    const omt::WitnessReport w = omt::transfer_witness(g_x, g_y, v_x, v_y);
    *out = {w.w_t, w.w_t_min, w.w_floor, w.g_x, w.g_y, w.v_x_add, w.v_y_add};
  });
}

omt_status omt_tv_trace(const omt_model* m, omt_loss_axis axis, int samples,
                        omt_tv_point* out, size_t* n_inout) {
  if (auto s = require_args(m && out && n_inout)) return s;
  return guarded([&] {
    const auto axis_cpp = static_cast<omt::LossAxis>(axis);
    const auto pts = omt::tv_trace(m->model, axis_cpp, samples);
    const size_t n = std::min(*n_inout, pts.size());
    for (size_t i = 0; i < n; ++i)
      out[i] = {pts[i].loss_value, pts[i].t_ac,        pts[i].v_add,
                pts[i].w_t,        pts[i].tick ? 1 : 0, pts[i].skipped ? 1 : 0};
    *n_inout = pts.size();
  });
}

omt_status omt_wigner_fock(int n, const omt_grid_spec* spec, double* values) {
  if (auto s = require_args(spec && values)) return s;
  return guarded([&] {
    const omt::WignerGrid g = omt::wigner_fock(n, unpack(*spec));
    std::memcpy(values, g.values.data(), g.values.size() * sizeof(double));
  });
}

omt_status omt_wigner_cat(double alpha_re, double alpha_im, int odd_parity,
                          const omt_grid_spec* spec, double* values) {
  if (auto s = require_args(spec && values)) return s;
  return guarded([&] {
    const omt::WignerGrid g = omt::wigner_cat(
        {alpha_re, alpha_im},
        odd_parity ? omt::CatParity::Odd : omt::CatParity::Even, unpack(*spec));
    std::memcpy(values, g.values.data(), g.values.size() * sizeof(double));
  });
}

omt_status omt_wigner_gaussian(double variance, const omt_grid_spec* spec,
                               double* values) {
  if (auto s = require_args(spec && values)) return s;
  return guarded([&] {
    const omt::WignerGrid g = omt::wigner_gaussian(variance, unpack(*spec));
    std::memcpy(values, g.values.data(), g.values.size() * sizeof(double));
  });
}

omt_status omt_wigner_propagate(const omt_grid_spec* spec, const double* in,
                                double gain, double v_add, double* out) {
  if (auto s = require_args(spec && in && out)) return s;
  return guarded([&] {
    const omt::WignerGrid g = omt::propagate(grid_from(*spec, in), gain, v_add);
    std::memcpy(out, g.values.data(), g.values.size() * sizeof(double));
  });
}

omt_status omt_wigner_fidelity(const omt_grid_spec* spec, const double* a,
                               const double* b, double* out) {
  if (auto s = require_args(spec && a && b && out)) return s;
  return guarded([&] {
    *out = omt::fidelity(grid_from(*spec, a), grid_from(*spec, b));
  });
}

omt_status omt_wigner_negativity(const omt_grid_spec* spec, const double* w,
                                 double* out) {
  if (auto s = require_args(spec && w && out)) return s;
  return guarded([&] { *out = omt::negativity(grid_from(*spec, w)); });
}

omt_status omt_light_gains_at(const omt_model* m, double omega,
                              omt_light_gains* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::LightGains g = omt::light_gains(m->model, omega);
    *out = {pack(g.t_aa), pack(g.t_ba), pack(g.t_ca)};
  });
}

omt_status omt_photocurrent_spectrum(const omt_model* m, const double* omega,
                                     size_t n, const omt_pulse_spec* pulse,
                                     double* out) {
  if (auto s = require_args(m && omega && pulse && out)) return s;
  return guarded([&] {
    omt::PulseSpec p;
    p.omega_p = pulse->omega_p;
    p.b_theta_var = pulse->b_theta_var;
    if (pulse->shape) p.shape.assign(pulse->shape, pulse->shape + n);
    const auto series = omt::photocurrent_spectrum_pulse(
        m->model, std::vector<double>(omega, omega + n), p);
    std::memcpy(out, series.values.data(), n * sizeof(double));
  });
}

omt_status omt_vacuum_spectrum(const omt_model* m, double h,
                               const double* omega, size_t n, double* optical,
                               double* mechanical, double* microwave,
                               double* total) {
  if (auto s = require_args(m && omega)) return s;
  return guarded([&] {
    const auto vs =
        omt::vacuum_spectrum(m->model, h, std::vector<double>(omega, omega + n));
    if (optical)
      std::memcpy(optical, vs.optical.values.data(), n * sizeof(double));
    if (mechanical)
      std::memcpy(mechanical, vs.mechanical.values.data(), n * sizeof(double));
    if (microwave)
      std::memcpy(microwave, vs.microwave.values.data(), n * sizeof(double));
    if (total) std::memcpy(total, vs.total.values.data(), n * sizeof(double));
  });
}

omt_status omt_reverse_channel_at(const omt_model* m, double omega,
                                  omt_reverse_channel* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] {
    const omt::ReverseChannel r = omt::reverse_channel(m->model, omega);
    *out = {r.s_ratio,      pack(r.c_x_in), pack(r.c_y_in), pack(r.c_x_v),
            pack(r.c_y_v),  pack(r.c_b_in), pack(r.c_c_in), r.noise};
  });
}

omt_status omt_reverse_added_noise(const omt_model* m, double omega,
                                   double* out) {
  if (auto s = require_args(m && out)) return s;
  return guarded([&] { *out = omt::reverse_added_noise(m->model, omega); });
}

namespace {

void cov_to_c(const omt::CovarianceMatrix2Mode& v, double out[16]) {
  for (int i = 0; i < 16; ++i) out[i] = static_cast<double>(v.v[i]);
}

omt::CovarianceMatrix2Mode cov_from_c(const double in[16]) {
  omt::CovarianceMatrix2Mode v;
  for (int i = 0; i < 16; ++i) v.v[i] = in[i];
  return v;
}

}  // namespace

omt_status omt_tmss_covariance(double r, double cov[16]) {
  if (auto s = require_args(cov != nullptr)) return s;
  return guarded([&] { cov_to_c(omt::tmss_covariance(r), cov); });
}

omt_status omt_apply_channel(const double cov[16], int mode, double g_x,
                             double g_y, double v_x, double v_y,
                             double out[16]) {
  if (auto s = require_args(cov && out)) return s;
  return guarded([&] {
    cov_to_c(omt::apply_channel(cov_from_c(cov), mode, g_x, g_y, v_x, v_y), out);
  });
}

omt_status omt_inseparability(const double cov[16], double* out) {
  if (auto s = require_args(cov && out)) return s;
  return guarded([&] { *out = omt::inseparability(cov_from_c(cov)); });
}

omt_status omt_is_bona_fide(const double cov[16], int* out) {
  if (auto s = require_args(cov && out)) return s;
  return guarded([&] { *out = omt::is_bona_fide(cov_from_c(cov)) ? 1 : 0; });
}

omt_status omt_oracle_validate(const omt_model* m, const omt_sim_config* cfg,
                               double band_kappa, double tol,
                               omt_oracle_report* report, double* psd_omega,
                               double* psd_mc, double* psd_analytic,
                               size_t* n_psd) {
  if (auto s = require_args(m && cfg && report && n_psd)) return s;
  return guarded([&] {
    omt::SimConfig c = omt::default_sim_config(m->model, cfg->seed,
                                               cfg->n_segments);
    if (cfg->dt > 0) c.dt = cfg->dt;
    if (cfg->duration > 0) c.duration = cfg->duration;
    const omt::OracleReport rep =
        omt::oracle_validate(m->model, c, band_kappa, tol);
    *report = {rep.deviation.max_rel, rep.deviation.rms_rel,
               rep.deviation.band_lo, rep.deviation.band_hi,
               rep.deviation.n_points, rep.deviation.pass ? 1 : 0};
    const size_t n = rep.mc.omega.size();
    if (psd_omega && psd_mc && psd_analytic && *n_psd >= n) {
      std::memcpy(psd_omega, rep.mc.omega.data(), n * sizeof(double));
      std::memcpy(psd_mc, rep.mc.values.data(), n * sizeof(double));
      std::memcpy(psd_analytic, rep.analytic.values.data(), n * sizeof(double));
    }
    *n_psd = n;
  });
}

}  // extern "C"
