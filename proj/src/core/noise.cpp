#include "noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "response.hpp"

namespace omt {

namespace {

NoiseBudget budget_at_tinf(const ReducedParams& r, const EffectiveCouplings& e,
                           double tinf) {
  const double hl = r.h_gain * e.lambda_l;  // h' lambda_L
  // eta_OL / lambda_L stays finite as eta_L -> 0 where lambda_L vanishes.
  const double eta_ol_over_lambda =
      8.0 * r.h_gain * r.cl * (1.0 - r.eta_l) / (1.0 + 4.0 * hl * r.cl);

  NoiseBudget b;
  b.v_opt = 0.25 * r.eta_m *
            (e.eta_ol * 2.0 * hl + 0.5 * eta_ol_over_lambda / r.h_gain) * tinf;
  b.v_mech = r.eta_m * e.eta_b * (r.nbar + 0.5) * tinf;
  b.v_mw = 0.5 * (1.0 - r.eta_m * tinf);
  const double d = 2.0 * r.eta_l - 1.0;
  b.v_det = 0.25 * r.eta_m * e.eta_om / (d * d) * (1.0 - r.eta_d) / r.eta_d *
            r.h_gain * tinf;
  b.v_total = b.v_opt + b.v_mech + b.v_mw + b.v_det;
  return b;
}

}  // namespace

NoiseBudget noise_budget(const Model& m, double omega) {
  NoiseBudget b = budget_at_tinf(m.reduced(), m.effective(),
                                 ideal_transmission(m, omega));
  b.omega = omega;
  b.t_ac = m.reduced().eta_m * m.effective().eta_om *
           ideal_transmission(m, omega);
  return b;
}

NoiseBudget noise_budget_matched(const Model& m) {
  NoiseBudget b = budget_at_tinf(m.reduced(), m.effective(), 1.0);
  b.omega = matched_detuning(m);
  b.t_ac = m.reduced().eta_m * m.effective().eta_om;
  return b;
}

double added_variance(const Model& m, double omega) {
  return noise_budget(m, omega).v_total;
}

WitnessReport transfer_witness(double g_x, double g_y, double v_x_add,
                               double v_y_add) {
  if (v_x_add < 0.0 || v_y_add < 0.0)
    throw Error(ErrorCode::InvalidArgument, "added variances must be nonnegative");
  WitnessReport w;
  w.g_x = g_x;
  w.g_y = g_y;
  w.v_x_add = v_x_add;
  w.v_y_add = v_y_add;
  const double gg = std::abs(g_x * g_y);
  w.w_t = std::sqrt(4.0 * v_x_add * v_y_add) / (gg + 1.0);
  const double num = g_x * g_y - 1.0;
  w.w_t_min = num * num / ((gg + 1.0) * (gg + 1.0));
  w.w_floor = std::sqrt(w.w_t_min);
  return w;
}

std::vector<TvPoint> tv_trace(const Model& base, LossAxis axis, int samples) {
  if (samples < 2)
    throw Error(ErrorCode::InvalidArgument, "tv_trace needs at least 2 samples");
  const ReducedParams r0 = base.reduced();

  std::vector<double> etas;
  etas.reserve(samples + 11);
  for (int i = 0; i < samples; ++i)
    etas.push_back(1.0 - static_cast<double>(i) / (samples - 1) * 0.999);
  for (int k = 0; k <= 10; ++k) etas.push_back(1.0 - 0.1 * k);
  std::sort(etas.begin(), etas.end(), std::greater<>());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());

  std::vector<TvPoint> out;
  out.reserve(etas.size());
  for (double eta : etas) {
    if (eta <= 0.0) continue;
    ReducedParams r = r0;
    switch (axis) {
      case LossAxis::EtaL: r.eta_l = eta; break;
      case LossAxis::EtaM: r.eta_m = eta; break;
      case LossAxis::EtaD: r.eta_d = eta; break;
    }
    TvPoint p;
    p.loss_value = eta;
    p.tick = std::abs(eta * 10.0 - std::round(eta * 10.0)) < 1e-12;
    try {
      Model m = Model::from_reduced(r);
      NoiseBudget b = noise_budget_matched(m);
      p.t_ac = b.t_ac;
      p.v_add = b.v_total;
      const double g = std::sqrt(b.t_ac);
      p.w_t = transfer_witness(g, g, b.v_total, b.v_total).w_t;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::CriticalCoupling) throw;
      p.skipped = true;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace omt
