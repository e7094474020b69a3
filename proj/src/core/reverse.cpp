#include "reverse.hpp"

#include <cmath>

#include "forward.hpp"
#include "homodyne.hpp"
#include "response.hpp"

namespace omt {

namespace {

void require_scope(const Model& m, const char* op) {
  const ReducedParams& r = m.reduced();
  if (r.eta_l != 1.0 || r.eta_m != 1.0)
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + " assumes perfect cavity couplings");
}

cplx delay_phase(const Model& m, double omega) {
  const cplx i(0.0, 1.0);
  if (m.is_physical()) {
    const double tau = m.effective().tau;
    return std::exp(i * (m.physical()->omega + omega) * tau);
  }
  return i;  // exp(i Omega tau) in the high-Q limit
}

}  // namespace

ReverseChannel reverse_channel(const Model& m, double omega) {
  require_scope(m, "reverse_channel");
  const double eta_d = m.reduced().eta_d;
  const LightGains lg = light_gains(m, omega);
  const cplx i(0.0, 1.0);
  const cplx ph = delay_phase(m, omega);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  ReverseChannel rc;
  rc.s_ratio = 1.0;
  rc.c_x_in = ph * std::sqrt(eta_d) * (eta_d - 1.0 + lg.t_aa) / eta_d * inv_sqrt2;
  rc.c_y_in = ph * std::sqrt(eta_d) * i * lg.t_aa * inv_sqrt2;
  rc.c_x_v = -ph * std::sqrt(1.0 - eta_d) * inv_sqrt2;
  rc.c_y_v = -ph * std::sqrt(1.0 - eta_d) * i * lg.t_aa * inv_sqrt2;
  rc.c_b_in = lg.t_ba;
  rc.c_c_in = -i * lg.t_ca;
  rc.noise = reverse_added_noise(m, omega);
  return rc;
}

double reverse_added_noise(const Model& m, double omega) {
  require_scope(m, "reverse_added_noise");
  const ReducedParams& r = m.reduced();
  const EffectiveCouplings& e = m.effective();
  const LightGains lg = light_gains(m, omega);
  const double t_aa_sq = std::norm(lg.t_aa);
  const double t_ba_sq = std::norm(lg.t_ba);
  return 0.5 * t_aa_sq + (r.nbar + 0.5) * t_ba_sq +
         (1.0 - r.eta_d) / (4.0 * r.eta_d) * e.eta_om / e.eta_b * t_ba_sq;
}

double forward_noise_by_exchange(const Model& m, double omega) {
  require_scope(m, "forward_noise_by_exchange");
  const ReducedParams& r = m.reduced();
  const EffectiveCouplings& e = m.effective();
  const TransferGains g = forward_gains(m, omega);
  const double t_cc_sq = std::norm(g.t_cc);
  const double t_bc_sq = std::norm(g.t_bc);
  return 0.5 * t_cc_sq + (r.nbar + 0.5) * t_bc_sq +
         (1.0 - r.eta_d) / (4.0 * r.eta_d) * e.eta_om / e.eta_b * t_bc_sq;
}

std::array<cplx, 6> reverse_bogoliubov_coefficients(const Model& m,
                                                    double omega) {
  require_scope(m, "reverse_bogoliubov_coefficients");
  const double eta_d = m.reduced().eta_d;
  const LightGains lg = light_gains(m, omega);
  const cplx i(0.0, 1.0);
  const cplx ph = delay_phase(m, omega);
  const cplx taa = lg.t_aa;

  std::array<cplx, 6> c;
  c[0] = ph * std::sqrt(eta_d) * (eta_d - 1.0 + (1.0 + eta_d) * taa) / (2.0 * eta_d);
  c[1] = ph * std::sqrt(eta_d) * (1.0 - eta_d) * (taa - 1.0) / (2.0 * eta_d);
  c[2] = -ph * std::sqrt(1.0 - eta_d) * (taa + 1.0) / 2.0;
  c[3] = ph * std::sqrt(1.0 - eta_d) * (taa - 1.0) / 2.0;
  c[4] = lg.t_ba;
  c[5] = -i * lg.t_ca;
  return c;
}

CfbGainRatios cfb_gain_ratios(double c1, double c2, double eta_d) {
  if (c1 <= 0.0 || c2 <= 0.0 || eta_d <= 0.0 || eta_d > 1.0)
    throw Error(ErrorCode::InvalidArgument,
                "cooperativities must be positive and eta_d in (0, 1]");
  return {std::sqrt(eta_d * c2 / c1), std::sqrt(c2 / (eta_d * c1))};
}

}  // namespace omt
