#include "forward.hpp"

#include <cmath>

namespace omt {

TransferGains forward_gains(const Model& m, double omega) {
  const ReducedParams& r = m.reduced();
  const EffectiveCouplings& e = m.effective();
  const cplx i(0.0, 1.0);

  const cplx tinf = ideal_gain(m, omega);
  const cplx kchi = m.kappa_m() * susceptibilities(m, omega).chi_c_em;

  TransferGains g;
  g.sigma = e.sigma;
  g.t_ac = std::sqrt(r.eta_m * e.eta_om) * tinf;
  g.t_alc = std::sqrt(r.eta_m * e.eta_ol) * tinf;
  g.t_bc = i * std::sqrt(r.eta_m * e.eta_b) * tinf;
  g.t_cc = 1.0 - r.eta_m * kchi;
  g.t_clc = -std::sqrt(r.eta_m * (1.0 - r.eta_m)) * kchi;
  g.t_vc = -i * std::sqrt(r.eta_m * e.eta_om) * e.sigma * e.eps *
           std::sqrt(0.5 * r.h_gain) / (2.0 * r.eta_l - 1.0) * tinf;
  return g;
}

double sum_rule_residual(const TransferGains& g) {
  return g.sigma * std::norm(g.t_ac) + std::norm(g.t_alc) + std::norm(g.t_bc) +
         std::norm(g.t_cc) + std::norm(g.t_clc) - 1.0;
}

double max_transmission(double eta_l, double eta_m) {
  if (eta_l == 0.0) return 0.0;
  return eta_m * std::abs(2.0 * eta_l - 1.0);
}

double max_transmission(const Model& m) {
  return max_transmission(m.reduced().eta_l, m.reduced().eta_m);
}

}  // namespace omt
