#pragma once

#include <array>

#include "params.hpp"
#include "types.hpp"

namespace omt {

/// Coherent-feedback microwave -> optical transfer at the no-squeezing
/// operating point s = 1. Coefficients decompose the output mode at detuning
/// omega from the upper sideband onto the optical input quadratures, the
/// feedback vacuum quadratures, the mechanical bath and the microwave input.
struct ReverseChannel {
  double s_ratio = 1;
  cplx c_x_in;
  cplx c_y_in;
  cplx c_x_v;
  cplx c_y_v;
  cplx c_b_in;
  cplx c_c_in;
  double noise = 0;  ///< added-noise variance per quadrature at this detuning
};

/// Assumes perfect cavity couplings (eta_l = eta_m = 1), the scope of the
/// coherent-feedback analysis. For physical models the quarter-cycle delay
/// phase exp(i (Omega + omega) tau) is applied exactly; in reduced mode the
/// high-Q value i is used.
ReverseChannel reverse_channel(const Model& m, double omega);

/// Quadrature-symmetric added noise of the reverse transfer,
/// |t_aa|^2/2 + (nbar + 1/2)|t_ba|^2 + (1-eta_d)/(4 eta_d) eta_OM |t_ba|^2 / eta_b,
/// with the light gains taken at the upper sideband. Tends to
/// (1/eta_d - 1)/4 at matched transfer and high cooperativity.
double reverse_added_noise(const Model& m, double omega);

/// Forward added noise assembled through the a <-> c exchanged template of
/// the reverse formula (microwave transfer gains instead of light gains).
/// Coincides with the module noise budget at eta_l = eta_m = 1; kept as an
/// independent route for the symmetry check.
double forward_noise_by_exchange(const Model& m, double omega);

/// Coefficients of the general-s Bogoliubov output decomposition onto
/// {a_in^R(w), a_in^R(-w)^dag, a_v^R(w), a_v^R(-w)^dag, b_in, c_in}; the
/// commutator sum |c0|^2 - |c1|^2 + |c2|^2 - |c3|^2 + |c4|^2 + |c5|^2
/// equals 1 for every eta_d.
std::array<cplx, 6> reverse_bogoliubov_coefficients(const Model& m,
                                                    double omega);

/// Forward and reverse squeezing ratios of a coherent-feedback loop with
/// cavity cooperativities c1, c2 and loop efficiency eta_d:
/// h = sqrt(eta_d c2 / c1), s = sqrt(c2 / (eta_d c1)).
struct CfbGainRatios {
  double h;
  double s;
};
CfbGainRatios cfb_gain_ratios(double c1, double c2, double eta_d);

}  // namespace omt
