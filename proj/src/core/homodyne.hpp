#pragma once

#include <vector>

#include "params.hpp"
#include "types.hpp"

namespace omt {

/// Input-to-light transfer gains of the cavity output phase quadrature.
/// Detunings are relative to the upper mechanical sideband: t_aa and t_ba are
/// evaluated at absolute frequency Omega + omega, t_ca wraps the ideal gain
/// at omega.
struct LightGains {
  cplx t_aa;
  cplx t_ba;
  cplx t_ca;
};

/// Gains per the perfect-coupling homodyne analysis (eta_L = eta_M = 1).
/// T_aa + T_ba + T_ca = 1 identically.
LightGains light_gains(const Model& m, double omega);

/// Spectral description of a narrowband input pulse for the photocurrent
/// spectrum. b_theta_var is the single moment <B_theta^2> of the pulse
/// quadrature through which the input state enters; shape holds samples of
/// the modeshape factor x(omega) on the evaluation grid (empty selects the
/// default rectangular pulse whose sinc envelope has FWHM Gamma'/10).
struct PulseSpec {
  double omega_p = 0;
  double b_theta_var = 0.5;
  std::vector<double> shape;
};

/// Default modeshape factor x(omega) = pi xi0(omega) xi_t(0) of a rectangular
/// pulse of duration T centred at omega_p.
double pulse_modeshape(double omega, double omega_p, double duration);
double default_pulse_duration(const Model& m);

/// Single-sided photocurrent spectrum for a narrowband pulse at optimal gain:
/// S = 1/2 + (nbar/2) T_ba + T_aa(omega_p) x(omega) (<B_theta^2> - 1/2).
SpectrumSeries photocurrent_spectrum_pulse(const Model& m,
                                           const std::vector<double>& omega,
                                           const PulseSpec& pulse);

/// Per-source symmetrised photocurrent spectra for a vacuum optical input at
/// arbitrary feedback gain h (eta_L = eta_M = eta_d = 1 scope). The device is
/// held fixed: changing h away from the model's operating point re-dresses
/// Gamma', C_M' and beta accordingly. h = 0 and h = +infinity evaluate the
/// closed-form limits.
struct VacuumSpectra {
  SpectrumSeries optical;
  SpectrumSeries mechanical;
  SpectrumSeries microwave;
  SpectrumSeries total;
};

VacuumSpectra vacuum_spectrum(const Model& m, double h,
                              const std::vector<double>& omega);

}  // namespace omt
