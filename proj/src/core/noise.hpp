#pragma once

#include <vector>

#include "params.hpp"

namespace omt {

/// Added-noise budget of the microwave output quadratures (vacuum = 1/2).
/// The transfer model is quadrature-symmetric, so one budget describes both
/// X and Y.
struct NoiseBudget {
  double v_opt = 0;    ///< transferred optical loss-port noise
  double v_mech = 0;   ///< residual thermomechanical noise
  double v_mw = 0;     ///< microwave vacuum (reflection + loss port)
  double v_det = 0;    ///< detection-vacuum noise fed back onto the resonator
  double v_total = 0;
  double omega = 0;    ///< evaluation detuning
  double t_ac = 0;     ///< transmission at omega
};

/// Budget per the general-gain output-noise spectrum, evaluated at one
/// detuning from the upper sideband.
NoiseBudget noise_budget(const Model& m, double omega);

/// Budget with the ideal transmission pinned (the paper's "matched transfer"
/// convention, T_inf = 1).
NoiseBudget noise_budget_matched(const Model& m);

/// V_X^add = S^noise[X_M,out](omega). Valid for input pulses spectrally
/// narrow with respect to the transfer bandwidth.
double added_variance(const Model& m, double omega);

struct WitnessReport {
  double w_t = 0;       ///< quantum transfer witness
  double w_t_min = 0;   ///< Heisenberg floor on W_T^2, |gx gy - 1|^2/(|gx gy|+1)^2
  double w_floor = 0;   ///< floor on W_T itself, sqrt(w_t_min)
  double g_x = 0;
  double g_y = 0;
  double v_x_add = 0;
  double v_y_add = 0;
};

/// W_T = sqrt(4 Vx Vy) / (|gx gy| + 1) for a channel X_out = g X_in + noise.
/// W_T < 1 marks beyond-LOCC performance and preservation of perfect input
/// Gaussian entanglement.
WitnessReport transfer_witness(double g_x, double g_y, double v_x_add,
                               double v_y_add);

enum class LossAxis { EtaL, EtaM, EtaD };

struct TvPoint {
  double loss_value = 0;
  double t_ac = 0;
  double v_add = 0;
  double w_t = 0;
  bool tick = false;     ///< marks 10% loss increments
  bool skipped = false;  ///< critical coupling hit on the eta_L axis
};

/// Parametric transmission/noise trace at matched transfer, sweeping one
/// efficiency from 1 down while holding the others at the base model.
std::vector<TvPoint> tv_trace(const Model& base, LossAxis axis, int samples);

}  // namespace omt
