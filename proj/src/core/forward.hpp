#pragma once

#include "params.hpp"
#include "response.hpp"

namespace omt {

/// Complex forward (input -> microwave output) transfer gains at one
/// detuning. Channels: transferred optical signal mode, transferred optical
/// loss mode, mechanical bath, microwave input, microwave loss, detection
/// vacuum.
struct TransferGains {
  cplx t_ac;
  cplx t_alc;
  cplx t_bc;
  cplx t_cc;
  cplx t_clc;
  cplx t_vc;
  double sigma = 1;  ///< +1 beam-splitter regime, -1 two-mode-squeezing regime
};

/// The general-gain forward gains. h' = 1 reproduces the main-text set
/// exactly; the undercoupled branch (sigma = -1) is evaluated with the same
/// formulas and flagged via `sigma`.
TransferGains forward_gains(const Model& m, double omega);

/// sigma*T_ac + T_alc + T_bc + T_cc + T_clc - 1. Zero (to rounding) for all
/// parameters away from critical coupling; the detection-vacuum channel is a
/// classical noise source and does not enter.
double sum_rule_residual(const TransferGains& g);

/// High-cooperativity transmission limit eta_M |2 eta_L - 1| (0 at eta_L = 0).
double max_transmission(const Model& m);
double max_transmission(double eta_l, double eta_m);

}  // namespace omt
