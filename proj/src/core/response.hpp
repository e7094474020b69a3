#pragma once

#include <vector>

#include "params.hpp"
#include "types.hpp"

namespace omt {

/// Bare and electromechanically dressed susceptibilities evaluated at a
/// detuning from the upper mechanical sideband. chi_b is the mechanical
/// susceptibility at absolute frequency Omega + omega, chi_c the microwave
/// one at omega; the dressed forms and the cross-susceptibility follow the
/// same offsets, so the mechanical frequency never enters numerically.
struct Susceptibilities {
  cplx chi_b;
  cplx chi_c;
  cplx chi_b_em;
  cplx chi_c_em;
  cplx chi_cross;
};

Susceptibilities susceptibilities(const Model& m, double omega);

/// Transfer gain in the limit of infinite optomechanical cooperativity,
/// t_inf(omega) = -2 sqrt(C_M') / (C_M' + (1 - 2i omega/Gamma')(1 - 2i omega/kappa_M)).
cplx ideal_gain(const Model& m, double omega);

/// |t_inf|^2.
double ideal_transmission(const Model& m, double omega);

/// Detunings at which the ideal transmission reaches exactly unity: {0} for
/// C_M' = 1, the hybridised-peak pair for beta = 1 and C_M' > 1, empty
/// otherwise. Tolerance 1e-9 on both matching conditions.
std::vector<double> optimal_detunings(const Model& m);

/// The detuning used for "matched transfer" evaluations: an optimal detuning
/// when one exists (preferring 0), otherwise the argmax of the ideal
/// transmission.
double matched_detuning(const Model& m);

SpectrumSeries transmission_spectrum(const Model& m,
                                     const std::vector<double>& omega);

/// Default grid: 2001 points spanning +-max(5 Gamma', 5 kappa_M, 3 g_M).
std::vector<double> default_grid(const Model& m, int points = 2001);

}  // namespace omt
