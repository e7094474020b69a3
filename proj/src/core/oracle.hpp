#pragma once

#include <cstdint>
#include <vector>

#include "params.hpp"
#include "types.hpp"

namespace omt {

/// Euler-Maruyama configuration in the model's rate units. Stability demands
/// dt * max(Gamma', kappa_M, 2 g_M) < 0.05 and duration >= 50 / min(Gamma',
/// kappa_M); both are enforced.
struct SimConfig {
  double dt = 0;
  double duration = 0;
  std::uint64_t seed = 1;
  int n_segments = 256;
  bool store_internal = false;  ///< keep the b and c trajectories too
  bool zero_noise = false;      ///< deterministic damping check
  cplx b0 = 0;                  ///< initial conditions
  cplx c0 = 0;
};

/// Rotating-frame trajectories. c_out is the transmission-line output sample
/// c_in - sqrt(eta_M kappa_M) c; b and c are only populated on request.
struct TraceBundle {
  double dt = 0;
  std::vector<cplx> c_out;
  std::vector<cplx> b;
  std::vector<cplx> c;
};

/// Integrates the linear Langevin model in the sideband rotating frame with
/// the effective mechanical drive channels (thermal bath, transferred
/// optical vacuum, squeezed loss-port vacuum, detection vacuum) plus the
/// microwave line and loss ports. Throws UnstableStep if a trajectory leaves
/// its steady-state scale by more than 1e6.
TraceBundle simulate(const Model& m, const SimConfig& cfg);

enum class Quadrature { X, Y };

/// Hann-windowed 50%-overlap Welch periodogram of one output quadrature,
/// normalised so white noise of per-quadrature density 1/2 reads flat 1/2.
/// Returns the even two-sided density sampled on the nonnegative grid.
SpectrumSeries welch_psd(const std::vector<cplx>& trace, Quadrature q,
                         double dt, int n_segments);

struct DeviationReport {
  double max_rel = 0;
  double rms_rel = 0;
  double band_lo = 0;
  double band_hi = 0;
  int n_points = 0;
  double tol = 0;
  bool pass = false;
};

/// Relative deviation of mc against analytic over [band_lo, band_hi]; the
/// analytic series is linearly interpolated onto the mc grid.
DeviationReport compare(const SpectrumSeries& analytic, const SpectrumSeries& mc,
                        double band_lo, double band_hi, double tol);

/// Analytic total output quadrature spectrum S^noise(omega) + T_ac(omega)/2
/// for a vacuum optical input, the quantity the Monte Carlo estimates.
SpectrumSeries analytic_output_spectrum(const Model& m,
                                        const std::vector<double>& omega);

struct OracleReport {
  DeviationReport deviation;
  SpectrumSeries mc;
  SpectrumSeries analytic;
};

/// One-call validation: simulate, estimate the output PSD and compare with
/// the analytic spectrum over +-band_kappa * kappa_M at the given tolerance.
OracleReport oracle_validate(const Model& m, const SimConfig& cfg,
                             double band_kappa = 3.0, double tol = 0.05);

/// Default configuration for a model: dt at 40% of the stability bound,
/// enough samples for the requested Welch segments of 4096 samples.
SimConfig default_sim_config(const Model& m, std::uint64_t seed,
                             int n_segments = 1024);

}  // namespace omt
