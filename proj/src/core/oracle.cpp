#include "oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "forward.hpp"
#include "noise.hpp"
#include "response.hpp"

namespace omt {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Box-Muller on top of mt19937_64: keeps the stream independent of the
// standard library's normal_distribution implementation.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : eng_(seed) {}

  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  cplx circular(double amp) { return amp * cplx((*this)(), (*this)()); }

 private:
  double uniform() {
    return (eng_() >> 11) * 0x1.0p-53;  // [0, 1)
  }
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_ = false;
};

void validate_config(const Model& m, const SimConfig& cfg) {
  if (cfg.dt <= 0.0 || cfg.duration <= 0.0)
    throw Error(ErrorCode::InvalidArgument, "dt and duration must be positive");
  const double fast = std::max({m.gamma_prime(), m.kappa_m(), 2.0 * m.g_m()});
  if (cfg.dt * fast >= 0.05)
    throw Error(ErrorCode::InvalidArgument,
                "dt too coarse: dt * max(Gamma', kappa_M, 2 g_M) must stay below 0.05");
  const double slow = std::min(m.gamma_prime(), m.kappa_m());
  if (cfg.duration < 50.0 / slow)
    throw Error(ErrorCode::InvalidArgument,
                "duration must cover at least 50 / min(Gamma', kappa_M)");
}

}  // namespace

TraceBundle simulate(const Model& m, const SimConfig& cfg) {
  validate_config(m, cfg);
  const ReducedParams& r = m.reduced();
  const EffectiveCouplings& e = m.effective();
  const double gp = m.gamma_prime();
  const double km = m.kappa_m();
  const double gm = m.g_m();
  const double dt = cfg.dt;

  // b_drv weights and per-quadrature spectral densities of the effective
  // mechanical input channels. Quadratures are X = sqrt(2) Re(z), so a
  // density S_q needs increment variance S_q dt / 2 per real component.
  // Phases on circular noises are irrelevant to any spectrum, so only
  // magnitudes are kept.
  struct Channel {
    double weight;
    double amp;
  };
  auto amp_for = [dt](double s_q) { return std::sqrt(0.5 * s_q * dt); };
  std::vector<Channel> drive;
  drive.push_back({std::sqrt(e.eta_b), amp_for(r.nbar + 0.5)});
  drive.push_back({std::sqrt(e.eta_om), amp_for(0.5)});
  if (e.eta_ol > 0.0) {
    const double hl = r.h_gain * e.lambda_l;
    const double s_avg = 0.25 * (2.0 * hl + 0.5 / hl);
    drive.push_back({std::sqrt(e.eta_ol), amp_for(s_avg)});
  }
  if (r.eta_d < 1.0) {
    const double coef = std::sqrt(0.5 * e.eta_om * r.h_gain) * e.eps /
                        std::abs(2.0 * r.eta_l - 1.0);
    drive.push_back({coef, amp_for(0.5)});
  }

  const std::size_t n = static_cast<std::size_t>(cfg.duration / dt);
  TraceBundle out;
  out.dt = dt;
  out.c_out.resize(n);
  if (cfg.store_internal) {
    out.b.resize(n);
    out.c.resize(n);
  }

  Gaussian rng(cfg.seed);
  const double amp_cin = amp_for(0.5);
  const double sqrt_eta_m = std::sqrt(r.eta_m);
  const double sqrt_loss_m = std::sqrt(1.0 - r.eta_m);
  const double scale = 1e6 * std::sqrt(std::max(1.0, r.nbar + 1.0) + r.cl);
  const cplx i(0.0, 1.0);

  cplx b = cfg.b0, c = cfg.c0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx dz_drv = 0.0;
    cplx dz_cin = 0.0, dz_cl = 0.0;
    if (!cfg.zero_noise) {
      for (const Channel& ch : drive) dz_drv += ch.weight * rng.circular(ch.amp);
      dz_cin = rng.circular(amp_cin);
      if (r.eta_m < 1.0) dz_cl = rng.circular(amp_cin);
    }

    out.c_out[k] = dz_cin / dt - std::sqrt(r.eta_m * km) * c;
    if (cfg.store_internal) {
      out.b[k] = b;
      out.c[k] = c;
    }

    const cplx b_next =
        b + dt * (-0.5 * gp * b + i * gm * c) + std::sqrt(gp) * dz_drv;
    const cplx c_next =
        c + dt * (-0.5 * km * c + i * gm * b) +
        std::sqrt(km) * (sqrt_eta_m * dz_cin + sqrt_loss_m * dz_cl);
    b = b_next;
    c = c_next;

    if ((k & 0x3ff) == 0 && (std::abs(b) > scale || std::abs(c) > scale))
      throw Error(ErrorCode::UnstableStep,
                  "trajectory magnitude exceeded 1e6 x steady-state scale");
  }
  return out;
}

SpectrumSeries welch_psd(const std::vector<cplx>& trace, Quadrature q,
                         double dt, int n_segments) {
  if (n_segments < 8)
    throw Error(ErrorCode::TooFewSegments, "welch_psd needs at least 8 segments");
  const std::size_t n = trace.size();
  std::size_t nper = 1;
  while (nper * 2 <= 2 * n / static_cast<std::size_t>(n_segments + 1)) nper *= 2;
  if (nper < 64)
    throw Error(ErrorCode::InvalidArgument,
                "trace too short for the requested segment count");
  const std::size_t hop = nper / 2;

  std::vector<double> window(nper);
  double wsum2 = 0.0;
  for (std::size_t j = 0; j < nper; ++j) {
    window[j] = 0.5 * (1.0 - std::cos(kTwoPi * j / (nper - 1)));
    wsum2 += window[j] * window[j];
  }

  std::vector<double> in(nper);
  std::vector<double> psd(nper / 2 + 1, 0.0);
  fftw_complex* spec = fftw_alloc_complex(nper / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(nper), in.data(), spec,
                                FFTW_ESTIMATE);
  }

  int used = 0;
  for (int s = 0; s < n_segments; ++s) {
    const std::size_t start = static_cast<std::size_t>(s) * hop;
    if (start + nper > n) break;
    for (std::size_t j = 0; j < nper; ++j) {
      const cplx z = trace[start + j];
      const double x = q == Quadrature::X ? std::sqrt(2.0) * z.real()
                                          : std::sqrt(2.0) * z.imag();
      in[j] = window[j] * x;
    }
    fftw_execute(plan);
    for (std::size_t k = 0; k <= nper / 2; ++k)
      psd[k] += (spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1]);
    ++used;
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spec);
  if (used < 8)
    throw Error(ErrorCode::TooFewSegments,
                "trace provides fewer than 8 full segments");

  SpectrumSeries out;
  out.label = "welch_psd";
  out.meta["n_segments"] = used;
  out.meta["segment_samples"] = static_cast<double>(nper);
  const double norm = dt / (wsum2 * used);
  out.omega.reserve(nper / 2 + 1);
  out.values.reserve(nper / 2 + 1);
  for (std::size_t k = 0; k <= nper / 2; ++k) {
    out.omega.push_back(kTwoPi * k / (nper * dt));
    out.values.push_back(psd[k] * norm);
  }
  return out;
}

DeviationReport compare(const SpectrumSeries& analytic, const SpectrumSeries& mc,
                        double band_lo, double band_hi, double tol) {
  if (analytic.omega.size() < 2 || mc.omega.empty())
    throw Error(ErrorCode::InvalidArgument, "compare needs populated series");

  auto interp = [&analytic](double w) {
    const auto& xs = analytic.omega;
    auto it = std::lower_bound(xs.begin(), xs.end(), w);
    if (it == xs.begin()) return analytic.values.front();
    if (it == xs.end()) return analytic.values.back();
    const std::size_t j = it - xs.begin();
    const double t = (w - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return (1.0 - t) * analytic.values[j - 1] + t * analytic.values[j];
  };

  DeviationReport rep;
  rep.band_lo = band_lo;
  rep.band_hi = band_hi;
  rep.tol = tol;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < mc.omega.size(); ++k) {
    const double w = mc.omega[k];
    if (w < band_lo || w > band_hi) continue;
    const double ref = interp(w);
    if (ref == 0.0) continue;
    const double rel = std::abs(mc.values[k] - ref) / std::abs(ref);
    rep.max_rel = std::max(rep.max_rel, rel);
    sum_sq += rel * rel;
    ++rep.n_points;
  }
  if (rep.n_points == 0)
    throw Error(ErrorCode::InvalidArgument, "comparison band holds no samples");
  rep.rms_rel = std::sqrt(sum_sq / rep.n_points);
  rep.pass = rep.rms_rel <= tol;
  return rep;
}

SpectrumSeries analytic_output_spectrum(const Model& m,
                                        const std::vector<double>& omega) {
  SpectrumSeries s;
  s.label = "analytic_output_quadrature_psd";
  s.omega = omega;
  s.values.reserve(omega.size());
  for (double w : omega) {
    const double noise = added_variance(m, w);
    const double signal = 0.5 * std::norm(forward_gains(m, w).t_ac);
    s.values.push_back(noise + signal);
  }
  return s;
}

OracleReport oracle_validate(const Model& m, const SimConfig& cfg,
                             double band_kappa, double tol) {
  OracleReport rep;
  const TraceBundle trace = simulate(m, cfg);
  rep.mc = welch_psd(trace.c_out, Quadrature::X, trace.dt, cfg.n_segments);
  rep.analytic = analytic_output_spectrum(m, rep.mc.omega);
  const double lo = rep.mc.omega.size() > 1 ? rep.mc.omega[1] : 0.0;
  rep.deviation =
      compare(rep.analytic, rep.mc, lo, band_kappa * m.kappa_m(), tol);
  return rep;
}

SimConfig default_sim_config(const Model& m, std::uint64_t seed,
                             int n_segments) {
  SimConfig cfg;
  const double fast = std::max({m.gamma_prime(), m.kappa_m(), 2.0 * m.g_m()});
  cfg.dt = 0.02 / fast;
  const std::size_t nper = 4096;
  cfg.duration = cfg.dt * nper * (n_segments + 1) / 2.0 * 1.01;
  cfg.seed = seed;
  cfg.n_segments = n_segments;
  return cfg;
}

}  // namespace omt
