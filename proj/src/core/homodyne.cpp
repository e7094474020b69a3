#include "homodyne.hpp"

#include <cmath>

#include "response.hpp"

namespace omt {

namespace {

void require_perfect_couplings(const ReducedParams& r, const char* op,
                               bool perfect_detection = false) {
  if (r.eta_l != 1.0 || r.eta_m != 1.0)
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + " is derived for eta_l = eta_m = 1");
  if (perfect_detection && r.eta_d != 1.0)
    throw Error(ErrorCode::InvalidArgument,
                std::string(op) + " additionally assumes eta_d = 1");
}

// sin(pi x)/(pi x) = 1/2 at x = +-kSincHalfMax.
constexpr double kSincHalfMax = 0.6033951150271013;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
  return std::sin(kPi * x) / (kPi * x);
}

// Dressed quantities when the feedback gain is moved to h with the device
// (bare Gamma, C_L, kappa_M, g_M) held fixed.
struct GainDressing {
  double gamma_prime;
  double kappa_m;
  double eta_b;
  double eta_om_over_h;  // 4 C_L / (1 + 4 h C_L), finite at h = 0
  double cmp;            // dressed electromechanical cooperativity
};

GainDressing redress(const Model& m, double h) {
  const double cl = m.reduced().cl;
  const double denom0 = 1.0 + 4.0 * m.reduced().h_gain * cl;
  const double denom = 1.0 + 4.0 * h * cl;
  GainDressing d;
  d.gamma_prime = m.gamma_prime() * denom / denom0;
  d.kappa_m = m.kappa_m();
  d.eta_b = 1.0 / denom;
  d.eta_om_over_h = 4.0 * cl / denom;
  d.cmp = m.reduced().cmp * denom0 / denom;
  return d;
}

struct SpectrumKernel {
  double t_inf_sq;       // T_inf(omega)
  double chi_sq;         // |Gamma' chi_b,EM(Omega + omega)|^2 = (1+u^2) T_inf / C_M'
  cplx gp_chi;           // Gamma' chi_b,EM(Omega + omega)
};

SpectrumKernel kernel_at(const GainDressing& d, double g_m, double omega) {
  const cplx i(0.0, 1.0);
  const cplx chi_b = 1.0 / (0.5 * d.gamma_prime - i * omega);
  const cplx chi_c = 1.0 / (0.5 * d.kappa_m - i * omega);
  const cplx em = 1.0 + g_m * g_m * chi_b * chi_c;
  SpectrumKernel k;
  k.gp_chi = d.gamma_prime * chi_b / em;
  k.chi_sq = std::norm(k.gp_chi);
  const cplx tinf = -2.0 * std::sqrt(d.cmp) /
                    (d.cmp + (1.0 - 2.0 * i * omega / d.gamma_prime) *
                                 (1.0 - 2.0 * i * omega / d.kappa_m));
  k.t_inf_sq = d.cmp > 0.0
                   ? std::norm(tinf)
                   : 0.0;  // T_inf vanishes without the electromechanical pump
  return k;
}

}  // namespace

LightGains light_gains(const Model& m, double omega) {
  require_perfect_couplings(m.reduced(), "light_gains");
  const EffectiveCouplings& e = m.effective();
  const Susceptibilities s = susceptibilities(m, omega);
  const cplx gp_chi = m.gamma_prime() * s.chi_b_em;

  LightGains g;
  g.t_aa = 1.0 - e.eta_om * gp_chi;
  g.t_ba = std::sqrt(e.eta_om * e.eta_b) * gp_chi;
  g.t_ca = std::sqrt(e.eta_om) * ideal_gain(m, omega);
  return g;
}

double default_pulse_duration(const Model& m) {
  // Rectangular pulse whose sinc envelope has FWHM Gamma'/10.
  return 40.0 * kPi * kSincHalfMax / m.gamma_prime();
}

double pulse_modeshape(double omega, double omega_p, double duration) {
  return std::sqrt(0.5 * kPi) * sinc((omega - omega_p) * duration / kTwoPi);
}

SpectrumSeries photocurrent_spectrum_pulse(const Model& m,
                                           const std::vector<double>& omega,
                                           const PulseSpec& pulse) {
  require_perfect_couplings(m.reduced(), "photocurrent_spectrum_pulse", true);
  if (std::abs(m.reduced().h_gain - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument,
                "the pulse photocurrent spectrum assumes optimal gain h' = 1");
  if (pulse.b_theta_var < 0.0)
    throw Error(ErrorCode::InvalidArgument, "b_theta_var must be nonnegative");
  if (!pulse.shape.empty() && pulse.shape.size() != omega.size())
    throw Error(ErrorCode::InvalidArgument,
                "pulse shape sample count must match the grid");

  const double duration = default_pulse_duration(m);
  const double pulse_fwhm = 4.0 * kPi * kSincHalfMax / duration;
  const double t_aa_p = std::norm(light_gains(m, pulse.omega_p).t_aa);
  const double nbar = m.reduced().nbar;

  SpectrumSeries s;
  s.omega = omega;
  s.values.reserve(omega.size());
  for (size_t i = 0; i < omega.size(); ++i) {
    const double t_ba = std::norm(light_gains(m, omega[i]).t_ba);
    const double x = pulse.shape.empty()
                         ? pulse_modeshape(omega[i], pulse.omega_p, duration)
                         : pulse.shape[i];
    s.values.push_back(0.5 + 0.5 * nbar * t_ba +
                       t_aa_p * x * (pulse.b_theta_var - 0.5));
  }
  s.label = "photocurrent_pulse";
  s.meta["omega_p"] = pulse.omega_p;
  s.meta["b_theta_var"] = pulse.b_theta_var;
  s.meta["t_aa_at_pulse"] = t_aa_p;
  s.meta["pulse_fwhm"] = pulse_fwhm;
  // The formula assumes the pulse sits well within the transfer bandwidth.
  s.meta["pulse_narrowband"] = pulse_fwhm <= 0.5 * m.gamma_prime() ? 1.0 : 0.0;
  return s;
}

VacuumSpectra vacuum_spectrum(const Model& m, double h,
                              const std::vector<double>& omega) {
  require_perfect_couplings(m.reduced(), "vacuum_spectrum", true);
  if (h < 0.0)
    throw Error(ErrorCode::InvalidArgument, "feedback gain h must be nonnegative");

  const double cl = m.reduced().cl;
  const double nbar = m.reduced().nbar;
  const bool squash_limit = std::isinf(h);
  const GainDressing d = redress(m, squash_limit ? m.reduced().h_gain : h);
  const double g_m = m.g_m();

  VacuumSpectra vs;
  vs.optical.label = "vacuum_homodyne_optical";
  vs.mechanical.label = "vacuum_homodyne_mechanical";
  vs.microwave.label = "vacuum_homodyne_microwave";
  vs.total.label = "vacuum_homodyne_total";
  for (auto* s : {&vs.optical, &vs.mechanical, &vs.microwave, &vs.total}) {
    s->omega = omega;
    s->values.reserve(omega.size());
    s->meta["h"] = h;
    s->meta["gamma_prime"] = d.gamma_prime;
    s->meta["cmp"] = d.cmp;
  }

  for (double w : omega) {
    const SpectrumKernel k = kernel_at(d, g_m, w);
    double mech, mw, total;
    if (squash_limit) {
      mech = 0.0;
      mw = 0.0;
      total = 0.5 - 0.25 * k.t_inf_sq - 0.125 * k.chi_sq;
    } else {
      mech = 0.25 * (2.0 * nbar + 1.0) * d.eta_om_over_h * d.eta_b * k.chi_sq;
      mw = 0.25 * d.eta_om_over_h * k.t_inf_sq;
      const double quad =
          4.0 * cl * (0.5 + nbar + cl) - 2.0 * h * cl * (1.0 + 2.0 * h * cl);
      total = 0.5 + 0.25 * ((4.0 * cl + 1.0) * d.eta_b - 1.0) * k.t_inf_sq +
              0.5 * quad * d.eta_b * d.eta_b * k.chi_sq;
    }
    vs.mechanical.values.push_back(mech);
    vs.microwave.values.push_back(mw);
    vs.total.values.push_back(total);
    vs.optical.values.push_back(total - mech - mw);
  }
  return vs;
}

}  // namespace omt
