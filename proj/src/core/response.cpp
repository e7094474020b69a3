#include "response.hpp"

#include <algorithm>
#include <cmath>

namespace omt {

Susceptibilities susceptibilities(const Model& m, double omega) {
  const double gp = m.gamma_prime();
  const double km = m.kappa_m();
  const double gm = m.g_m();
  const cplx i(0.0, 1.0);

  Susceptibilities s;
  s.chi_b = 1.0 / (0.5 * gp - i * omega);
  s.chi_c = 1.0 / (0.5 * km - i * omega);
  const cplx em = 1.0 + gm * gm * s.chi_b * s.chi_c;
  s.chi_b_em = s.chi_b / em;
  s.chi_c_em = s.chi_c / em;
  s.chi_cross = gm * s.chi_b * s.chi_c / em;
  return s;
}

cplx ideal_gain(const Model& m, double omega) {
  const double gp = m.gamma_prime();
  const double km = m.kappa_m();
  const double cmp = m.reduced().cmp;
  const cplx i(0.0, 1.0);
  return -2.0 * std::sqrt(cmp) /
         (cmp + (1.0 - 2.0 * i * omega / gp) * (1.0 - 2.0 * i * omega / km));
}

double ideal_transmission(const Model& m, double omega) {
  return std::norm(ideal_gain(m, omega));
}

std::vector<double> optimal_detunings(const Model& m) {
  constexpr double tol = 1e-9;
  const double cmp = m.reduced().cmp;
  const double beta = m.reduced().beta;
  if (std::abs(cmp - 1.0) <= tol) return {0.0};
  if (std::abs(beta - 1.0) <= tol && cmp > 1.0) {
    const double w = 0.5 * m.gamma_prime() * std::sqrt(cmp - 1.0);
    return {-w, w};
  }
  return {};
}

double matched_detuning(const Model& m) {
  auto opts = optimal_detunings(m);
  if (!opts.empty()) {
    for (double w : opts)
      if (w == 0.0) return 0.0;
    return *std::max_element(opts.begin(), opts.end());
  }
  // Peak of T_inf in closed form: the denominator is a quadratic in
  // u^2 = (2 omega / kappa_M)^2 minimised at u^2 = (2 C_M' beta - 1 - beta^2)/2.
  const double cmp = m.reduced().cmp;
  const double beta = m.reduced().beta;
  const double u2 = std::max(0.0, 0.5 * (2.0 * cmp * beta - 1.0 - beta * beta));
  return 0.5 * m.kappa_m() * std::sqrt(u2);
}

SpectrumSeries transmission_spectrum(const Model& m,
                                     const std::vector<double>& omega) {
  SpectrumSeries s;
  s.omega = omega;
  s.values.reserve(omega.size());
  for (double w : omega) s.values.push_back(ideal_transmission(m, w));
  s.label = "t_inf_squared";
  s.meta["cmp"] = m.reduced().cmp;
  s.meta["beta"] = m.reduced().beta;
  s.meta["gamma_prime"] = m.gamma_prime();
  s.meta["kappa_m"] = m.kappa_m();
  return s;
}

std::vector<double> default_grid(const Model& m, int points) {
  if (points < 3 || points % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, "grid needs an odd point count >= 3");
  const double span = std::max({5.0 * m.gamma_prime(), 5.0 * m.kappa_m(),
                                3.0 * m.g_m()});
  return symmetric_grid(span, points / 2);
}

}  // namespace omt
