#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "core/params.hpp"

namespace omt::test {

inline ReducedParams reduced(double cl, double cmp, double beta, double eta_l = 1,
                             double eta_m = 1, double eta_d = 1, double nbar = 0,
                             double h_gain = 1) {
  ReducedParams r;
  r.cl = cl;
  r.cmp = cmp;
  r.beta = beta;
  r.eta_l = eta_l;
  r.eta_m = eta_m;
  r.eta_d = eta_d;
  r.nbar = nbar;
  r.h_gain = h_gain;
  return r;
}

inline Model model(double cl, double cmp, double beta, double eta_l = 1,
                   double eta_m = 1, double eta_d = 1, double nbar = 0,
                   double h_gain = 1) {
  return Model::from_reduced(reduced(cl, cmp, beta, eta_l, eta_m, eta_d, nbar, h_gain));
}

/// Uniform draw helpers around a fixed-seed engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  /// Efficiency excluding the critical-coupling window.
  double eta_l_safe(double margin = 1e-3) {
    for (;;) {
      const double x = uniform(0.0, 1.0);
      if (std::abs(x - 0.5) >= margin) return x;
    }
  }

 private:
  std::mt19937_64 eng_;
};

/// Adaptive Simpson quadrature for the closed-form test oracles.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 4000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace omt::test
