#include <doctest.h>

#include <cmath>

#include "core/wigner.hpp"
#include "helpers.hpp"

using namespace omt;
using test::simpson;

namespace {

const GridSpec kOdd{8.0, 8.0, 257, 257};  // odd counts place a sample at 0

double center(const WignerGrid& w) { return w.at(w.spec.nx / 2, w.spec.ny / 2); }

// Radial quadrature oracle for the negativity of a Fock state through a
// symmetric (gain, v_add) channel; computes Int |W| - 1 from the exact
// radial profile obtained by Fourier inversion of L_n(g^2 k^2/2) e^{-c k^2/4}
// with c = g^2 + 2 v_add. Evaluated numerically, independent of the grid code.
double fock_channel_negativity_oracle(int n, double gain, double v_add) {
  const double c = gain * gain + 2.0 * v_add;
  auto w_radial = [&](double r) {
    auto integrand = [&](double k) {
      double lkm1 = 1.0;
      const double x = 0.5 * gain * gain * k * k;
      double lk = 1.0 - x;
      if (n == 0) lk = 1.0;
      for (int j = 1; j < n; ++j) {
        const double lkp1 = ((2.0 * j + 1.0 - x) * lk - j * lkm1) / (j + 1.0);
        lkm1 = lk;
        lk = lkp1;
      }
      return k * lk * std::exp(-0.25 * c * k * k) * std::cyl_bessel_j(0, k * r) /
             (2.0 * kPi);
    };
    return simpson(integrand, 0.0, 40.0, 4000);
  };
  auto abs_w = [&](double r) { return kTwoPi * r * std::abs(w_radial(r)); };
  return simpson(abs_w, 0.0, 10.0, 2000) - 1.0;
}

// Closed-form fidelity of Fock |n> against itself after a (gain, v_add)
// channel: (1/2) Int L_n(u/2) L_n(g^2 u/2) exp(-(1 + g^2 + 2V) u / 4) du.
double fock_channel_fidelity_oracle(int n, double gain, double v_add) {
  auto lag = [n](double x) {
    double lkm1 = 1.0;
    if (n == 0) return lkm1;
    double lk = 1.0 - x;
    for (int j = 1; j < n; ++j) {
      const double lkp1 = ((2.0 * j + 1.0 - x) * lk - j * lkm1) / (j + 1.0);
      lkm1 = lk;
      lk = lkp1;
    }
    return lk;
  };
  const double a = 0.25 * (1.0 + gain * gain + 2.0 * v_add);
  auto f = [&](double u) {
    return lag(0.5 * u) * lag(0.5 * gain * gain * u) * std::exp(-a * u);
  };
  return 0.5 * simpson(f, 0.0, 400.0, 20000);
}

}  // namespace

TEST_CASE("vacuum peak and normalisation") {
  auto w = wigner_fock(0, kOdd);
  CHECK(center(w) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(grid_mass(w) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("single-photon negativity against the radial oracle") {
  auto w = wigner_fock(1, kOdd);
  CHECK(center(w) == doctest::Approx(-1.0 / kPi).epsilon(1e-12));
  const double analytic = 4.0 / std::sqrt(std::exp(1.0)) - 2.0;  // 0.42612...
  CHECK(negativity(w) == doctest::Approx(analytic).epsilon(1e-4));
  CHECK(negativity(w) == doctest::Approx(0.4261).epsilon(1e-3));
  CHECK(fock_channel_negativity_oracle(1, 1.0, 0.0) ==
        doctest::Approx(analytic).epsilon(2e-5));
}

TEST_CASE("two-photon negativity against the radial oracle") {
  auto w = wigner_fock(2, kOdd);
  CHECK(negativity(w) ==
        doctest::Approx(fock_channel_negativity_oracle(2, 1.0, 0.0)).epsilon(1e-3));
}

TEST_CASE("fock bounds") {
  CHECK_THROWS_AS(wigner_fock(21, kOdd), Error);
  CHECK_THROWS_AS(wigner_fock(-1, kOdd), Error);
  CHECK_THROWS_AS(wigner_fock(4, GridSpec{2.0, 2.0, 64, 64}), Error);  // mass lost
}

TEST_CASE("degenerate cat is the vacuum") {
  auto cat = wigner_cat(0.0, CatParity::Even, kOdd);
  auto vac = wigner_fock(0, kOdd);
  double max_dev = 0.0;
  for (size_t i = 0; i < cat.values.size(); ++i)
    max_dev = std::max(max_dev, std::abs(cat.values[i] - vac.values[i]));
  CHECK(max_dev < 1e-10);
}

TEST_CASE("even cat structure") {
  auto cat = wigner_cat(2.0, CatParity::Even, kOdd);
  CHECK(grid_mass(cat) == doctest::Approx(1.0).epsilon(1e-4));
  // Lobes at x = +-2 sqrt(2) on the x axis.
  // Scan past the central interference fringes, whose x-axis cut decays
  // like exp(-x^2) and still tops the lobe for x below ~1.8.
  const int iy0 = kOdd.ny / 2;
  double best_x = 0, best_v = 0;
  const int ix_start = static_cast<int>((1.8 + kOdd.extent_x) / kOdd.dx());
  for (int ix = ix_start; ix < kOdd.nx; ++ix)
    if (cat.at(ix, iy0) > best_v) {
      best_v = cat.at(ix, iy0);
      best_x = kOdd.x(ix);
    }
  CHECK(best_x == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.02));
  // Interference fringes go negative near the origin.
  CHECK(negativity(cat) > 0.1);
}

TEST_CASE("small odd cat approaches the single photon") {
  auto cat = wigner_cat(1e-3, CatParity::Odd, kOdd);
  auto one = wigner_fock(1, kOdd);
  double max_dev = 0.0;
  for (size_t i = 0; i < cat.values.size(); ++i)
    max_dev = std::max(max_dev, std::abs(cat.values[i] - one.values[i]));
  CHECK(max_dev < 1e-5);
  CHECK_THROWS_AS(wigner_cat(0.0, CatParity::Odd, kOdd), Error);
  CHECK_THROWS_AS(wigner_cat({7.0, 0.0}, CatParity::Even, kOdd), Error);
}

TEST_CASE("identity channel is exact") {
  auto in = wigner_fock(1, kOdd);
  auto out = propagate(in, 1.0, 0.0);
  for (size_t i = 0; i < in.values.size(); ++i)
    CHECK(out.values[i] == doctest::Approx(in.values[i]).epsilon(1e-12));
}

TEST_CASE("vacuum plus vacuum-equivalent noise doubles the variance") {
  auto out = propagate(wigner_fock(0, kOdd), 1.0, 0.5);
  auto target = wigner_gaussian(1.0, kOdd);
  double max_dev = 0.0;
  for (size_t i = 0; i < out.values.size(); ++i)
    max_dev = std::max(max_dev, std::abs(out.values[i] - target.values[i]));
  CHECK(max_dev < 1e-5);
  CHECK(grid_mass(out) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("vacuum-equivalent noise erases single-photon negativity") {
  auto out = propagate(wigner_fock(1, kOdd), 1.0, 0.5);
  CHECK(negativity(out) == 0.0);
  auto out2 = propagate(wigner_fock(1, kOdd), 1.0, 0.501);
  CHECK(negativity(out2) == 0.0);
}

TEST_CASE("negativity at partial noise against the closed form") {
  const double v = 0.45;
  auto out = propagate(wigner_fock(1, kOdd), 1.0, v);
  // kappa = 2 g^2 / (g^2 + 2V); N = 2 (exp(-u0)(1 + kappa u0) - 1).
  const double kappa = 2.0 / (1.0 + 2.0 * v);
  const double u0 = 1.0 - 1.0 / kappa;
  const double analytic = 2.0 * (std::exp(-u0) * (1.0 + kappa * u0) - 1.0);
  CHECK(negativity(out) == doctest::Approx(analytic).epsilon(0.02));
}

TEST_CASE("fock fidelities through the channel match the overlap integrals") {
  const GridSpec spec{8.0, 8.0, 513, 513};
  for (auto [n, gain, v] : {std::tuple{1, 1.0, 0.025}, {2, 1.0, 0.025},
                            {1, 0.93914, 0.14459}, {2, 0.93914, 0.14459}}) {
    auto in = wigner_fock(n, spec);
    auto out = propagate(in, gain, v);
    const double oracle = fock_channel_fidelity_oracle(n, gain, v);
    CHECK(fidelity(in, out) == doctest::Approx(oracle).epsilon(2e-3));
  }
}

TEST_CASE("self-overlap of the vacuum is unity") {
  auto vac = wigner_fock(0, kOdd);
  CHECK(fidelity(vac, vac) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("two-gaussian overlap closed form") {
  for (auto [v1, v2] : {std::pair{0.5, 1.0}, {0.5, 0.5}, {1.5, 0.7}}) {
    auto a = wigner_gaussian(v1, kOdd);
    auto b = wigner_gaussian(v2, kOdd);
    CHECK(fidelity(a, b) == doctest::Approx(1.0 / (v1 + v2)).epsilon(1e-4));
  }
}

TEST_CASE("fidelity decreases with added noise") {
  auto vac = wigner_fock(0, kOdd);
  double prev = 2.0;
  for (double v : {0.0, 0.1, 0.3, 0.6, 1.0, 2.0}) {
    const double f = fidelity(vac, propagate(vac, 1.0, v));
    CHECK(f <= prev + 1e-12);
    prev = f;
  }
}

TEST_CASE("grid mismatch is rejected") {
  auto a = wigner_fock(0, kOdd);
  auto b = wigner_fock(0, GridSpec{8.0, 8.0, 129, 129});
  CHECK_THROWS_AS(fidelity(a, b), Error);
}

TEST_CASE("blur leaving the grid raises grid-too-coarse") {
  auto vac = wigner_fock(0, GridSpec{4.0, 4.0, 129, 129});
  CHECK_THROWS_AS(propagate(vac, 1.0, 4.0), Error);
}

TEST_CASE("rotation is the identity on rotation-invariant states") {
  auto one = wigner_fock(1, kOdd);
  auto rot = rotate_grid(one, kPi / 7.0);
  double max_dev = 0.0;
  for (size_t i = 0; i < one.values.size(); ++i)
    max_dev = std::max(max_dev, std::abs(rot.values[i] - one.values[i]));
  CHECK(max_dev < 2e-3);

  auto via_complex = propagate(one, cplx(0.6 * std::cos(0.3), 0.6 * std::sin(0.3)), 0.2);
  auto via_real = propagate(one, 0.6, 0.2);
  double dev = 0.0;
  for (size_t i = 0; i < via_real.values.size(); ++i)
    dev = std::max(dev, std::abs(via_complex.values[i] - via_real.values[i]));
  CHECK(dev < 2e-3);
}

TEST_CASE("degenerate gain collapses to the noise kernel") {
  auto cat = wigner_cat(2.0, CatParity::Even, kOdd);
  auto out = propagate(cat, 0.0, 0.5);
  auto target = wigner_gaussian(0.5, kOdd);
  double dev = 0.0;
  for (size_t i = 0; i < out.values.size(); ++i)
    dev = std::max(dev, std::abs(out.values[i] - target.values[i]));
  CHECK(dev < 1e-10);
}
