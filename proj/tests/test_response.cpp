#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/response.hpp"
#include "helpers.hpp"

using namespace omt;
using test::Rng;

TEST_CASE("decoupled limit reduces the dressed susceptibilities") {
  Model m = test::model(10.0, 0.0, 2.0);
  for (double w : {-3.0, 0.0, 0.7}) {
    auto s = susceptibilities(m, w);
    CHECK(std::abs(s.chi_b_em - s.chi_b) < 1e-15);
    CHECK(std::abs(s.chi_c_em - s.chi_c) < 1e-15);
    CHECK(std::abs(s.chi_cross) == 0.0);
  }
}

TEST_CASE("on-sideband dressed mechanical response at matched parameters") {
  // C_M' = 1, beta = 1: Gamma' chi_b = 2 and the dressing denominator is 2.
  Model m = test::model(10.0, 1.0, 1.0);
  auto s = susceptibilities(m, 0.0);
  CHECK((m.gamma_prime() * s.chi_b_em).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((m.gamma_prime() * s.chi_b_em).imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cross-susceptibility factorisations agree") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    Model m = test::model(rng.log_uniform(0.1, 1e4), rng.log_uniform(1e-2, 1e2),
                          rng.log_uniform(1e-2, 1e2));
    const double w = rng.uniform(-5.0, 5.0) * m.kappa_m();
    auto s = susceptibilities(m, w);
    const cplx a = m.g_m() * s.chi_b * s.chi_c_em;
    const cplx b = m.g_m() * s.chi_c * s.chi_b_em;
    CHECK(std::abs(a - s.chi_cross) < 1e-12 * std::abs(s.chi_cross) + 1e-15);
    CHECK(std::abs(b - s.chi_cross) < 1e-12 * std::abs(s.chi_cross) + 1e-15);
  }
}

TEST_CASE("ideal gain point values") {
  CHECK(std::abs(ideal_gain(test::model(1, 1, 1), 0.0) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(ideal_gain(test::model(1, 4, 1), 0.0) - cplx(-0.8)) < 1e-14);
  CHECK(ideal_transmission(test::model(1, 4, 1), 0.0) == doctest::Approx(0.64).epsilon(1e-14));
  CHECK(std::abs(ideal_gain(test::model(1, 0, 1), 0.0)) == 0.0);
}

TEST_CASE("optimal detunings") {
  auto single = optimal_detunings(test::model(1, 1.0, 0.1));
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 0.0);

  Model split = test::model(1, 10.0, 1.0);
  auto pair = optimal_detunings(split);
  REQUIRE(pair.size() == 2);
  CHECK(pair[1] == doctest::Approx(1.5 * split.gamma_prime()).epsilon(1e-12));
  CHECK(pair[0] == doctest::Approx(-1.5 * split.gamma_prime()).epsilon(1e-12));
  for (double w : pair)
    CHECK(std::abs(ideal_transmission(split, w) - 1.0) < 1e-9);

  Model dull = test::model(1, 0.5, 2.0);
  CHECK(optimal_detunings(dull).empty());
  double best = 0.0;
  for (double w : default_grid(dull))
    best = std::max(best, ideal_transmission(dull, w));
  CHECK(best < 1.0);
}

TEST_CASE("matched quartic flat top at doubly matched parameters") {
  Model m = test::model(1, 1.0, 1.0);
  const double km = m.kappa_m();
  for (double w : default_grid(m, 201)) {
    const double expected = 1.0 / (1.0 + 4.0 * std::pow(w / km, 4));
    CHECK(ideal_transmission(m, w) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("two unity peaks in the strong-coupling spectrum") {
  Model m = test::model(1, 10.0, 1.0);
  auto spec = transmission_spectrum(m, default_grid(m));
  int count = 0;
  for (size_t i = 1; i + 1 < spec.values.size(); ++i)
    if (spec.values[i] > spec.values[i - 1] && spec.values[i] > spec.values[i + 1] &&
        spec.values[i] > 0.999)
      ++count;
  CHECK(count == 2);
}

TEST_CASE("per-peak width tends to the broadened linewidth") {
  Model m = test::model(1, 400.0, 1.0);
  const double peak = 0.5 * m.gamma_prime() * std::sqrt(400.0 - 1.0);
  auto half_cross = [&](double from, double to) {
    double lo = from, hi = to;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ideal_transmission(m, mid) > 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double right = half_cross(peak, peak + 3.0 * m.gamma_prime());
  const double left = half_cross(peak, peak - 3.0 * m.gamma_prime());
  CHECK(right - left == doctest::Approx(m.gamma_prime()).epsilon(0.05));
}

TEST_CASE("transmission is bounded and even at matched linewidths") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    Model m = test::model(1.0, rng.log_uniform(1e-3, 1e3), rng.log_uniform(1e-2, 1e2));
    const double w = rng.uniform(-10, 10) * m.kappa_m();
    const double t = ideal_transmission(m, w);
    CHECK(t >= -1e-12);
    CHECK(t <= 1.0 + 1e-12);
  }
  Model even = test::model(1, 7.0, 1.0);
  for (double w : default_grid(even, 101))
    CHECK(ideal_transmission(even, w) ==
          doctest::Approx(ideal_transmission(even, -w)).epsilon(1e-12));
}

TEST_CASE("narrow mechanical line gives a Lorentzian of width 2 Gamma'") {
  // beta << 1: the transfer peak is limited by the broadened mechanical
  // linewidth and approaches a Lorentzian with FWHM 2 Gamma'.
  Model m = test::model(1, 1.0, 1e-3);
  const double gp = m.gamma_prime();
  double max_resid = 0.0;
  for (double w : symmetric_grid(m.kappa_m(), 500)) {
    const double lorentz = 1.0 / (1.0 + (w / gp) * (w / gp));
    max_resid = std::max(max_resid, std::abs(ideal_transmission(m, w) - lorentz));
  }
  CHECK(max_resid < 0.01);
}

TEST_CASE("ideal gain squares against the cross-susceptibility") {
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    Model m = test::model(rng.log_uniform(0.1, 1e3), rng.log_uniform(1e-2, 1e2),
                          rng.log_uniform(1e-2, 1e2));
    const double w = rng.uniform(-5, 5) * std::max(m.kappa_m(), m.gamma_prime());
    const double via_chi = m.gamma_prime() * m.kappa_m() *
                           std::norm(susceptibilities(m, w).chi_cross);
    CHECK(ideal_transmission(m, w) == doctest::Approx(via_chi).epsilon(1e-12));
  }
}
