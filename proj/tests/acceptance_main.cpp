// Acceptance suite: one criterion per block, each printed as a PASS/FAIL
// line with the measured numbers. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/forward.hpp"
#include "core/gaussian.hpp"
#include "core/homodyne.hpp"
#include "core/noise.hpp"
#include "core/oracle.hpp"
#include "core/params.hpp"
#include "core/response.hpp"
#include "core/reverse.hpp"
#include "core/wigner.hpp"
#include "helpers.hpp"

using namespace omt;
using test::Rng;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what, double elapsed_s) {
  std::printf("[%s] criterion %2d: %s (%.2f s)\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), elapsed_s);
  if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int id, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string what;
  bool pass = false;
  try {
    pass = fn(what);
  } catch (const std::exception& e) {
    what += std::string(" exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, pass, what, dt);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double bisect(double lo, double hi, const std::function<double(double)>& f) {
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct MatchedPoint {
  double gain;
  double v_add;
};

MatchedPoint matched_point(const Model& m) {
  const NoiseBudget b = noise_budget_matched(m);
  return {std::sqrt(b.t_ac), b.v_total};
}

const GridSpec kGrid{8.0, 8.0, 512, 512};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  auto wants = [only](int id) { return only == 0 || only == id; };

  // 1. Unit transmission at matched cooperativity and at the hybridised
  //    peaks for matched linewidths.
  if (wants(1)) criterion(1, [](std::string& what) {
    double worst_center = 0.0, worst_split = 0.0;
    for (double beta : {0.1, 1.0, 10.0}) {
      Model m = test::model(1.0, 1.0, beta);
      worst_center = std::max(worst_center,
                              std::abs(ideal_transmission(m, 0.0) - 1.0));
    }
    for (double cmp : {5.0, 10.0}) {
      Model m = test::model(1.0, cmp, 1.0);
      const double w = 0.5 * m.gamma_prime() * std::sqrt(cmp - 1.0);
      for (double s : {-1.0, 1.0})
        worst_split = std::max(worst_split,
                               std::abs(ideal_transmission(m, s * w) - 1.0));
    }
    what = fmt("fig2 peaks: |T-1| center %.2e (tol 1e-12), split %.2e (tol 1e-9)",
               worst_center, worst_split);
    return worst_center <= 1e-12 && worst_split <= 1e-9;
  });

  // 2. Forward and homodyne gain sum rules over 1e4 random draws each.
  if (wants(2)) criterion(2, [](std::string& what) {
    Rng rng(2024);
    double worst_fwd = 0.0, worst_light = 0.0;
    for (int i = 0; i < 10000; ++i) {
      Model m = test::model(rng.log_uniform(1e-2, 1e6), rng.log_uniform(1e-3, 1e3),
                            rng.log_uniform(1e-2, 1e2), rng.eta_l_safe(1e-3),
                            rng.uniform(0.02, 1.0), rng.uniform(0.02, 1.0),
                            rng.log_uniform(1e-2, 1e4), rng.log_uniform(0.1, 10.0));
      const double w = rng.uniform(-10, 10) * m.kappa_m();
      worst_fwd = std::max(worst_fwd,
                           std::abs(sum_rule_residual(forward_gains(m, w))));
    }
    for (int i = 0; i < 10000; ++i) {
      Model m = test::model(rng.log_uniform(1e-2, 1e6), rng.log_uniform(1e-3, 1e3),
                            rng.log_uniform(1e-2, 1e2), 1.0, 1.0, 1.0,
                            rng.log_uniform(1e-2, 1e4), rng.log_uniform(0.1, 10.0));
      const double w = rng.uniform(-10, 10) * m.kappa_m();
      const auto g = light_gains(m, w);
      worst_light = std::max(worst_light,
                             std::abs(std::norm(g.t_aa) + std::norm(g.t_ba) +
                                      std::norm(g.t_ca) - 1.0));
    }
    what = fmt("sum rules over 1e4 draws: forward %.2e, homodyne %.2e (tol 1e-10)",
               worst_fwd, worst_light);
    return worst_fwd <= 1e-10 && worst_light <= 1e-10;
  });

  // 3. Published operating points.
  if (wants(3)) criterion(3, [](std::string& what) {
    Model square = Model::from_physical(preset("gold_square"));
    const NoiseBudget bs = noise_budget_matched(square);
    const double ratio = 0.5 / bs.v_total;
    Model star = Model::from_physical(preset("gold_star"));
    const NoiseBudget bt = noise_budget_matched(star);
    what = fmt("gold square T_ac %.4f, vacuum ratio %.2f; gold star T_ac %.4f",
               bs.t_ac, ratio, bt.t_ac) + fmt(", V_add %.4f", bt.v_total);
    return std::abs(bs.t_ac - 0.882) <= 0.005 &&
           std::abs(ratio - 3.4) <= 0.05 * 3.4 &&
           std::abs(bt.t_ac - 0.94) <= 0.01 && bt.v_total <= 0.05 * 1.1;
  });

  // 4. Fidelity suite at C_L/nbar = 10 with unit efficiencies, plus the
  //    classical and no-cloning vacuum crossings.
  if (wants(4)) criterion(4, [](std::string& what) {
    auto channel = [](double cl_over_nbar) {
      return matched_point(test::model(cl_over_nbar * 1e3, 1, 1, 1, 1, 1, 1e3));
    };
    const MatchedPoint ch = channel(10.0);

    const WignerGrid vac = wigner_fock(0, kGrid);
    const WignerGrid one = wigner_fock(1, kGrid);
    const WignerGrid two = wigner_fock(2, kGrid);
    const WignerGrid cat = wigner_cat(2.0, CatParity::Even, kGrid);
    const double f0 = fidelity(vac, propagate(vac, ch.gain, ch.v_add));
    const double f1 = fidelity(one, propagate(one, ch.gain, ch.v_add));
    const double f2 = fidelity(two, propagate(two, ch.gain, ch.v_add));
    const double fc = fidelity(cat, propagate(cat, ch.gain, ch.v_add));

    const MatchedPoint quarter = channel(0.25);
    const double f_quarter =
        fidelity(vac, propagate(vac, quarter.gain, quarter.v_add));
    const MatchedPoint half = channel(0.5);
    const double f_half = fidelity(vac, propagate(vac, half.gain, half.v_add));

    what = fmt("F = %.3f/%.3f/%.3f", f0, f1, f2) +
           fmt("/%.3f; crossings %.3f (1/2), %.3f (2/3)", fc, f_quarter, f_half);
    return std::abs(f0 - 0.98) <= 0.01 && std::abs(f1 - 0.93) <= 0.01 &&
           std::abs(f2 - 0.88) <= 0.01 && std::abs(fc - 0.81) <= 0.01 &&
           std::abs(f_quarter - 0.5) <= 0.01 &&
           std::abs(f_half - 2.0 / 3.0) <= 0.01;
  });

  // 5. Negativity ratios through the gold-square channel and the
  //    vacuum-noise erasure threshold.
  if (wants(5)) criterion(5, [](std::string& what) {
    Model m = Model::from_physical(preset("gold_square"));
    const MatchedPoint ch = matched_point(m);
    const WignerGrid one = wigner_fock(1, kGrid);
    const WignerGrid two = wigner_fock(2, kGrid);
    const WignerGrid cat = wigner_cat(2.0, CatParity::Even, kGrid);
    const double r1 =
        negativity(propagate(one, ch.gain, ch.v_add)) / negativity(one);
    const double r2 =
        negativity(propagate(two, ch.gain, ch.v_add)) / negativity(two);
    const double rc =
        negativity(propagate(cat, ch.gain, ch.v_add)) / negativity(cat);

    bool erased = true;
    for (double v : {0.5 + 1e-3, 0.6, 1.0}) {
      if (negativity(propagate(one, 1.0, v)) != 0.0) erased = false;
      if (negativity(propagate(cat, ch.gain, v)) != 0.0) erased = false;
    }
    what = fmt("N/N_pure = %.3f/%.3f/%.3f", r1, r2, rc) +
           (erased ? ", erased above vacuum noise" : ", erasure FAILED");
    return std::abs(r1 - 0.36) <= 0.02 && std::abs(r2 - 0.23) <= 0.02 &&
           std::abs(rc - 0.10) <= 0.02 && erased;
  });

  // 6. Quantum transfer witness thresholds along each loss axis.
  if (wants(6)) criterion(6, [](std::string& what) {
    auto witness = [](double eta_l, double eta_m, double eta_d) {
      Model m = test::model(1e7, 1, 1, eta_l, eta_m, eta_d, 1e3);
      const NoiseBudget b = noise_budget_matched(m);
      const double g = std::sqrt(b.t_ac);
      return transfer_witness(g, g, b.v_total, b.v_total).w_t;
    };
    auto v_add = [](double eta_l) {
      return noise_budget_matched(test::model(1e7, 1, 1, eta_l, 1, 1, 1e3)).v_total;
    };
    const double d_cross =
        bisect(1e-3, 0.999, [&](double e) { return witness(1, 1, e) - 1.0; });
    const double l_cross = bisect(0.501 + 1e-6, 0.999, [&](double e) {
      return witness(e, 1, 1) - 1.0;
    });
    const double l_vac =
        bisect(0.501 + 1e-6, 0.999, [&](double e) { return v_add(e) - 0.5; });
    double w_m_max = 0.0;
    for (double eta_m = 0.01; eta_m <= 1.0; eta_m += 0.01)
      w_m_max = std::max(w_m_max, witness(1, eta_m, 1));
    what = fmt("W_T=1 at eta_d %.4f, eta_l %.4f; V=1/2 at eta_l %.4f", d_cross,
               l_cross, l_vac) +
           fmt("; max W_T over eta_m %.3f", w_m_max);
    return std::abs(d_cross - 0.200) <= 0.005 && std::abs(l_cross - 0.67) <= 0.01 &&
           std::abs(l_vac - 0.72) <= 0.01 && w_m_max < 1.0;
  });

  // 7. Robustness to detection loss at unit cavity efficiencies.
  if (wants(7)) criterion(7, [](std::string& what) {
    auto channel = [](double eta_d) {
      return matched_point(test::model(1e4, 1, 1, 1, 1, eta_d, 1e3));
    };
    const WignerGrid vac = wigner_fock(0, kGrid);
    const MatchedPoint heavy = channel(0.2);
    const double f_vac = fidelity(vac, propagate(vac, heavy.gain, heavy.v_add));

    const MatchedPoint mild = channel(0.7);
    const WignerGrid one = wigner_fock(1, kGrid);
    const WignerGrid two = wigner_fock(2, kGrid);
    const WignerGrid cat = wigner_cat(2.0, CatParity::Even, kGrid);
    const double f1 = fidelity(one, propagate(one, mild.gain, mild.v_add));
    const double f2 = fidelity(two, propagate(two, mild.gain, mild.v_add));
    const double fc = fidelity(cat, propagate(cat, mild.gain, mild.v_add));
    what = fmt("vacuum F %.3f at eta_d 0.2; F %.3f/%.3f", f_vac, f1, f2) +
           fmt("/%.3f at eta_d 0.7", fc);
    return std::abs(f_vac - 0.50) <= 0.01 && f1 > 0.5 && f2 > 0.5 && fc > 0.5;
  });

  // 8. Homodyne spectrum and noise squashing on the fig6 device.
  if (wants(8)) criterion(8, [](std::string& what) {
    Model fig6 = Model::from_physical(preset("fig6"));
    auto grid = symmetric_grid(4.0 * fig6.kappa_m(), 400);
    auto at_h1 = vacuum_spectrum(fig6, 1.0, grid);
    double min1 = 1e9, max1 = 0.0;
    for (double v : at_h1.total.values) {
      min1 = std::min(min1, v);
      max1 = std::max(max1, v);
    }
    double worst_dip = 1.0;
    for (double h : {2.0, 4.0}) {
      auto vs = vacuum_spectrum(fig6, h, grid);
      for (double v : vs.total.values) worst_dip = std::min(worst_dip, v);
    }
    Model flat = test::model(1e9, 1, 1, 1, 1, 1, 100);
    double flat_dev = 0.0;
    for (double v : vacuum_spectrum(flat, 1.0, grid).total.values)
      flat_dev = std::max(flat_dev, std::abs(v - 0.5));
    what = fmt("h=1 min %.6f max %.3f; squash min %.3f; ", min1, max1, worst_dip) +
           fmt("flat dev %.2e", flat_dev);
    return min1 >= 0.5 - 1e-12 && max1 > 0.5 + 1e-3 && worst_dip < 0.5 - 1e-3 &&
           flat_dev < 1e-6;
  });

  // 9. Reverse transfer noise limit and the forward/reverse exchange
  //    symmetry.
  if (wants(9)) criterion(9, [](std::string& what) {
    double worst_limit = 0.0;
    for (double eta_d : {0.5, 0.85, 0.95}) {
      Model m = test::model(1e5, 1, 1, 1, 1, eta_d, 100);
      const double limit = (1.0 / eta_d - 1.0) / 4.0;
      worst_limit = std::max(worst_limit,
                             std::abs(reverse_added_noise(m, 0.0) - limit));
    }
    Model m85 = test::model(1e5, 1, 1, 1, 1, 0.85, 100);
    const double value = reverse_added_noise(m85, 0.0);

    Model sym = test::model(200, 2.0, 0.7, 1, 1, 0.8, 25);
    double worst_sym = 0.0;
    for (double w : symmetric_grid(5.0 * sym.kappa_m(), 100))
      worst_sym = std::max(worst_sym, std::abs(forward_noise_by_exchange(sym, w) -
                                               added_variance(sym, w)));
    what = fmt("limit dev %.2e (tol 1e-3), value %.4f; exchange dev %.2e",
               worst_limit, value, worst_sym);
    return worst_limit <= 1e-3 && std::abs(value - 0.0441) <= 1e-3 &&
           worst_sym <= 1e-10;
  });

  // 10. Entanglement verification: pure-state inseparability, the witness
  //     limit and the dual-channel geometric-mean law.
  if (wants(10)) criterion(10, [](std::string& what) {
    double worst_pure = 0.0;
    for (double r = 0.0; r <= 5.0; r += 0.1)
      worst_pure = std::max(worst_pure, std::abs(inseparability(tmss_covariance(r)) -
                                                 std::exp(-2.0 * r)));
    Rng rng(10);
    double worst_witness = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double g = rng.uniform(0.1, 1.2);
      const double v = 0.5 * std::abs(1.0 - g * g) + rng.log_uniform(1e-3, 2.0);
      auto cov = apply_channel(tmss_covariance(10.0), 1, g, g, v, v);
      worst_witness = std::max(worst_witness,
                               std::abs(inseparability(cov) -
                                        transfer_witness(g, g, v, v).w_t));
    }
    // Perfect-entanglement proxy r = 15 for the dual-channel law.
    double worst_dual = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double gx = rng.uniform(0.1, 1.3), gy = rng.uniform(0.1, 1.3);
      const double floor = 0.5 * std::abs(1.0 - gx * gy);
      const double vx = floor + rng.log_uniform(1e-2, 2.0);
      const double vy = floor + rng.log_uniform(1e-2, 2.0);
      auto cov = apply_channel(tmss_covariance(15.0), 1, gx, gy, vx, vy);
      cov = apply_channel(cov, 2, gx, gy, vx, vy);
      worst_dual = std::max(worst_dual, std::abs(inseparability(cov) -
                                                 2.0 * std::sqrt(vx * vy)));
    }
    what = fmt("pure dev %.2e (1e-10); witness dev %.2e (1e-3); dual dev %.2e (1e-9)",
               worst_pure, worst_witness, worst_dual);
    return worst_pure <= 1e-10 && worst_witness < 1e-3 && worst_dual < 1e-9;
  });

  // 11. Monte Carlo Langevin oracle against the analytic output spectrum.
  if (wants(11)) criterion(11, [](std::string& what) {
    Model fig6 = test::model(500, 1, 1, 1, 1, 1, 100);
    SimConfig cfg = default_sim_config(fig6, 7, 1024);
    const OracleReport rep = oracle_validate(fig6, cfg, 3.0, 0.05);
    what = fmt("MC vs analytic over +-3 kappa_M: rms %.3f%%, max %.3f%%",
               100.0 * rep.deviation.rms_rel, 100.0 * rep.deviation.max_rel) +
           " over " + std::to_string(rep.deviation.n_points) + " bins";
    return rep.deviation.pass;
  });

  if (g_failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
