#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace omt {

/// Physical transducer parameters. All rates are angular frequencies (rad/s);
/// the CLI and config files accept ordinary Hz and multiply by 2*pi.
struct PhysicalParams {
  double omega = 0;    ///< mechanical angular frequency
  double gamma = 0;    ///< mechanical energy decay rate
  double kappa_l = 0;  ///< optical cavity decay rate
  double kappa_m = 0;  ///< microwave cavity decay rate
  double g_l = 0;      ///< boosted optomechanical coupling
  double g_m = 0;      ///< boosted electromechanical coupling
  double nbar = 0;     ///< thermal phonon occupancy of the mechanical bath
  double eta_l = 1;    ///< optical cavity coupling efficiency
  double eta_m = 1;    ///< microwave cavity coupling efficiency
  double eta_d = 1;    ///< homodyne detection (feedback) efficiency
  double h_gain = 1;   ///< feedback gain ratio h' = G / G_sym
};

/// Reduced (dimensionless) parameters, the canonical internal form. The
/// electromechanical cooperativity and the linewidth ratio are the dressed
/// values, i.e. they use the feedback-broadened linewidth at this operating
/// point.
struct ReducedParams {
  double cl = 0;      ///< optomechanical cooperativity C_L
  double cmp = 0;     ///< dressed electromechanical cooperativity C_M'
  double beta = 0;    ///< linewidth ratio Gamma' / kappa_M
  double eta_l = 1;
  double eta_m = 1;
  double eta_d = 1;
  double nbar = 0;
  double h_gain = 1;
};

/// Feedback-dressed effective quantities derived from the parameters.
/// gamma_prime is a rate (rad/s) when derived from PhysicalParams and is in
/// units of the bare Gamma when derived from ReducedParams. tau and q_prime
/// require the mechanical frequency and are NaN in reduced mode.
struct EffectiveCouplings {
  double lambda_l = 0;     ///< eta_L / |2 eta_L - 1|
  double sigma = 1;        ///< +1 overcoupled, -1 undercoupled
  double g_sym = 0;        ///< quadrature-symmetrising feedback gain
  double gamma_prime = 0;  ///< feedback-broadened mechanical linewidth
  double eta_b = 0;        ///< effective mechanical bath coupling efficiency
  double eta_om = 0;       ///< effective optical signal coupling efficiency
  double eta_ol = 0;       ///< effective optical loss coupling efficiency
  double eps = 0;          ///< sqrt((1 - eta_d) / eta_d)
  double tau = 0;          ///< feedback delay pi / (2 Omega), seconds
  double q_prime = 0;      ///< Omega / Gamma'
};

inline constexpr double kDefaultCriticalTol = 1e-9;

/// Derives the feedback-dressed quantities at gain ratio h'.
/// Throws CriticalCoupling when |eta_L - 1/2| < critical_tol, where the
/// symmetrising gain diverges.
EffectiveCouplings derive_effective(const PhysicalParams& p,
                                    double critical_tol = kDefaultCriticalTol);
EffectiveCouplings derive_effective(const ReducedParams& r,
                                    double critical_tol = kDefaultCriticalTol);

ReducedParams to_reduced(const PhysicalParams& p,
                         double critical_tol = kDefaultCriticalTol);

/// Embeds reduced parameters into a canonical physical realisation
/// (Omega/2pi = 1 MHz, Q = 1e7, kappa_L/2pi = 100 MHz). Round-tripping
/// through to_reduced preserves all dimensionless quantities.
PhysicalParams to_physical(const ReducedParams& r,
                           double critical_tol = kDefaultCriticalTol);

/// Named parameter sets used by the paper's figures. Throws UnknownPreset.
/// Known names: gold_square, gold_star, fig6, fig2_grid.
PhysicalParams preset(const std::string& name);
std::vector<std::string> preset_names();

/// A parameter record plus its derived effective couplings and the rate
/// scales used for frequency-domain evaluation. In reduced mode the unit
/// system fixes kappa_M = 1 so every detuning is in units of kappa_M.
class Model {
 public:
  static Model from_physical(const PhysicalParams& p,
                             double critical_tol = kDefaultCriticalTol);
  static Model from_reduced(const ReducedParams& r,
                            double critical_tol = kDefaultCriticalTol);
  /// Parses `key = value` text (one pair per line, '#' comments). Presence of
  /// any *_hz key selects the physical parameterisation; a `preset` key loads
  /// a named preset and applies the remaining keys as overrides.
  static Model from_config_text(const std::string& text);

  const ReducedParams& reduced() const { return red_; }
  const EffectiveCouplings& effective() const { return eff_; }
  const std::optional<PhysicalParams>& physical() const { return phys_; }

  bool is_physical() const { return phys_.has_value(); }

  /// Rate scales in the model's unit system (rad/s physical, kappa_M = 1
  /// reduced).
  double gamma_prime() const { return gamma_prime_; }
  double kappa_m() const { return kappa_m_; }
  double g_m() const { return g_m_; }
  double gamma() const { return gamma_prime_ * eff_.eta_b; }

  /// Regime warnings collected at construction (Q' < 10, unresolved
  /// microwave sideband, ...). The formulas stay evaluable; these flag that
  /// the underlying approximations are strained.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  ReducedParams red_;
  EffectiveCouplings eff_;
  std::optional<PhysicalParams> phys_;
  double gamma_prime_ = 0;
  double kappa_m_ = 0;
  double g_m_ = 0;
  std::vector<std::string> warnings_;
};

/// Key/value config parsing shared by the C API and the CLI.
std::map<std::string, std::string> parse_config_text(const std::string& text);

}  // namespace omt
