// omt: scenario runner for the optical-microwave transducer model.
// Links the C API only; all numerics live behind libomt.

#include <CLI11.hpp>
#include <omt/omt.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "output.hpp"
#include "svg.hpp"

using omtcli::CsvWriter;
using omtcli::json;
using omtcli::RunManifest;
using omtcli::SvgPlot;

namespace {

[[noreturn]] void fail(omt_status status, const std::string& context) {
  json err;
  err["error"]["code"] = omt_status_name(status);
  err["error"]["message"] = std::string(omt_last_error());
  err["error"]["context"] = context;
  std::cout << err.dump(2) << std::endl;
  std::exit(1);
}

void check(omt_status status, const std::string& context) {
  if (status != OMT_OK) fail(status, context);
}

struct CommonOpts {
  std::string preset;
  std::string config;
  std::string out_dir = "omt_out";
  std::string format = "all";
  std::uint64_t seed = 1;
  std::optional<double> cl, cmp, beta, eta_l, eta_m, eta_d, nbar, h_gain;

  bool want_csv() const { return format == "csv" || format == "all"; }
  bool want_json() const { return format == "json" || format == "all"; }
  bool want_svg() const { return format == "svg" || format == "all"; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--preset", o.preset, "named parameter set");
  cmd->add_option("--config", o.config, "key = value parameter file");
  cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--format", o.format, "csv|json|svg|all")
      ->check(CLI::IsMember({"csv", "json", "svg", "all"}))
      ->capture_default_str();
  cmd->add_option("--cl", o.cl, "optomechanical cooperativity C_L");
  cmd->add_option("--cmp", o.cmp, "dressed electromechanical cooperativity C_M'");
  cmd->add_option("--beta", o.beta, "linewidth ratio Gamma'/kappa_M");
  cmd->add_option("--eta_l", o.eta_l, "optical coupling efficiency");
  cmd->add_option("--eta_m", o.eta_m, "microwave coupling efficiency");
  cmd->add_option("--eta_d", o.eta_d, "detection/feedback efficiency");
  cmd->add_option("--nbar", o.nbar, "thermal phonon occupancy");
  cmd->add_option("--h_gain", o.h_gain, "feedback gain ratio h'");
}

class ModelHandle {
 public:
  ModelHandle() = default;
  explicit ModelHandle(omt_model* m) : m_(m) {}
  ModelHandle(ModelHandle&& other) noexcept : m_(other.m_) { other.m_ = nullptr; }
  ModelHandle& operator=(ModelHandle&& other) noexcept {
    if (this != &other) {
      omt_model_free(m_);
      m_ = other.m_;
      other.m_ = nullptr;
    }
    return *this;
  }
  ModelHandle(const ModelHandle&) = delete;
  ModelHandle& operator=(const ModelHandle&) = delete;
  ~ModelHandle() { omt_model_free(m_); }
  omt_model* get() const { return m_; }

 private:
  omt_model* m_ = nullptr;
};

omt_reduced_params reduced_of(const omt_model* m) {
  omt_reduced_params r;
  check(omt_model_reduced(m, &r), "reduced params");
  return r;
}


// Rebuilds a physical device record so a dressed target (beta, C_M') or a
// cooperativity override lands exactly, with the feedback re-derivation the
// physical route implies.
ModelHandle build_from_physical(omt_physical_params p, const CommonOpts& o) {
  if (o.nbar) p.nbar = *o.nbar;
  if (o.eta_l) p.eta_l = *o.eta_l;
  if (o.eta_m) p.eta_m = *o.eta_m;
  if (o.eta_d) p.eta_d = *o.eta_d;
  if (o.h_gain) p.h_gain = *o.h_gain;
  if (o.cl) p.g_l = 0.5 * std::sqrt(*o.cl * p.gamma * p.kappa_l);

  if (o.beta || o.cmp) {
    omt_model* probe = nullptr;
    check(omt_model_from_physical(&p, &probe), "probe model");
    omt_reduced_params r = reduced_of(probe);
    omt_effective_couplings e;
    check(omt_model_effective(probe, &e), "probe effective");
    omt_model_free(probe);
    const double gamma_prime = e.gamma_prime;  // rad/s on the physical route
    const double beta = o.beta.value_or(r.beta);
    const double cmp = o.cmp.value_or(r.c_mp);
    p.kappa_m = gamma_prime / beta;
    p.g_m = 0.5 * std::sqrt(cmp * gamma_prime * p.kappa_m);
  }

  omt_model* m = nullptr;
  check(omt_model_from_physical(&p, &m), "physical model");
  return ModelHandle(m);
}

ModelHandle resolve_model(const CommonOpts& o) {
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) fail(OMT_ERR_IO, "cannot read config file " + o.config);
    std::stringstream text;
    text << in.rdbuf();
    omt_model* base = nullptr;
    check(omt_model_from_config(text.str().c_str(), &base), "config model");
    ModelHandle h(base);
    omt_physical_params p;
    if (omt_model_physical(base, &p) == OMT_OK) return build_from_physical(p, o);
    omt_reduced_params r = reduced_of(base);
    if (o.cl) r.c_l = *o.cl;
    if (o.cmp) r.c_mp = *o.cmp;
    if (o.beta) r.beta = *o.beta;
    if (o.eta_l) r.eta_l = *o.eta_l;
    if (o.eta_m) r.eta_m = *o.eta_m;
    if (o.eta_d) r.eta_d = *o.eta_d;
    if (o.nbar) r.nbar = *o.nbar;
    if (o.h_gain) r.h_gain = *o.h_gain;
    omt_model* m = nullptr;
    check(omt_model_from_reduced(&r, &m), "reduced model");
    return ModelHandle(m);
  }
  if (!o.preset.empty()) {
    omt_physical_params p;
    check(omt_preset_params(o.preset.c_str(), &p), "preset " + o.preset);
    return build_from_physical(p, o);
  }
  omt_reduced_params r{1e4, 1.0, 1.0, 1.0, 1.0, 1.0, 1e3, 1.0};  // paper nominal
  if (o.cl) r.c_l = *o.cl;
  if (o.cmp) r.c_mp = *o.cmp;
  if (o.beta) r.beta = *o.beta;
  if (o.eta_l) r.eta_l = *o.eta_l;
  if (o.eta_m) r.eta_m = *o.eta_m;
  if (o.eta_d) r.eta_d = *o.eta_d;
  if (o.nbar) r.nbar = *o.nbar;
  if (o.h_gain) r.h_gain = *o.h_gain;
  omt_model* m = nullptr;
  check(omt_model_from_reduced(&r, &m), "reduced model");
  return ModelHandle(m);
}

json params_json(const omt_model* m) {
  const omt_reduced_params r = reduced_of(m);
  json j;
  j["reduced"] = {{"c_l", r.c_l},     {"c_mp", r.c_mp},   {"beta", r.beta},
                  {"eta_l", r.eta_l}, {"eta_m", r.eta_m}, {"eta_d", r.eta_d},
                  {"nbar", r.nbar},   {"h_gain", r.h_gain}};
  omt_physical_params p;
  if (omt_model_physical(m, &p) == OMT_OK) {
    const double tp = 2.0 * M_PI;
    j["physical_hz"] = {{"omega_hz", p.omega / tp},     {"gamma_hz", p.gamma / tp},
                        {"kappa_l_hz", p.kappa_l / tp}, {"kappa_m_hz", p.kappa_m / tp},
                        {"g_l_hz", p.g_l / tp},         {"g_m_hz", p.g_m / tp}};
  }
  omt_effective_couplings e;
  check(omt_model_effective(m, &e), "effective");
  j["effective"] = {{"lambda_l", e.lambda_l}, {"sigma", e.sigma},
                    {"g_sym", e.g_sym},       {"gamma_prime", e.gamma_prime},
                    {"eta_b", e.eta_b},       {"eta_om", e.eta_om},
                    {"eta_ol", e.eta_ol},     {"eps", e.eps}};
  if (e.sigma < 0) j["regime"] = "two-mode-squeezing (undercoupled optical cavity)";
  return j;
}

void print_warnings(const omt_model* m) {
  for (int i = 0; i < omt_model_warning_count(m); ++i)
    std::cerr << "warning: " << omt_model_warning(m, i) << "\n";
}

std::vector<double> model_grid(const omt_model* m, int points = 2001) {
  double gp = 0, km = 0, gm = 0;
  check(omt_model_scales(m, &gp, &km, &gm), "scales");
  const double span = std::max({5.0 * gp, 5.0 * km, 3.0 * gm});
  std::vector<double> w;
  const int half = points / 2;
  for (int i = -half; i <= half; ++i)
    w.push_back(span * static_cast<double>(i) / half);
  return w;
}

double matched_omega(const omt_model* m) {
  double w = 0;
  check(omt_matched_detuning(m, &w), "matched detuning");
  return w;
}

struct Channel {
  double gain;
  double v_add;
  double t_ac;
};

Channel matched_channel(const omt_model* m) {
  omt_noise_budget b;
  check(omt_noise_budget_matched(m, &b), "matched budget");
  return {std::sqrt(b.t_ac), b.v_total, b.t_ac};
}

// ---------------------------------------------------------------- commands

int cmd_transmission(const CommonOpts& o, bool grid_mode) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("transmission", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);

  json report;
  if (grid_mode || o.preset == "fig2_grid") {
    const double betas[] = {0.1, 1.0, 10.0};
    const double cmps[] = {0.5, 1.0, 10.0};
    std::optional<CsvWriter> csv;
    if (o.want_csv())
      csv.emplace(manifest.path_for("transmission.csv"),
                  std::vector<std::string>{"beta", "cmp", "omega", "t_inf"});
    for (double beta : betas)
      for (double cmp : cmps) {
        CommonOpts panel = o;
        panel.beta = beta;
        panel.cmp = cmp;
        ModelHandle pm = resolve_model(panel);
        auto grid = model_grid(pm.get());
        std::vector<double> t(grid.size());
        check(omt_ideal_transmission(pm.get(), grid.data(), grid.size(), t.data()),
              "transmission");
        if (csv)
          for (size_t i = 0; i < grid.size(); ++i)
            csv->row({beta, cmp, grid[i], t[i]});
      }
    report["panels"] = {{"beta", {0.1, 1.0, 10.0}}, {"cmp", {0.5, 1.0, 10.0}}};
  } else {
    auto grid = model_grid(m.get());
    std::vector<double> t(grid.size());
    check(omt_ideal_transmission(m.get(), grid.data(), grid.size(), t.data()),
          "transmission");
    if (o.want_csv()) {
      CsvWriter csv(manifest.path_for("transmission.csv"), {"omega", "t_inf"});
      for (size_t i = 0; i < grid.size(); ++i) csv.row({grid[i], t[i]});
    }
    double best = 0, best_w = 0;
    for (size_t i = 0; i < grid.size(); ++i)
      if (t[i] > best) {
        best = t[i];
        best_w = grid[i];
      }
    double opts[2];
    size_t count = 0;
    check(omt_optimal_detunings(m.get(), opts, &count), "optimal detunings");
    report["max_t_inf"] = best;
    report["argmax_omega"] = best_w;
    report["optimal_detunings"] = json::array();
    for (size_t i = 0; i < count; ++i) report["optimal_detunings"].push_back(opts[i]);
    if (o.want_svg()) {
      SvgPlot plot(grid.front(), grid.back(), 0.0, 1.05, "detuning", "T_inf");
      plot.polyline(grid, t, "#1f77b4");
      omtcli::write_text(manifest.path_for("transmission.svg"),
                         plot.render("ideal transmission"));
    }
  }
  if (o.want_json()) {
    report["parameters"] = params_json(m.get());
    omtcli::write_text(manifest.path_for("transmission.json"), report.dump(2) + "\n");
  }
  manifest.write(omt_version());
  return 0;
}

ModelHandle with_cl(const CommonOpts& o, double cl) {
  CommonOpts v = o;
  v.cl = cl;
  return resolve_model(v);
}

int cmd_noise_sweep(const CommonOpts& o, int points) {
  ModelHandle base = resolve_model(o);
  print_warnings(base.get());
  RunManifest manifest("noise-sweep", o.out_dir);
  manifest.set_params(params_json(base.get()));
  manifest.set_seed(o.seed);

  const omt_reduced_params r0 = reduced_of(base.get());
  const double nbar = std::max(r0.nbar, 1.0);

  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("noise_sweep.csv"),
                std::vector<std::string>{"cl_over_nbar", "v_opt", "v_mech", "v_mw",
                                         "v_det", "v_total", "t_ac"});
  std::vector<double> xs, totals;
  for (int i = 0; i < points; ++i) {
    const double x = std::pow(10.0, -2.0 + 3.5 * i / (points - 1));
    ModelHandle m = with_cl(o, x * nbar);
    omt_noise_budget b;
    check(omt_noise_budget_matched(m.get(), &b), "budget");
    if (csv) csv->row({x, b.v_opt, b.v_mech, b.v_mw, b.v_det, b.v_total, b.t_ac});
    xs.push_back(std::log10(x));
    totals.push_back(std::log10(b.v_total));
  }

  omt_noise_budget b;
  check(omt_noise_budget_matched(base.get(), &b), "budget");
  if (o.want_json()) {
    json report;
    report["parameters"] = params_json(base.get());
    report["matched_budget"] = {{"v_opt", b.v_opt},     {"v_mech", b.v_mech},
                                {"v_mw", b.v_mw},       {"v_det", b.v_det},
                                {"v_total", b.v_total}, {"t_ac", b.t_ac},
                                {"omega", b.omega}};
    report["vacuum_ratio"] = 0.5 / b.v_total;
    omtcli::write_text(manifest.path_for("noise_sweep.json"), report.dump(2) + "\n");
  }
  if (o.want_svg()) {
    SvgPlot plot(xs.front(), xs.back(), -3, 2, "log10 C_L/nbar", "log10 V_add");
    plot.polyline(xs, totals, "#111111", 2.0);
    plot.hline(std::log10(0.5), "#888888");
    omtcli::write_text(manifest.path_for("noise_sweep.svg"),
                       plot.render("added noise vs cooperativity"));
  }
  manifest.write(omt_version());
  return 0;
}

// Propagation with an auto-enlarged grid when the blur would leave the base
// extents; figures of merit are grid-to-grid so both states are re-rendered.
double state_metric(const std::string& name, const omt_grid_spec& base,
                    double gain, double v_add, bool want_fidelity) {
  double extent = std::max(8.0, 4.8 * std::max(gain, 1.0) + 8.0 * std::sqrt(v_add) + 1.0);
  const int nx = static_cast<int>(base.nx * extent / 8.0) | 1;
  omt_grid_spec spec{extent, extent, nx, nx};
  const size_t n = static_cast<size_t>(nx) * nx;
  std::vector<double> in(n), out(n);
  if (name == "vacuum") check(omt_wigner_fock(0, &spec, in.data()), "fock");
  if (name == "one_photon") check(omt_wigner_fock(1, &spec, in.data()), "fock");
  if (name == "two_photon") check(omt_wigner_fock(2, &spec, in.data()), "fock");
  if (name == "cat_alpha2")
    check(omt_wigner_cat(2.0, 0.0, 0, &spec, in.data()), "cat");
  check(omt_wigner_propagate(&spec, in.data(), gain, v_add, out.data()), "propagate");
  double value = 0;
  if (want_fidelity) {
    check(omt_wigner_fidelity(&spec, in.data(), out.data(), &value), "fidelity");
  } else {
    double pure = 0;
    check(omt_wigner_negativity(&spec, in.data(), &pure), "negativity");
    check(omt_wigner_negativity(&spec, out.data(), &value), "negativity");
    value = pure > 0 ? value / pure : 0.0;
  }
  return value;
}

int cmd_state_sweep(const CommonOpts& o, bool fidelity_mode, int points, int nx,
                    bool insets) {
  const char* name = fidelity_mode ? "fidelity" : "negativity";
  ModelHandle base = resolve_model(o);
  print_warnings(base.get());
  RunManifest manifest(name, o.out_dir);
  manifest.set_params(params_json(base.get()));
  manifest.set_seed(o.seed);

  const omt_reduced_params r0 = reduced_of(base.get());
  const double nbar = std::max(r0.nbar, 1.0);
  std::vector<std::string> names;
  if (fidelity_mode) names = {"vacuum", "one_photon", "two_photon", "cat_alpha2"};
  else names = {"one_photon", "two_photon", "cat_alpha2"};

  std::vector<std::string> header{"cl_over_nbar"};
  for (const auto& s : names) header.push_back(s);
  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for(std::string(name) + ".csv"), header);

  omt_grid_spec spec{8.0, 8.0, nx, nx};
  std::vector<std::vector<double>> curves(names.size());
  std::vector<double> xs;
  json point_values;
  for (int i = 0; i < points; ++i) {
    const double x = std::pow(10.0, -1.0 + (std::log10(30.0) + 1.0) * i / (points - 1));
    ModelHandle m = with_cl(o, x * nbar);
    const Channel ch = matched_channel(m.get());
    std::vector<double> row{x};
    for (size_t s = 0; s < names.size(); ++s) {
      const double v = state_metric(names[s], spec, ch.gain, ch.v_add, fidelity_mode);
      row.push_back(v);
      curves[s].push_back(v);
    }
    xs.push_back(std::log10(x));
    if (csv) csv->row(row);
  }

  const Channel ch10 = matched_channel(with_cl(o, 10.0 * nbar).get());
  for (size_t s = 0; s < names.size(); ++s)
    point_values[names[s]] =
        state_metric(names[s], spec, ch10.gain, ch10.v_add, fidelity_mode);

  if (insets) {
    for (double x : {0.1, 1.0, 10.0}) {
      const Channel ch = matched_channel(with_cl(o, x * nbar).get());
      const double ext =
          std::max(8.0, 4.0 * std::max(ch.gain, 1.0) + 8.0 * std::sqrt(ch.v_add) + 1.0);
      const int inx = static_cast<int>(257 * ext / 8.0) | 1;
      omt_grid_spec ispec{ext, ext, inx, inx};
      std::vector<double> in(static_cast<size_t>(inx) * inx);
      std::vector<double> out(in.size());
      check(omt_wigner_fock(1, &ispec, in.data()), "fock");
      check(omt_wigner_propagate(&ispec, in.data(), ch.gain, ch.v_add, out.data()),
            "propagate");
      char fname[64];
      if (o.want_csv()) {
        std::snprintf(fname, sizeof fname, "inset_one_photon_clnb_%g.csv", x);
        CsvWriter wcsv(manifest.path_for(fname), {"x", "y", "w"});
        for (int iy = 0; iy < inx; ++iy)
          for (int ix = 0; ix < inx; ++ix)
            wcsv.row({-ext + ix * 2.0 * ext / (inx - 1),
                      -ext + iy * 2.0 * ext / (inx - 1),
                      out[static_cast<size_t>(iy) * inx + ix]});
      }
      if (o.want_svg()) {
        double amp = 0;
        for (double v : out) amp = std::max(amp, std::abs(v));
        SvgPlot heat(-ext, ext, -ext, ext, "X", "Y");
        heat.heatmap(out, inx, inx, -amp, amp);  // diverging, centred on 0
        heat.contour(out, inx, inx, 0.0, "#000000");
        std::snprintf(fname, sizeof fname, "inset_one_photon_clnb_%g.svg", x);
        omtcli::write_text(manifest.path_for(fname),
                           heat.render("transferred one-photon wigner"));
      }
    }
  }

  if (o.want_json()) {
    json report;
    report["parameters"] = params_json(base.get());
    report["at_cl_over_nbar_10"] = point_values;
    report["channel_at_10"] = {{"gain", ch10.gain}, {"v_add", ch10.v_add}};
    omtcli::write_text(manifest.path_for(std::string(name) + ".json"),
                       report.dump(2) + "\n");
  }
  if (o.want_svg()) {
    SvgPlot plot(xs.front(), xs.back(), 0.0, 1.05, "log10 C_L/nbar", name);
    const char* colors[] = {"#111111", "#d62728", "#1f77b4", "#ff7f0e"};
    std::vector<std::pair<std::string, std::string>> legend;
    for (size_t s = 0; s < names.size(); ++s) {
      plot.polyline(xs, curves[s], colors[s % 4]);
      legend.emplace_back(names[s], colors[s % 4]);
    }
    if (fidelity_mode) {
      plot.hline(0.5, "#999999");
      plot.hline(2.0 / 3.0, "#bbbbbb");
    }
    plot.legend(legend);
    omtcli::write_text(manifest.path_for(std::string(name) + ".svg"),
                       plot.render(name));
  }
  manifest.write(omt_version());
  return 0;
}

int cmd_tv_diagram(const CommonOpts& o, int samples) {
  ModelHandle base = resolve_model(o);
  print_warnings(base.get());
  RunManifest manifest("tv-diagram", o.out_dir);
  manifest.set_params(params_json(base.get()));
  manifest.set_seed(o.seed);

  const char* axis_names[] = {"eta_l", "eta_m", "eta_d"};
  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("tv_diagram.csv"),
                std::vector<std::string>{"axis", "loss_value", "t_ac", "v_add",
                                         "w_t", "tick"});
  json skipped = json::array();
  std::vector<std::vector<double>> t_curves(3), v_curves(3);
  for (int axis = 0; axis < 3; ++axis) {
    size_t n = samples + 16;
    std::vector<omt_tv_point> pts(n);
    check(omt_tv_trace(base.get(), static_cast<omt_loss_axis>(axis), samples,
                       pts.data(), &n),
          "tv trace");
    pts.resize(std::min(n, pts.size()));
    for (const auto& p : pts) {
      if (p.skipped) {
        skipped.push_back({{"axis", axis_names[axis]}, {"loss_value", p.loss_value}});
        continue;
      }
      if (csv)
        csv->row_mixed({std::string(axis_names[axis]), omtcli::num(p.loss_value),
                        omtcli::num(p.t_ac), omtcli::num(p.v_add),
                        omtcli::num(p.w_t), p.tick ? "1" : "0"});
      t_curves[axis].push_back(p.t_ac);
      v_curves[axis].push_back(p.v_add);
    }
  }

  if (o.want_json()) {
    json report;
    report["parameters"] = params_json(base.get());
    report["skipped_points"] = skipped;
    const Channel ch = matched_channel(base.get());
    omt_witness_report w;
    check(omt_transfer_witness(ch.gain, ch.gain, ch.v_add, ch.v_add, &w), "witness");
    report["base_point"] = {{"t_ac", ch.t_ac}, {"v_add", ch.v_add}, {"w_t", w.w_t},
                            {"w_t_min", w.w_t_min}};
    omtcli::write_text(manifest.path_for("tv_diagram.json"), report.dump(2) + "\n");
  }
  if (o.want_svg()) {
    SvgPlot plot(0.0, 1.0, 0.0, 2.0, "T_ac", "V_add");
    // W_T = 1 boundary and the Heisenberg-forbidden region.
    std::vector<double> ts, locc, forbidden;
    for (int i = 0; i <= 100; ++i) {
      const double t = i / 100.0;
      ts.push_back(t);
      locc.push_back(0.5 * (t + 1.0));
      forbidden.push_back(0.5 * (1.0 - t));
    }
    plot.shade_below(ts, forbidden, "#777777");
    plot.polyline(ts, locc, "#000000", 1.2, "6,3");
    plot.hline(0.5, "#aaaaaa");
    const char* colors[] = {"#d62728", "#2ca02c", "#9467bd"};
    for (int axis = 0; axis < 3; ++axis)
      plot.polyline(t_curves[axis], v_curves[axis], colors[axis], 1.8);
    plot.legend({{"eta_l", colors[0]}, {"eta_m", colors[1]}, {"eta_d", colors[2]}});
    omtcli::write_text(manifest.path_for("tv_diagram.svg"),
                       plot.render("transmission-noise diagram"));
  }
  manifest.write(omt_version());
  return 0;
}

int cmd_witness_map(const CommonOpts& o, int nx) {
  CommonOpts base_opts = o;
  if (!base_opts.eta_d && base_opts.preset.empty() && base_opts.config.empty())
    base_opts.eta_d = 0.85;
  if (!base_opts.cl && base_opts.preset.empty() && base_opts.config.empty())
    base_opts.cl = 1e4, base_opts.nbar = 1e3;
  ModelHandle base = resolve_model(base_opts);
  print_warnings(base.get());
  RunManifest manifest("witness-map", o.out_dir);
  manifest.set_params(params_json(base.get()));
  manifest.set_seed(o.seed);

  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("witness_map.csv"),
                std::vector<std::string>{"eta_l", "eta_m", "w_t"});
  std::vector<double> field(static_cast<size_t>(nx) * nx);
  for (int iy = 0; iy < nx; ++iy) {
    const double eta_m = 0.02 + (1.0 - 0.02) * iy / (nx - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double eta_l = 0.505 + (1.0 - 0.505) * ix / (nx - 1);
      CommonOpts popt = base_opts;
      popt.eta_l = eta_l;
      popt.eta_m = eta_m;
      ModelHandle m = resolve_model(popt);
      const Channel ch = matched_channel(m.get());
      omt_witness_report w;
      check(omt_transfer_witness(ch.gain, ch.gain, ch.v_add, ch.v_add, &w),
            "witness");
      field[static_cast<size_t>(iy) * nx + ix] = w.w_t;
      if (csv) csv->row({eta_l, eta_m, w.w_t});
    }
  }
  if (o.want_json()) {
    json report;
    report["parameters"] = params_json(base.get());
    double w_max = 0, w_min = 1e9;
    for (double w : field) {
      w_max = std::max(w_max, w);
      w_min = std::min(w_min, w);
    }
    report["w_t_range"] = {w_min, w_max};
    omtcli::write_text(manifest.path_for("witness_map.json"), report.dump(2) + "\n");
  }
  if (o.want_svg()) {
    SvgPlot plot(0.505, 1.0, 0.02, 1.0, "eta_l", "eta_m");
    double w_max = 0;
    for (double w : field) w_max = std::max(w_max, w);
    plot.heatmap(field, nx, nx, 2.0 - w_max > 0 ? 2.0 - w_max : 0.0, w_max);
    plot.contour(field, nx, nx, 1.0, "#000000");
    omtcli::write_text(manifest.path_for("witness_map.svg"),
                       plot.render("quantum transfer witness"));
  }
  manifest.write(omt_version());
  return 0;
}

int cmd_homodyne_gains(const CommonOpts& o) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("homodyne-gains", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);

  auto grid = model_grid(m.get(), 1201);
  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("homodyne_gains.csv"),
                std::vector<std::string>{"omega", "t_aa_re", "t_aa_im", "t_ba_re",
                                         "t_ba_im", "t_ca_re", "t_ca_im", "T_aa",
                                         "T_ba", "T_ca"});
  std::vector<double> taa(grid.size()), tba(grid.size()), tca(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    omt_light_gains g;
    check(omt_light_gains_at(m.get(), grid[i], &g), "light gains");
    auto sq = [](omt_complex z) { return z.re * z.re + z.im * z.im; };
    taa[i] = sq(g.t_aa);
    tba[i] = sq(g.t_ba);
    tca[i] = sq(g.t_ca);
    if (csv)
      csv->row({grid[i], g.t_aa.re, g.t_aa.im, g.t_ba.re, g.t_ba.im, g.t_ca.re,
                g.t_ca.im, taa[i], tba[i], tca[i]});
  }
  if (o.want_json()) {
    json report;
    report["parameters"] = params_json(m.get());
    const double w0 = matched_omega(m.get());
    omt_light_gains g;
    check(omt_light_gains_at(m.get(), w0, &g), "light gains");
    report["T_aa_at_matched"] = g.t_aa.re * g.t_aa.re + g.t_aa.im * g.t_aa.im;
    omtcli::write_text(manifest.path_for("homodyne_gains.json"), report.dump(2) + "\n");
  }
  if (o.want_svg()) {
    SvgPlot plot(grid.front(), grid.back(), 0.0, 1.05, "detuning", "T");
    plot.polyline(grid, taa, "#1f77b4");
    plot.polyline(grid, tba, "#d62728");
    plot.polyline(grid, tca, "#2ca02c");
    plot.legend({{"T_aa", "#1f77b4"}, {"T_ba", "#d62728"}, {"T_ca", "#2ca02c"}});
    omtcli::write_text(manifest.path_for("homodyne_gains.svg"),
                       plot.render("input-to-light transmission"));
  }
  manifest.write(omt_version());
  return 0;
}

int cmd_homodyne_spectrum(const CommonOpts& o, std::vector<double> h_list) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("homodyne-spectrum", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);
  if (h_list.empty()) h_list = {1.0, 2.0, 4.0};

  double km = 0;
  check(omt_model_scales(m.get(), nullptr, &km, nullptr), "scales");
  std::vector<double> grid;
  for (int i = -600; i <= 600; ++i) grid.push_back(4.0 * km * i / 600.0);

  json report;
  report["parameters"] = params_json(m.get());
  for (double h : h_list) {
    const size_t n = grid.size();
    std::vector<double> opt(n), mech(n), mw(n), total(n);
    check(omt_vacuum_spectrum(m.get(), h, grid.data(), n, opt.data(), mech.data(),
                              mw.data(), total.data()),
          "vacuum spectrum");
    char fname[64];
    std::snprintf(fname, sizeof fname, "homodyne_spectrum_h%g.csv", h);
    if (o.want_csv()) {
      CsvWriter csv(manifest.path_for(fname),
                    {"omega", "s_optical", "s_mechanical", "s_microwave", "s_total"});
      for (size_t i = 0; i < n; ++i)
        csv.row({grid[i], opt[i], mech[i], mw[i], total[i]});
    }
    double mn = 1e9, mx = 0;
    for (double v : total) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    char key[32];
    std::snprintf(key, sizeof key, "h=%g", h);
    report["total_range"][key] = {mn, mx};
    report["squashing"][key] = mn < 0.5 - 1e-9;
    if (o.want_svg()) {
      SvgPlot plot(grid.front(), grid.back(), 0.0, std::max(1.0, mx * 1.05),
                   "detuning", "S[Y_out]");
      plot.polyline(grid, opt, "#1f77b4");
      plot.polyline(grid, mech, "#d62728");
      plot.polyline(grid, mw, "#2ca02c");
      plot.polyline(grid, total, "#111111", 2.0);
      plot.hline(0.5, "#888888");
      plot.legend({{"optical", "#1f77b4"}, {"mechanical", "#d62728"},
                   {"microwave", "#2ca02c"}, {"total", "#111111"}});
      char sname[64];
      std::snprintf(sname, sizeof sname, "homodyne_spectrum_h%g.svg", h);
      omtcli::write_text(manifest.path_for(sname),
                         plot.render("vacuum-input photocurrent spectrum"));
    }
  }
  if (o.want_json())
    omtcli::write_text(manifest.path_for("homodyne_spectrum.json"),
                       report.dump(2) + "\n");
  manifest.write(omt_version());
  return 0;
}

int cmd_reverse(const CommonOpts& o) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("reverse", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);

  auto grid = model_grid(m.get(), 1201);
  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("reverse.csv"),
                std::vector<std::string>{"omega", "abs_c_x_in", "abs_c_y_in",
                                         "abs_c_x_v", "abs_c_y_v", "abs_c_b_in",
                                         "abs_c_c_in", "noise"});
  auto mag = [](omt_complex z) { return std::hypot(z.re, z.im); };
  for (double w : grid) {
    omt_reverse_channel rc;
    check(omt_reverse_channel_at(m.get(), w, &rc), "reverse channel");
    if (csv)
      csv->row({w, mag(rc.c_x_in), mag(rc.c_y_in), mag(rc.c_x_v), mag(rc.c_y_v),
                mag(rc.c_b_in), mag(rc.c_c_in), rc.noise});
  }
  if (o.want_json()) {
    const omt_reduced_params r = reduced_of(m.get());
    const double w0 = matched_omega(m.get());
    double noise = 0;
    check(omt_reverse_added_noise(m.get(), w0, &noise), "reverse noise");
    json report;
    report["parameters"] = params_json(m.get());
    report["matched_omega"] = w0;
    report["added_noise"] = noise;
    report["detection_loss_limit"] = (1.0 / r.eta_d - 1.0) / 4.0;
    omtcli::write_text(manifest.path_for("reverse.json"), report.dump(2) + "\n");
  }
  manifest.write(omt_version());
  return 0;
}

int cmd_entanglement(const CommonOpts& o, double r_squeeze,
                     std::optional<double> gx, std::optional<double> gy,
                     std::optional<double> vx, std::optional<double> vy) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("entanglement", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);

  Channel ch = matched_channel(m.get());
  const double g_x = gx.value_or(ch.gain);
  const double g_y = gy.value_or(ch.gain);
  const double v_x = vx.value_or(ch.v_add);
  const double v_y = vy.value_or(ch.v_add);

  double cov[16], degraded[16];
  check(omt_tmss_covariance(r_squeeze, cov), "tmss");
  check(omt_apply_channel(cov, 1, g_x, g_y, v_x, v_y, degraded), "channel");
  double i_sep = 0;
  check(omt_inseparability(degraded, &i_sep), "inseparability");
  omt_witness_report w;
  check(omt_transfer_witness(g_x, g_y, v_x, v_y, &w), "witness");

  json report;
  report["parameters"] = params_json(m.get());
  report["r"] = r_squeeze;
  report["channel"] = {{"g_x", g_x}, {"g_y", g_y}, {"v_x", v_x}, {"v_y", v_y}};
  report["inseparability"] = i_sep;
  report["w_t"] = w.w_t;
  report["verdict"] = i_sep < 1.0 ? "entangled" : "separable";
  omtcli::write_text(manifest.path_for("entanglement.json"), report.dump(2) + "\n");
  std::cout << report.dump(2) << std::endl;
  manifest.write(omt_version());
  return 0;
}

int cmd_oracle_validate(const CommonOpts& o, int segments, double band, double tol) {
  ModelHandle m = resolve_model(o);
  print_warnings(m.get());
  RunManifest manifest("oracle-validate", o.out_dir);
  manifest.set_params(params_json(m.get()));
  manifest.set_seed(o.seed);

  omt_sim_config cfg{0.0, 0.0, o.seed, segments};
  omt_oracle_report rep;
  size_t n = 0;
  check(omt_oracle_validate(m.get(), &cfg, band, tol, &rep, nullptr, nullptr,
                            nullptr, &n),
        "oracle size query");
  std::vector<double> w(n), mc(n), an(n);
  check(omt_oracle_validate(m.get(), &cfg, band, tol, &rep, w.data(), mc.data(),
                            an.data(), &n),
        "oracle validate");

  if (o.want_csv()) {
    CsvWriter csv(manifest.path_for("oracle_validate.csv"),
                  {"omega", "s_mc", "s_analytic", "rel_dev"});
    for (size_t i = 0; i < n; ++i)
      csv.row({w[i], mc[i], an[i],
               an[i] != 0.0 ? std::abs(mc[i] - an[i]) / std::abs(an[i]) : 0.0});
  }
  json report;
  report["parameters"] = params_json(m.get());
  report["n_segments"] = segments;
  report["band"] = {rep.band_lo, rep.band_hi};
  report["rms_rel"] = rep.rms_rel;
  report["max_rel"] = rep.max_rel;
  report["tolerance"] = tol;
  report["verdict"] = rep.pass ? "pass" : "fail";
  if (o.want_json())
    omtcli::write_text(manifest.path_for("oracle_validate.json"),
                       report.dump(2) + "\n");
  std::cout << report.dump(2) << std::endl;
  if (o.want_svg()) {
    double mx = 0;
    for (size_t i = 0; i < n; ++i) mx = std::max(mx, std::max(mc[i], an[i]));
    SvgPlot plot(w.front(), w.back(), 0.0, mx * 1.05, "omega", "S[X_out]");
    plot.polyline(w, mc, "#d62728");
    plot.polyline(w, an, "#111111", 1.2, "5,3");
    plot.legend({{"monte carlo", "#d62728"}, {"analytic", "#111111"}});
    omtcli::write_text(manifest.path_for("oracle_validate.svg"),
                       plot.render("stochastic oracle vs analytic spectrum"));
  }
  manifest.write(omt_version());
  return rep.pass ? 0 : 2;
}

int cmd_presets(const CommonOpts& o) {
  RunManifest manifest("presets", o.out_dir);
  manifest.set_seed(o.seed);
  json report = json::array();
  std::optional<CsvWriter> csv;
  if (o.want_csv())
    csv.emplace(manifest.path_for("presets.csv"),
                std::vector<std::string>{"name", "c_l", "c_mp", "beta", "eta_l",
                                         "eta_m", "eta_d", "nbar", "h_gain"});
  for (const char* name : {"gold_square", "gold_star", "fig6", "fig2_grid"}) {
    omt_model* m = nullptr;
    check(omt_model_from_preset(name, &m), name);
    ModelHandle h(m);
    const omt_reduced_params r = reduced_of(m);
    json entry = params_json(m);
    entry["name"] = name;
    report.push_back(entry);
    if (csv)
      csv->row_mixed({name, omtcli::num(r.c_l), omtcli::num(r.c_mp),
                      omtcli::num(r.beta), omtcli::num(r.eta_l),
                      omtcli::num(r.eta_m), omtcli::num(r.eta_d),
                      omtcli::num(r.nbar), omtcli::num(r.h_gain)});
  }
  manifest.set_params(json::object());
  if (o.want_json())
    omtcli::write_text(manifest.path_for("presets.json"), report.dump(2) + "\n");
  std::cout << report.dump(2) << std::endl;
  manifest.write(omt_version());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-domain model of a feedback-enabled optical-microwave "
               "electro-optomechanical transducer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", omt_version());

  CommonOpts opts;
  bool grid_mode = false;
  int sweep_points = 21, nx = 512, samples = 201, map_nx = 81, segments = 1024;
  bool insets = false;
  double band = 3.0, tol = 0.05, r_squeeze = 10.0;
  std::vector<double> h_list;
  std::optional<double> gx, gy, vx, vy;

  auto* transmission = app.add_subcommand("transmission", "ideal transmission spectra");
  add_common(transmission, opts);
  transmission->add_flag("--grid", grid_mode, "emit the 3x3 beta x C_M' panel grid");

  auto* noise = app.add_subcommand("noise-sweep", "added-noise budget vs cooperativity");
  add_common(noise, opts);
  noise->add_option("--points", sweep_points, "sweep points")->capture_default_str();

  auto* fidelity = app.add_subcommand("fidelity", "transfer fidelity sweep");
  add_common(fidelity, opts);
  fidelity->add_option("--points", sweep_points, "sweep points")->capture_default_str();
  fidelity->add_option("--nx", nx, "wigner grid points per axis")->capture_default_str();
  fidelity->add_flag("--insets", insets, "dump wigner inset grids");

  auto* negativity = app.add_subcommand("negativity", "wigner negativity sweep");
  add_common(negativity, opts);
  negativity->add_option("--points", sweep_points, "sweep points")->capture_default_str();
  negativity->add_option("--nx", nx, "wigner grid points per axis")->capture_default_str();
  negativity->add_flag("--insets", insets, "dump wigner inset grids");

  auto* tv = app.add_subcommand("tv-diagram", "transmission-noise traces per loss axis");
  add_common(tv, opts);
  tv->add_option("--samples", samples, "points per axis")->capture_default_str();

  auto* wmap = app.add_subcommand("witness-map", "witness over the cavity efficiencies");
  add_common(wmap, opts);
  wmap->add_option("--map_nx", map_nx, "map resolution")->capture_default_str();

  auto* hgains = app.add_subcommand("homodyne-gains", "input-to-light transmission");
  add_common(hgains, opts);

  auto* hspec = app.add_subcommand("homodyne-spectrum",
                                   "vacuum-input photocurrent spectra vs gain");
  add_common(hspec, opts);
  hspec->add_option("--h_list", h_list, "feedback gains to evaluate");

  auto* reverse = app.add_subcommand("reverse", "coherent-feedback reverse transfer");
  add_common(reverse, opts);

  auto* ent = app.add_subcommand("entanglement", "two-mode entanglement verdict");
  add_common(ent, opts);
  ent->add_option("--r", r_squeeze, "input squeezing parameter")->capture_default_str();
  ent->add_option("--gx", gx, "channel gain on X");
  ent->add_option("--gy", gy, "channel gain on Y");
  ent->add_option("--vx", vx, "channel noise on X");
  ent->add_option("--vy", vy, "channel noise on Y");

  auto* oracle = app.add_subcommand("oracle-validate",
                                    "stochastic Langevin check of the spectra");
  add_common(oracle, opts);
  oracle->add_option("--segments", segments, "welch segments")->capture_default_str();
  oracle->add_option("--band", band, "comparison band in units of kappa_M")
      ->capture_default_str();
  oracle->add_option("--tol", tol, "rms tolerance")->capture_default_str();

  auto* presets = app.add_subcommand("presets", "list the named parameter sets");
  add_common(presets, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (transmission->parsed()) return cmd_transmission(opts, grid_mode);
    if (noise->parsed()) return cmd_noise_sweep(opts, sweep_points);
    if (fidelity->parsed())
      return cmd_state_sweep(opts, true, std::min(sweep_points, 21), nx, insets);
    if (negativity->parsed())
      return cmd_state_sweep(opts, false, std::min(sweep_points, 21), nx, insets);
    if (tv->parsed()) return cmd_tv_diagram(opts, samples);
    if (wmap->parsed()) return cmd_witness_map(opts, map_nx);
    if (hgains->parsed()) return cmd_homodyne_gains(opts);
    if (hspec->parsed()) return cmd_homodyne_spectrum(opts, h_list);
    if (reverse->parsed()) return cmd_reverse(opts);
    if (ent->parsed()) return cmd_entanglement(opts, r_squeeze, gx, gy, vx, vy);
    if (oracle->parsed()) return cmd_oracle_validate(opts, segments, band, tol);
    if (presets->parsed()) return cmd_presets(opts);
  } catch (const std::exception& e) {
    json err;
    err["error"]["code"] = "io";
    err["error"]["message"] = e.what();
    std::cout << err.dump(2) << std::endl;
    return 1;
  }
  return 0;
}
