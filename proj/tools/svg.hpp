#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace omtcli {

/// Small single-panel SVG plotter: enough for line traces, heatmaps and one
/// contour level. Plots are conveniences only; no test consumes them.
class SvgPlot {
 public:
  SvgPlot(double x_min, double x_max, double y_min, double y_max,
          std::string x_label = "", std::string y_label = "")
      : x0_(x_min), x1_(x_max), y0_(y_min), y1_(y_max),
        x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color, double width = 1.5,
                const std::string& dash = "") {
    std::ostringstream p;
    bool pen_down = false;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(ys[i])) {
        pen_down = false;
        continue;
      }
      p << (pen_down ? "L " : "M ") << fmt(px(xs[i])) << ' ' << fmt(py(ys[i]))
        << ' ';
      pen_down = true;
    }
    body_ += "<path d=\"" + p.str() + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"" + fmt(width) + "\"" +
             (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
  }

  void marker(double x, double y, const std::string& color, double r = 3.0) {
    body_ += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"" +
             fmt(r) + "\" fill=\"" + color + "\"/>\n";
  }

  void hline(double y, const std::string& color, const std::string& dash = "4,3") {
    polyline({x0_, x1_}, {y, y}, color, 1.0, dash);
  }

  /// Filled cell map of a row-major grid with a blue-white-red diverging
  /// palette centred on zero (for signed fields) or a white-to-red ramp when
  /// lo >= 0.
  void heatmap(const std::vector<double>& v, int nx, int ny, double lo, double hi) {
    const double cw = plot_w_ / nx, ch = plot_h_ / ny;
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const double t = (v[static_cast<size_t>(iy) * nx + ix] - lo) / (hi - lo);
        body_ += "<rect x=\"" + fmt(ml_ + ix * cw) + "\" y=\"" +
                 fmt(mt_ + plot_h_ - (iy + 1) * ch) + "\" width=\"" + fmt(cw + 0.5) +
                 "\" height=\"" + fmt(ch + 0.5) + "\" fill=\"" +
                 diverging(std::clamp(t, 0.0, 1.0)) + "\"/>\n";
      }
  }

  /// Marching-squares contour of the same grid at one level.
  void contour(const std::vector<double>& v, int nx, int ny, double level,
               const std::string& color) {
    auto at = [&](int ix, int iy) { return v[static_cast<size_t>(iy) * nx + ix]; };
    auto gx = [&](double ix) { return x0_ + (x1_ - x0_) * ix / (nx - 1); };
    auto gy = [&](double iy) { return y0_ + (y1_ - y0_) * iy / (ny - 1); };
    std::ostringstream p;
    for (int iy = 0; iy + 1 < ny; ++iy)
      for (int ix = 0; ix + 1 < nx; ++ix) {
        // Edge interpolation points, collected pairwise.
        std::vector<std::pair<double, double>> pts;
        auto edge = [&](double xa, double ya, double va, double xb, double yb,
                        double vb) {
          if ((va - level) * (vb - level) < 0) {
            const double t = (level - va) / (vb - va);
            pts.emplace_back(xa + t * (xb - xa), ya + t * (yb - ya));
          }
        };
        const double v00 = at(ix, iy), v10 = at(ix + 1, iy);
        const double v01 = at(ix, iy + 1), v11 = at(ix + 1, iy + 1);
        edge(gx(ix), gy(iy), v00, gx(ix + 1), gy(iy), v10);
        edge(gx(ix + 1), gy(iy), v10, gx(ix + 1), gy(iy + 1), v11);
        edge(gx(ix), gy(iy + 1), v01, gx(ix + 1), gy(iy + 1), v11);
        edge(gx(ix), gy(iy), v00, gx(ix), gy(iy + 1), v01);
        if (pts.size() >= 2)
          p << "M " << px(pts[0].first) << ' ' << py(pts[0].second) << " L "
            << px(pts[1].first) << ' ' << py(pts[1].second) << ' ';
      }
    body_ += "<path d=\"" + p.str() + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.8\"/>\n";
  }

  void shade_below(const std::vector<double>& xs, const std::vector<double>& ys,
                   const std::string& color, double opacity = 0.25) {
    std::ostringstream p;
    p << "M " << px(xs.front()) << ' ' << py(y0_);
    for (size_t i = 0; i < xs.size(); ++i)
      p << " L " << px(xs[i]) << ' ' << py(std::max(y0_, std::min(y1_, ys[i])));
    p << " L " << px(xs.back()) << ' ' << py(y0_) << " Z";
    body_ += "<path d=\"" + p.str() + "\" fill=\"" + color + "\" opacity=\"" +
             fmt(opacity) + "\" stroke=\"none\"/>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = mt_ + 14;
    for (const auto& [label, color] : entries) {
      body_ += "<rect x=\"" + fmt(ml_ + plot_w_ - 150) + "\" y=\"" + fmt(y - 9) +
               "\" width=\"18\" height=\"4\" fill=\"" + color + "\"/>\n";
      body_ += text(ml_ + plot_w_ - 126, y - 4, label, 11);
      y += 16;
    }
  }

  std::string render(const std::string& title = "") const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_
      << "\" height=\"" << h_ << "\" viewBox=\"0 0 " << w_ << ' ' << h_
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << body_;
    s << "<rect x=\"" << ml_ << "\" y=\"" << mt_ << "\" width=\"" << plot_w_
      << "\" height=\"" << plot_h_
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double fx = x0_ + (x1_ - x0_) * i / 4.0;
      const double fy = y0_ + (y1_ - y0_) * i / 4.0;
      s << text(ml_ + plot_w_ * i / 4.0 - 12, mt_ + plot_h_ + 16, fmt(fx), 10);
      s << text(8, py(fy) + 4, fmt(fy), 10);
    }
    if (!x_label_.empty())
      s << text(ml_ + plot_w_ / 2 - 30, h_ - 6, x_label_, 12);
    if (!y_label_.empty())
      s << "<text x=\"14\" y=\"" << mt_ + plot_h_ / 2
        << "\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 14 "
        << mt_ + plot_h_ / 2 << ")\">" << y_label_ << "</text>\n";
    if (!title.empty()) s << text(ml_, mt_ - 8, title, 13);
    s << "</svg>\n";
    return s.str();
  }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }
  static std::string text(double x, double y, const std::string& t, int size) {
    return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
           std::to_string(size) + "\" font-family=\"sans-serif\">" + t +
           "</text>\n";
  }
  static std::string diverging(double t) {
    // 0 -> blue, 0.5 -> white, 1 -> red.
    int r, g, b;
    if (t < 0.5) {
      const double u = t / 0.5;
      r = static_cast<int>(40 + 215 * u);
      g = static_cast<int>(60 + 195 * u);
      b = 255;
    } else {
      const double u = (t - 0.5) / 0.5;
      r = 255;
      g = static_cast<int>(255 - 195 * u);
      b = static_cast<int>(255 - 215 * u);
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
  }
  double px(double x) const { return ml_ + (x - x0_) / (x1_ - x0_) * plot_w_; }
  double py(double y) const { return mt_ + plot_h_ - (y - y0_) / (y1_ - y0_) * plot_h_; }

  double x0_, x1_, y0_, y1_;
  std::string x_label_, y_label_;
  double w_ = 640, h_ = 440, ml_ = 64, mt_ = 28;
  double plot_w_ = 640 - 64 - 20, plot_h_ = 440 - 28 - 44;
  std::string body_;
};

}  // namespace omtcli
