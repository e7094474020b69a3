#pragma once

#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace omt {

/// Sampled phase-space grid, row-major (x fastest), endpoints at +-extent.
/// Convention: vacuum variance 1/2 per quadrature, vacuum peak 1/pi.
struct GridSpec {
  double extent_x = 8.0;
  double extent_y = 8.0;
  int nx = 512;
  int ny = 512;

  double dx() const { return 2.0 * extent_x / (nx - 1); }
  double dy() const { return 2.0 * extent_y / (ny - 1); }
  double x(int ix) const { return -extent_x + ix * dx(); }
  double y(int iy) const { return -extent_y + iy * dy(); }
  bool operator==(const GridSpec&) const = default;
};

struct WignerGrid {
  GridSpec spec;
  std::vector<double> values;

  double& at(int ix, int iy) { return values[static_cast<size_t>(iy) * spec.nx + ix]; }
  double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * spec.nx + ix]; }
};

/// Trapezoid mass of the grid.
double grid_mass(const WignerGrid& w);

/// Fock state |n>, n <= 20 (Laguerre recurrence accuracy bound).
WignerGrid wigner_fock(int n, const GridSpec& spec = {});

enum class CatParity { Even, Odd };

/// Even/odd cat state of coherent amplitude alpha (|alpha| <= 6); lobes sit
/// at +-sqrt(2) alpha in grid coordinates.
WignerGrid wigner_cat(cplx alpha, CatParity parity, const GridSpec& spec = {});

/// Isotropic Gaussian state of per-axis variance v (v = 1/2 is vacuum).
WignerGrid wigner_gaussian(double variance, const GridSpec& spec = {});

/// Gaussian channel: rescale by the gain, then blur with an isotropic
/// Gaussian of per-axis variance v_add (direct-space separable convolution).
/// v_add = 0 with gain = 1 returns the input exactly. Throws GridTooCoarse
/// when more than 1e-4 of the mass leaves the grid.
WignerGrid propagate(const WignerGrid& in, double gain, double v_add);

/// Complex-gain variant: phase-rotates the grid by arg(gain) first. The
/// reported figures of merit are rotation-invariant for the states used
/// here, so the rotation is identity-tested rather than exercised.
WignerGrid propagate(const WignerGrid& in, cplx gain, double v_add);

WignerGrid rotate_grid(const WignerGrid& in, double angle);

/// Overlap fidelity F = 2 pi Int W_a W_b. Grids must share a spec.
double fidelity(const WignerGrid& a, const WignerGrid& b);

/// Integrated negative volume, Int |W| - 1, clamped to 0 below 1e-6.
double negativity(const WignerGrid& w);

/// Extent large enough to hold a state of the given support radius after a
/// (gain, v_add) channel, for callers that auto-size sweep grids.
double recommended_extent(double state_radius, double gain, double v_add);

}  // namespace omt
