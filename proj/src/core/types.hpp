#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace omt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Vacuum variance per quadrature. All noise figures in this library use this
/// convention ([X, Y] = i, <X^2> = <Y^2> = 1/2 in the ground state).
inline constexpr double kVacuumVariance = 0.5;

/// An ordered frequency grid with real samples plus labelling metadata.
/// Frequencies are detunings from the upper mechanical sideband unless the
/// label says otherwise.
struct SpectrumSeries {
  std::vector<double> omega;
  std::vector<double> values;
  std::string label;
  std::map<std::string, double> meta;
};

/// Uniform symmetric grid of detunings, 2n+1 points over [-span, span].
std::vector<double> symmetric_grid(double span, int half_points);

inline std::vector<double> symmetric_grid(double span, int half_points) {
  std::vector<double> w;
  w.reserve(2 * half_points + 1);
  for (int i = -half_points; i <= half_points; ++i)
    w.push_back(span * static_cast<double>(i) / half_points);
  return w;
}

}  // namespace omt
