#pragma once

#include <array>

#include "errors.hpp"

namespace omt {

/// Extended-precision scalar for covariance bookkeeping. The symplectic
/// invariants of strongly squeezed states live in digits that cosh-sized
/// entries round away in double, so the matrix itself carries quad
/// precision end to end.
using qreal = __float128;

/// 4x4 real symmetric covariance matrix of a two-mode Gaussian state over
/// (X1, Y1, X2, Y2) with [X, Y] = i (vacuum variance 1/2). Row-major.
struct CovarianceMatrix2Mode {
  std::array<qreal, 16> v{};

  qreal& at(int i, int j) { return v[4 * i + j]; }
  qreal at(int i, int j) const { return v[4 * i + j]; }
  double entry(int i, int j) const { return static_cast<double>(at(i, j)); }
};

/// Two-mode squeezed vacuum with squeezing parameter r >= 0.
CovarianceMatrix2Mode tmss_covariance(double r);

/// Applies X -> gX X + noise(vX), Y -> gY Y + noise(vY) to one mode
/// (mode 1 or 2); the cross block scales by diag(gX, gY) on that side.
CovarianceMatrix2Mode apply_channel(const CovarianceMatrix2Mode& cov, int mode,
                                    double g_x, double g_y, double v_x,
                                    double v_y);

/// Degree of inseparability I = 2 nu_tilde_minus (m^2 = 1): the minimum
/// symplectic eigenvalue of the partial transpose via the seralian closed
/// form. I < 1 iff the state is entangled (Simon/PPT). Throws NumericalBranch
/// when the discriminant goes negative beyond tolerance, which signals an
/// invalid covariance matrix.
double inseparability(const CovarianceMatrix2Mode& cov);

/// Minimum symplectic eigenvalue of the covariance itself (no transpose);
/// bona-fide states satisfy 2 nu_minus >= 1 - tol.
double min_symplectic_eigenvalue(const CovarianceMatrix2Mode& cov);
bool is_bona_fide(const CovarianceMatrix2Mode& cov, double tol = 1e-10);

}  // namespace omt
