#include "gaussian.hpp"

#include <quadmath.h>

#include <cmath>

namespace omt {

namespace {

// ad - bc with an fma-corrected cross term (Kahan): keeps relative accuracy
// of the result through heavy cancellation, the norm for these matrices.
qreal det2(qreal a, qreal b, qreal c, qreal d) {
  const qreal w = b * c;
  const qreal e = fmaq(-b, c, w);
  const qreal f = fmaq(a, d, -w);
  return f + e;
}

bool xy_decoupled(const CovarianceMatrix2Mode& m) {
  return m.at(0, 1) == 0 && m.at(0, 3) == 0 && m.at(1, 2) == 0 && m.at(2, 3) == 0;
}

qreal det4(const CovarianceMatrix2Mode& m) {
  if (xy_decoupled(m)) {
    // Permuting to (X1, X2, Y1, Y2) block-diagonalises the matrix; the 2x2
    // factors avoid the cancellation a cofactor expansion would hit.
    const qreal dx = det2(m.at(0, 0), m.at(0, 2), m.at(2, 0), m.at(2, 2));
    const qreal dy = det2(m.at(1, 1), m.at(1, 3), m.at(3, 1), m.at(3, 3));
    return dx * dy;
  }
  qreal det = 0;
  for (int c = 0; c < 4; ++c) {
    qreal sub[9];
    int k = 0;
    for (int i = 1; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (j != c) sub[k++] = m.at(i, j);
    const qreal minor = sub[0] * (sub[4] * sub[8] - sub[5] * sub[7]) -
                        sub[1] * (sub[3] * sub[8] - sub[5] * sub[6]) +
                        sub[2] * (sub[3] * sub[7] - sub[4] * sub[6]);
    det += (c % 2 ? -1 : 1) * m.at(0, c) * minor;
  }
  return det;
}

// Seralian detA + detB + c_sign detC as one compensated sum of fma-exact
// products; the plain three-determinant sum cancels badly for strongly
// squeezed states.
qreal seralian(const CovarianceMatrix2Mode& m, qreal c_sign) {
  const qreal terms[6][3] = {
      {1, m.at(0, 0), m.at(1, 1)},      {-1, m.at(0, 1), m.at(1, 0)},
      {1, m.at(2, 2), m.at(3, 3)},      {-1, m.at(2, 3), m.at(3, 2)},
      {c_sign, m.at(0, 2), m.at(1, 3)}, {-c_sign, m.at(0, 3), m.at(1, 2)}};
  qreal sum = 0, comp = 0;
  auto accumulate = [&](qreal x) {
    const qreal t = sum + x;
    if (fabsq(sum) >= fabsq(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  };
  for (const auto& t : terms) {
    const qreal p = t[0] * t[1] * t[2];
    const qreal err = fmaq(t[0] * t[1], t[2], -p);
    accumulate(p);
    accumulate(err);
  }
  return sum + comp;
}

// Smaller symplectic eigenvalue from the seralian, evaluated as
// 2 detV / (delta + sqrt(delta^2 - 4 detV)) so near-cancelling terms stay
// accurate; the discriminant gets a single rounding via fma.
double nu_minus_from(qreal delta, qreal det_v) {
  const qreal disc = fmaq(delta, delta, -4 * det_v);
  if (disc < -1e-9)
    throw Error(ErrorCode::NumericalBranch,
                "negative symplectic discriminant: covariance matrix is not a "
                "valid two-mode state");
  const qreal root = sqrtq(disc > 0 ? disc : 0);
  const qreal nu_sq = 2 * det_v / (delta + root);
  if (nu_sq < 0)
    throw Error(ErrorCode::NumericalBranch,
                "negative symplectic eigenvalue: covariance matrix is not a "
                "valid two-mode state");
  return static_cast<double>(sqrtq(nu_sq));
}

}  // namespace

CovarianceMatrix2Mode tmss_covariance(double r) {
  if (r < 0.0)
    throw Error(ErrorCode::InvalidArgument, "squeezing parameter must be >= 0");
  const qreal c = 0.5Q * coshq(2 * static_cast<qreal>(r));
  const qreal s = 0.5Q * sinhq(2 * static_cast<qreal>(r));
  CovarianceMatrix2Mode v;
  v.at(0, 0) = c;
  v.at(1, 1) = c;
  v.at(2, 2) = c;
  v.at(3, 3) = c;
  v.at(0, 2) = v.at(2, 0) = s;
  v.at(1, 3) = v.at(3, 1) = -s;
  return v;
}

CovarianceMatrix2Mode apply_channel(const CovarianceMatrix2Mode& cov, int mode,
                                    double g_x, double g_y, double v_x,
                                    double v_y) {
  if (mode != 1 && mode != 2)
    throw Error(ErrorCode::InvalidArgument, "mode must be 1 or 2");
  if (v_x < 0.0 || v_y < 0.0)
    throw Error(ErrorCode::InvalidArgument, "noise variances must be >= 0");

  const int o = mode == 1 ? 0 : 2;  // offset of the transformed block
  const qreal g[2] = {g_x, g_y};
  CovarianceMatrix2Mode out = cov;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.at(o + i, o + j) = g[i] * g[j] * cov.at(o + i, o + j);
  out.at(o, o) += static_cast<qreal>(v_x);
  out.at(o + 1, o + 1) += static_cast<qreal>(v_y);

  const int p = mode == 1 ? 2 : 0;  // untouched block offset
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.at(o + i, p + j) = g[i] * cov.at(o + i, p + j);
      out.at(p + j, o + i) = out.at(o + i, p + j);
    }
  return out;
}

double inseparability(const CovarianceMatrix2Mode& cov) {
  // Partial transpose flips the sign of Y2, which shows up only through
  // det C -> -det C in the seralian.
  return 2.0 * nu_minus_from(seralian(cov, -2), det4(cov));
}

double min_symplectic_eigenvalue(const CovarianceMatrix2Mode& cov) {
  return nu_minus_from(seralian(cov, 2), det4(cov));
}

bool is_bona_fide(const CovarianceMatrix2Mode& cov, double tol) {
  for (int i = 0; i < 4; ++i) {
    if (cov.at(i, i) <= 0) return false;
    for (int j = 0; j < i; ++j)
      if (static_cast<double>(fabsq(cov.at(i, j) - cov.at(j, i))) > tol)
        return false;
  }
  try {
    return 2.0 * min_symplectic_eigenvalue(cov) >= 1.0 - tol;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace omt
