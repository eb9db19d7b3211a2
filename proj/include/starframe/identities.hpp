#pragma once

// Finite-dimensional proving ground for the resummation identities.
//
// Every frame assembly in frames.hpp is, through the discretization
// isomorphism, a statement about resolvents of ordinary matrices.  This
// module checks those statements directly on random contraction matrices:
// split a contraction M = M_0 + M_1 (+ M_2), form the part resolvents
// R_p = (I - M_p)^{-1}, and compare the resummed expressions against the
// directly inverted R = (I - M)^{-1}.
//
// The checks return relative residuals (and, where an order statement is
// involved, a fitted deviation-order slope) so callers can assert against
// their own tolerances.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "starframe/block_storage.hpp"
#include "starframe/errors.hpp"

namespace starframe {

// ---------------------------------------------------------------------------
// Random contractions
// ---------------------------------------------------------------------------

struct ContractionPair {
  int dim = 0;
  double rho = 0.0;           // spectral radius the sum was scaled to
  std::vector<Matrix> parts;  // 2 or 3 addends

  const Matrix& m0() const { return parts[0]; }
  const Matrix& m1() const { return parts[1]; }
  const Matrix& m2() const { return parts[2]; }
  Matrix sum() const {
    Matrix s = Matrix::Zero(dim, dim);
    for (const Matrix& p : parts) s += p;
    return s;
  }
};

// Power-iteration estimate of the spectral radius.  The geometric mean of
// the last two growth factors also converges for matrices whose powers
// cycle with period two (e.g. odd-even alternation), where a single growth
// factor would oscillate.
inline double spectral_radius_estimate(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  if (d == 0 || m.cols() != d) throw argument_error("spectral_radius_estimate: square matrix required");
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(d, cxd(1.0, 0.0) / std::sqrt(double(d)));
  double r_prev = 0.0, r_cur = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = m * v;
    const double r = w.norm();
    if (!(r > 1e-300)) return 0.0;  // hit the kernel: radius indistinguishable from 0
    v = w / r;
    r_prev = r_cur;
    r_cur = r;
  }
  return std::sqrt(r_prev * r_cur);
}

// Seeded random split: each part gets independent uniform entries in
// [-1, 1] (real and imaginary), then all parts are scaled together so the
// sum has spectral radius estimate target_rho.  Same seed, same pair.
inline ContractionPair random_contraction(std::uint64_t seed, int dim, int n_parts,
                                          double target_rho) {
  if (dim < 1) throw argument_error("random_contraction: dimension must be positive");
  if (n_parts < 2 || n_parts > 3) throw argument_error("random_contraction: 2 or 3 parts");
  if (!(target_rho > 0.0 && target_rho < 1.0))
    throw argument_error("random_contraction: target spectral radius must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(-1.0, 1.0);
  ContractionPair pair;
  pair.dim = dim;
  pair.rho = target_rho;
  for (int p = 0; p < n_parts; ++p) {
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        const double re = coin(rng);
        const double im = coin(rng);
        m(r, c) = cxd(re, im);
      }
    pair.parts.push_back(std::move(m));
  }
  const double est = spectral_radius_estimate(pair.sum());
  if (!(est > 0.0)) throw argument_error("random_contraction: degenerate draw");
  const double scale = target_rho / est;
  for (Matrix& m : pair.parts) m *= scale;
  return pair;
}

inline ContractionPair scale_pair(const ContractionPair& pair, double factor) {
  ContractionPair out = pair;
  for (Matrix& m : out.parts) m *= factor;
  out.rho = pair.rho * factor;
  return out;
}

// ---------------------------------------------------------------------------
// Inversion helpers
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix inverse_of(const Matrix& m, const char* what) {
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible())
    throw singular_matrix(std::string(what) +
                          ": intermediate is numerically singular (rcond = " +
                          std::to_string(lu.rcond()) + ")");
  return lu.inverse();
}

inline Matrix resolvent_of(const Matrix& m, const char* what) {
  const Matrix eye = Matrix::Identity(m.rows(), m.cols());
  return inverse_of(eye - m, what);
}

inline double rel_residual(const Matrix& test, const Matrix& target) {
  return (test - target).norm() / target.norm();
}

// Least-squares slope of log10(dev) against log10(x).
inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& devs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log10(xs[static_cast<std::size_t>(i)]);
    const double y = std::log10(devs[static_cast<std::size_t>(i)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline const std::vector<double>& slope_lambdas() {
  static const std::vector<double> l = {0.5, 0.25, 0.125};
  return l;
}

}  // namespace detail

// Horner form of I + M + ... + M^order.
inline Matrix neumann_matrix_sum(const Matrix& m, int order) {
  if (order < 0) throw argument_error("neumann_matrix_sum: order must be non-negative");
  const Matrix eye = Matrix::Identity(m.rows(), m.cols());
  Matrix s = eye;
  for (int k = 0; k < order; ++k) s = m * s + eye;
  return s;
}

// ---------------------------------------------------------------------------
// Split identities
// ---------------------------------------------------------------------------

// (I - M_0 - M_1)^{-1} = R_1 (I - M_0 R_1)^{-1}; returns the relative residual.
inline double check_simple_split(const ContractionPair& pair) {
  if (pair.parts.size() != 2) throw argument_error("check_simple_split: need 2 parts");
  const Matrix r = detail::resolvent_of(pair.sum(), "check_simple_split");
  const Matrix r1 = detail::resolvent_of(pair.m1(), "check_simple_split");
  const Matrix eye = Matrix::Identity(pair.dim, pair.dim);
  const Matrix rhs = r1 * detail::inverse_of(eye - pair.m0() * r1, "check_simple_split");
  return detail::rel_residual(rhs, r);
}

// (I - M_0 - M_1)^{-1} = R_0 (I - M_1 R_1 M_0 R_0)^{-1} R_1.
inline double check_symmetric_split(const ContractionPair& pair) {
  if (pair.parts.size() != 2) throw argument_error("check_symmetric_split: need 2 parts");
  const Matrix r = detail::resolvent_of(pair.sum(), "check_symmetric_split");
  const Matrix r0 = detail::resolvent_of(pair.m0(), "check_symmetric_split");
  const Matrix r1 = detail::resolvent_of(pair.m1(), "check_symmetric_split");
  const Matrix eye = Matrix::Identity(pair.dim, pair.dim);
  const Matrix rhs =
      r0 * detail::inverse_of(eye - pair.m1() * r1 * pair.m0() * r0, "check_symmetric_split") * r1;
  return detail::rel_residual(rhs, r);
}

// Three-part nesting: resum parts 0 and 1 symmetrically into R_01, then
// apply the simple split to the pair (M_0 + M_1, M_2):
//   R = R_01 (I - M_2 R_2 (M_0 + M_1) R_01)^{-1} R_2.
inline double check_triframe_identity(const ContractionPair& pair) {
  if (pair.parts.size() != 3) throw argument_error("check_triframe_identity: need 3 parts");
  const Matrix r = detail::resolvent_of(pair.sum(), "check_triframe_identity");
  const Matrix r0 = detail::resolvent_of(pair.m0(), "check_triframe_identity");
  const Matrix r1 = detail::resolvent_of(pair.m1(), "check_triframe_identity");
  const Matrix r2 = detail::resolvent_of(pair.m2(), "check_triframe_identity");
  const Matrix eye = Matrix::Identity(pair.dim, pair.dim);
  const Matrix r01 =
      r0 * detail::inverse_of(eye - pair.m1() * r1 * pair.m0() * r0, "check_triframe_identity") *
      r1;
  const Matrix m01 = pair.m0() + pair.m1();
  const Matrix rhs =
      r01 * detail::inverse_of(eye - pair.m2() * r2 * m01 * r01, "check_triframe_identity") * r2;
  return detail::rel_residual(rhs, r);
}

// ---------------------------------------------------------------------------
// Even/odd factorizations and their truncation order
// ---------------------------------------------------------------------------

struct TrickReport {
  double residual = 0.0;  // worst of the exact-identity residuals
  double slope = 0.0;     // fitted deviation order of the truncated form
};

// (I - M)^{-1} = (I + M)(I - M^2)^{-1}, truncated form
// R^[m] = (I + M) sum_{k<=m} M^{2k}:
//   - identity residual of the closed form,
//   - polynomial identity R^[m] = sum_{k<=2m+1} M^k,
//   - deviation order of R^[m](lambda M) from the full resolvent: 2m + 2.
inline TrickReport check_square_trick(const Matrix& m, int order) {
  if (order < 0) throw argument_error("check_square_trick: order must be non-negative");
  const Matrix eye = Matrix::Identity(m.rows(), m.cols());
  const Matrix r = detail::resolvent_of(m, "check_square_trick");
  const Matrix closed =
      (eye + m) * detail::resolvent_of(Matrix(m * m), "check_square_trick");
  const double res_closed = detail::rel_residual(closed, r);

  const Matrix poly_left = (eye + m) * neumann_matrix_sum(m * m, order);
  const Matrix poly_right = neumann_matrix_sum(m, 2 * order + 1);
  const double res_poly =
      (poly_left - poly_right).norm() / std::max(1.0, poly_right.norm());

  std::vector<double> devs;
  for (double lambda : detail::slope_lambdas()) {
    const Matrix ml = lambda * m;
    const Matrix trunc = (eye + ml) * neumann_matrix_sum(ml * ml, order);
    devs.push_back((trunc - detail::resolvent_of(ml, "check_square_trick")).norm());
  }
  TrickReport report;
  report.residual = std::max(res_closed, res_poly);
  report.slope = detail::fit_slope(detail::slope_lambdas(), devs);
  return report;
}

// Cubic analogue: (I - M)^{-1} = (I + M + M^2)(I - M^3)^{-1}, truncation
// R^[m] = (I + M + M^2) sum_{k<=m} M^{3k} = sum_{k<=3m+2} M^k, deviation
// order 3m + 3.
inline TrickReport check_cube_trick(const Matrix& m, int order) {
  if (order < 0) throw argument_error("check_cube_trick: order must be non-negative");
  const Matrix eye = Matrix::Identity(m.rows(), m.cols());
  const Matrix m2 = m * m;
  const Matrix r = detail::resolvent_of(m, "check_cube_trick");
  const Matrix closed =
      (eye + m + m2) * detail::resolvent_of(Matrix(m2 * m), "check_cube_trick");
  const double res_closed = detail::rel_residual(closed, r);

  const Matrix poly_left = (eye + m + m2) * neumann_matrix_sum(m2 * m, order);
  const Matrix poly_right = neumann_matrix_sum(m, 3 * order + 2);
  const double res_poly =
      (poly_left - poly_right).norm() / std::max(1.0, poly_right.norm());

  std::vector<double> devs;
  for (double lambda : detail::slope_lambdas()) {
    const Matrix ml = lambda * m;
    const Matrix trunc = (eye + ml + ml * ml) * neumann_matrix_sum(Matrix(ml * ml * ml), order);
    devs.push_back((trunc - detail::resolvent_of(ml, "check_cube_trick")).norm());
  }
  TrickReport report;
  report.residual = std::max(res_closed, res_poly);
  report.slope = detail::fit_slope(detail::slope_lambdas(), devs);
  return report;
}

// ---------------------------------------------------------------------------
// Accelerated partial sums
// ---------------------------------------------------------------------------

// R^[m] = R_0 sum_{k<=m} (M_1 R_1 M_0 R_0)^k R_1, evaluated with m + 1
// matrix products beyond the fixed setup (part resolvents and the cycle
// matrix are independent of m).  Agrees with the plain expansion of
// (I - M_0 - M_1)^{-1} through combined order 2m + 1.  The number of
// counted products is reported through `products` when non-null.
inline Matrix accelerated_partial_sum(const ContractionPair& pair, int order,
                                      long* products = nullptr) {
  if (pair.parts.size() != 2) throw argument_error("accelerated_partial_sum: need 2 parts");
  if (order < 0) throw argument_error("accelerated_partial_sum: order must be non-negative");
  const Matrix r0 = detail::resolvent_of(pair.m0(), "accelerated_partial_sum");
  const Matrix r1 = detail::resolvent_of(pair.m1(), "accelerated_partial_sum");
  const Matrix cycle = pair.m1() * r1 * pair.m0() * r0;  // setup, not counted
  long count = 0;
  Matrix t = r1;  // Horner state: sum_{k<=j} cycle^k R_1
  for (int k = 0; k < order; ++k) {
    t = cycle * t + r1;
    ++count;
  }
  Matrix out = r0 * t;
  ++count;
  if (products) *products = count;
  return out;
}

// Deviation order of the accelerated sum from the plain partial sum of the
// same combined order: || R^[m](lambda) - sum_{k<=2m+1} (lambda M)^k ||
// scales as lambda^{2m+2}.
inline double accelerated_slope(const ContractionPair& pair, int order) {
  std::vector<double> devs;
  for (double lambda : detail::slope_lambdas()) {
    const ContractionPair scaled = scale_pair(pair, lambda);
    const Matrix accel = accelerated_partial_sum(scaled, order);
    const Matrix plain = neumann_matrix_sum(scaled.sum(), 2 * order + 1);
    devs.push_back((accel - plain).norm());
  }
  return detail::fit_slope(detail::slope_lambdas(), devs);
}

}  // namespace starframe
