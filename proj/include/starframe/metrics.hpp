#pragma once

// Time-averaged infidelity between a reference propagator and a computed one.
//
// For propagators U_r(t) (reference) and U(t) (under test), the pointwise
// normalized overlap is
//
//   F(t) = Tr(U_r(t)^dag U(t)) / sqrt( Tr(U_r^dag U_r) Tr(U^dag U) )
//
// and the reported error is the trapezoid average of 1 - Re F over the
// horizon:  epsilon = (1/T) integral (1 - Re F(t)) dt.  The imaginary part
// of F carries no fidelity information but is made available through the
// optional out-parameter so callers can confirm it stays at noise level.
//
// Both trace norms must be positive at every node; a vanishing norm leaves
// the overlap undefined and raises undefined_metric.

#include <cmath>
#include <string>
#include <vector>

#include "starframe/evolution.hpp"
#include "starframe/reference.hpp"

namespace starframe {

namespace detail {

inline double epsilon_from_samples(const ReferenceSolution& ref,
                                   const std::vector<Matrix>& test, const TimeGrid& grid,
                                   double* imag_out) {
  const int n = grid.n_points;
  const double t_total = grid.t_end - grid.t_start;
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix& ur = ref.u_ref[static_cast<std::size_t>(i)];
    const Matrix& ut = test[static_cast<std::size_t>(i)];
    const double nr = ur.squaredNorm();  // Tr(U_r^dag U_r)
    const double nt = ut.squaredNorm();  // Tr(U^dag U)
    if (!(nr > 0.0) || !(nt > 0.0))
      throw undefined_metric("epsilon_error: zero-norm propagator at node " + std::to_string(i));
    const cxd overlap = (ur.adjoint() * ut).trace() / std::sqrt(nr * nt);
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc_re += w * (1.0 - overlap.real());
    acc_im += w * overlap.imag();
  }
  const double h = grid.step;
  if (imag_out) *imag_out = acc_im * h / t_total;
  return acc_re * h / t_total;
}

}  // namespace detail

inline double epsilon_error(const ReferenceSolution& ref, const EvolutionTable& table,
                            double* imag_out = nullptr) {
  if (!ref.grid || !table.grid) throw argument_error("epsilon_error: missing grid");
  require_same_grid(ref.grid, table.grid, "epsilon_error");
  if (ref.dim != table.dim) throw mismatch_error("epsilon_error: dimension mismatch");
  std::vector<Matrix> test;
  test.reserve(static_cast<std::size_t>(table.nodes()));
  for (int i = 0; i < table.nodes(); ++i) test.push_back(table.u(i));
  return detail::epsilon_from_samples(ref, test, *ref.grid, imag_out);
}

// Overload for propagators held as plain node samples (truncated-series
// sweeps produce these without materializing a full table).
inline double epsilon_error(const ReferenceSolution& ref, const std::vector<Matrix>& samples,
                            double* imag_out = nullptr) {
  if (!ref.grid) throw argument_error("epsilon_error: missing grid");
  if (static_cast<int>(samples.size()) != ref.grid->n_points)
    throw mismatch_error("epsilon_error: one sample per node required");
  return detail::epsilon_from_samples(ref, samples, *ref.grid, imag_out);
}

}  // namespace starframe
