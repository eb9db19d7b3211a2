#pragma once

// Independent reference propagator: classical fourth-order Runge-Kutta on
// U'(t) = A(t) U(t), U(t_start) = Id, evaluated at every grid node.
//
// The solver runs twice, once with `substeps` sub-intervals per grid step
// and once with twice as many.  The doubled run is returned as the
// reference; the maximum node-wise relative deviation between the two runs
// is the error estimate (a run-to-run comparison, so it measures the
// integrator itself, not the discretized product machinery being tested
// against it).

#include <utility>
#include <vector>

#include "starframe/star_element.hpp"

namespace starframe {

struct ReferenceSolution {
  GridPtr grid;
  int dim = 0;
  std::vector<Matrix> u_ref;  // one propagator per node, u_ref[0] = Id
  double est_error = 0.0;     // max relative node deviation between the two runs
  bool warning = false;       // est_error above 1e-10: treat comparisons with care

  Matrix u(int i) const { return u_ref[static_cast<std::size_t>(i)]; }
};

namespace detail {

inline std::vector<Matrix> rk4_run(const GeneratorFn& gen, const TimeGrid& grid, int dim,
                                   int substeps) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(grid.n_points));
  Matrix u = Matrix::Identity(dim, dim);
  out.push_back(u);
  for (int i = 0; i + 1 < grid.n_points; ++i) {
    const double hh = (grid.node(i + 1) - grid.node(i)) / substeps;
    double t = grid.node(i);
    for (int s = 0; s < substeps; ++s) {
      const Matrix k1 = gen(t) * u;
      const Matrix k2 = gen(t + 0.5 * hh) * (u + 0.5 * hh * k1);
      const Matrix k3 = gen(t + 0.5 * hh) * (u + 0.5 * hh * k2);
      const Matrix k4 = gen(t + hh) * (u + hh * k3);
      u += (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = grid.node(i) + (s + 1) * hh;
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace detail

inline ReferenceSolution rk_reference(const GeneratorFn& gen, const GridPtr& grid, int dim,
                                      int substeps) {
  if (!grid) throw argument_error("rk_reference: null grid");
  if (dim < 1) throw argument_error("rk_reference: dimension must be positive");
  if (substeps < 1) throw argument_error("rk_reference: need at least one substep");

  std::vector<Matrix> coarse = detail::rk4_run(gen, *grid, dim, substeps);
  std::vector<Matrix> fine = detail::rk4_run(gen, *grid, dim, 2 * substeps);

  double err = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double scale = std::max(1.0, fine[i].norm());
    err = std::max(err, (coarse[i] - fine[i]).norm() / scale);
  }
  ReferenceSolution ref;
  ref.grid = grid;
  ref.dim = dim;
  ref.u_ref = std::move(fine);
  ref.est_error = err;
  ref.warning = err > 1e-10;
  return ref;
}

}  // namespace starframe
