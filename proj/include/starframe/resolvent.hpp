#pragma once

// Exact inverse of (I_* - X) in the discrete product ring.
//
// For a pure-kernel element X (zero multiplicative part), the resolvent
// G = (I_* - X)^{-1} exists iff every node matrix I - (h/2) F_ii is
// invertible, and G = I_* + K where the kernel K solves K = X + X * K.
// Writing out the product column by column gives a forward substitution:
//
//   (I - (h/2) F_jj) K_jj = F_jj
//   (I - (h/2) F_ii) K_ij = F_ij + (h/2) F_ij K_jj
//                           + h sum_{j<k<i} F_ik K_kj          (i > j)
//
// Because the discrete product is an exact matrix-algebra isomorphism
// (see star_ops.hpp), the result is a true two-sided inverse to roundoff:
// (I_* - X) * G = G * (I_* - X) = I_*.  Columns are independent and each is
// accumulated with ascending k, so the output is bitwise independent of the
// thread schedule.

#include <string>
#include <vector>

#include <Eigen/LU>

#include "starframe/parallel.hpp"
#include "starframe/star_element.hpp"

namespace starframe {

inline StarElement exact_resolvent(const StarElement& x) {
  if (!x.grid) throw argument_error("exact_resolvent: element has no grid");
  if (x.delta_kind != DeltaKind::zero)
    throw argument_error("exact_resolvent: element must have zero multiplicative part");
  const int n = x.nodes();
  const int d = x.dim;
  const double h = x.grid->step;

  StarElement g = StarElement::make(x.grid, d, DeltaKind::identity, true);
  if (!x.has_theta) return g;  // resolvent of the zero element is the unit

  // Node-diagonal factors I - (h/2) F_ii, factorized once.
  std::vector<Eigen::FullPivLU<Matrix>> lu;
  lu.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix m = Matrix::Identity(d, d) - 0.5 * h * x.theta_part.map(i, i);
    lu.emplace_back(m);
    if (!lu.back().isInvertible())
      throw step_too_large("exact_resolvent: I - (h/2) F(t,t) is singular at node " +
                           std::to_string(i) + " (t = " + std::to_string(x.grid->node(i)) +
                           "); refine the grid so the step is below the local inverse "
                           "kernel scale");
  }

  const BlockTriangle& f = x.theta_part;
  parallel_for_scratch(n, [&](int j, std::vector<cxd>& scratch) {
    scratch.assign(static_cast<std::size_t>(d) * d, cxd(0.0, 0.0));
    cxd* rhs = scratch.data();
    MatrixMap rhs_map(rhs, d, d);

    g.theta_part.map(j, j) = lu[j].solve(f.map(j, j));
    for (int i = j + 1; i < n; ++i) {
      blk::copy(rhs, f.block(i, j), d);
      blk::mac(rhs, f.block(i, j), g.theta_part.block(j, j), d, 0.5 * h);
      for (int k = j + 1; k < i; ++k)
        blk::mac(rhs, f.block(i, k), g.theta_part.block(k, j), d, h);
      g.theta_part.map(i, j) = lu[i].solve(rhs_map);
    }
  });
  return g;
}

}  // namespace starframe
