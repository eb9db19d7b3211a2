#pragma once

// Two-time propagator tables and their extraction from Green elements.
//
// An EvolutionTable stores U(t_i, t_j) for all i >= j plus the first column
// U(t_i, t_start).  Diagonal entries are the identity exactly (set, not
// computed).  Tables come from three sources: integrating a Green element
// (evolution_from_green), sampling a closed-form one-parameter family
// (table_from_univariate), or conjugating an existing table node-wise
// (conjugate_table).

#include <utility>
#include <vector>

#include <Eigen/LU>

#include "starframe/parallel.hpp"
#include "starframe/star_element.hpp"

namespace starframe {

struct EvolutionTable {
  GridPtr grid;
  int dim = 0;
  BlockTriangle bivariate;  // U(t_i, t_j), i >= j
  BlockDiag univariate;     // U(t_i, t_start)

  EvolutionTable() = default;
  EvolutionTable(GridPtr g, int d)
      : grid(std::move(g)),
        dim(d),
        bivariate(static_cast<int>(grid->n_points), d),
        univariate(static_cast<int>(grid->n_points), d) {}

  int nodes() const { return static_cast<int>(grid->n_points); }
  Matrix u(int i, int j) const { return bivariate.map(i, j); }
  Matrix u(int i) const { return univariate.map(i); }
};

// Integrates a Green element G = delta + K Theta into the propagator table
//
//   U(t_i, t_j) = Id + h [ 1/2 K_jj + sum_{j<k<i} K_kj + 1/2 K_ij ]   (i > j)
//   U(t_j, t_j) = Id                                                  (exact)
//
// Requires the multiplicative part of G to be the identity (symbolically, or
// entrywise within 1e-12); anything else indicates the argument is not a
// Green element and raises argument_error.
inline EvolutionTable evolution_from_green(const StarElement& g) {
  if (!g.grid) throw argument_error("evolution_from_green: element has no grid");
  const int n = g.nodes();
  const int d = g.dim;
  if (g.delta_kind == DeltaKind::zero)
    throw argument_error("evolution_from_green: multiplicative part must be the identity");
  if (g.delta_kind == DeltaKind::general) {
    for (int i = 0; i < n; ++i) {
      Matrix diff = g.delta_part.map(i) - Matrix::Identity(d, d);
      if (diff.cwiseAbs().maxCoeff() > 1e-12)
        throw argument_error(
            "evolution_from_green: multiplicative part deviates from the identity");
    }
  }
  const double h = g.grid->step;
  EvolutionTable table(g.grid, d);

  if (!g.has_theta) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) blk::set_identity(table.bivariate.block(i, j), d);
  } else {
    const BlockTriangle& k = g.theta_part;
    parallel_for_scratch(n, [&](int j, std::vector<cxd>& scratch) {
      blk::set_identity(table.bivariate.block(j, j), d);
      scratch.assign(static_cast<std::size_t>(d) * d, cxd(0.0, 0.0));
      cxd* acc = scratch.data();
      blk::axpy(acc, k.block(j, j), 0.5, d);  // lower endpoint: half weight throughout
      for (int i = j + 1; i < n; ++i) {
        if (i > j + 1) blk::axpy(acc, k.block(i - 1, j), 0.5, d);  // promote to interior
        blk::axpy(acc, k.block(i, j), 0.5, d);                     // new upper endpoint
        cxd* out = table.bivariate.block(i, j);
        blk::set_identity(out, d);
        blk::axpy(out, acc, h, d);
      }
    });
  }
  for (int i = 0; i < n; ++i) blk::copy(table.univariate.block(i), table.bivariate.block(i, 0), d);
  return table;
}

// Builds the table of a one-parameter family U(t): U(t_i, t_j) = U_i U_j^{-1}.
// With `unitary` set the inverse is the adjoint; otherwise each node sample
// is LU-factorized and a singular sample raises singular_matrix.
inline EvolutionTable table_from_univariate(const GridPtr& grid,
                                            const std::vector<Matrix>& samples,
                                            bool unitary) {
  if (!grid) throw argument_error("table_from_univariate: null grid");
  const int n = static_cast<int>(grid->n_points);
  if (static_cast<int>(samples.size()) != n)
    throw mismatch_error("table_from_univariate: one sample per node required");
  const int d = static_cast<int>(samples.front().rows());
  for (const Matrix& s : samples)
    if (s.rows() != d || s.cols() != d || !s.allFinite())
      throw argument_error("table_from_univariate: malformed sample");

  std::vector<Matrix> inv(n);
  for (int i = 0; i < n; ++i) {
    if (unitary) {
      inv[i] = samples[i].adjoint();
    } else {
      Eigen::FullPivLU<Matrix> lu(samples[i]);
      if (!lu.isInvertible())
        throw singular_matrix("table_from_univariate: sample at node " + std::to_string(i) +
                              " is not invertible");
      inv[i] = lu.inverse();
    }
  }
  EvolutionTable table(grid, d);
  parallel_for(n, [&](int j) {
    blk::set_identity(table.bivariate.block(j, j), d);
    for (int i = j + 1; i < n; ++i) table.bivariate.map(i, j) = samples[i] * inv[j];
  });
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      blk::set_identity(table.univariate.block(0), d);
    else
      blk::copy(table.univariate.block(i), table.bivariate.block(i, 0), d);
  }
  return table;
}

// Node-wise similarity transform: result(i, j) = V_i inner(i, j) W_j.
// Passing W_j = V_j^{-1} turns a table computed in a rotating frame back
// into the original frame.
inline EvolutionTable conjugate_table(const EvolutionTable& inner, const std::vector<Matrix>& v,
                                      const std::vector<Matrix>& w) {
  const int n = inner.nodes();
  const int d = inner.dim;
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n)
    throw mismatch_error("conjugate_table: one transform per node required");
  EvolutionTable table(inner.grid, d);
  parallel_for(n, [&](int j) {
    blk::set_identity(table.bivariate.block(j, j), d);  // V_j W_j = Id by contract
    for (int i = j + 1; i < n; ++i) table.bivariate.map(i, j) = v[i] * inner.u(i, j) * w[j];
  });
  blk::set_identity(table.univariate.block(0), d);
  for (int i = 1; i < n; ++i) table.univariate.map(i) = v[i] * inner.u(i) * w[0];
  return table;
}

}  // namespace starframe
