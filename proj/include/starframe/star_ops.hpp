#pragma once

// Product, powers and partial sums for discrete two-time elements.
//
// For elements X = D^X delta + F^X Theta and Y = D^Y delta + F^Y Theta on a
// uniform grid with step h, the product Z = X * Y has
//
//   D^Z_i  = D^X_i D^Y_i
//   F^Z_ij = D^X_i F^Y_ij + F^X_ij D^Y_j + Q_ij                 (i >= j)
//
// where Q is the trapezoid discretization of the kernel convolution
// integral over [t_j, t_i]:
//
//   Q_ij = h [ 1/2 F^X_ij F^Y_jj + sum_{j<k<i} F^X_ik F^Y_kj
//              + 1/2 F^X_ii F^Y_ij ]                            (i > j)
//   Q_jj = (h/2) F^X_jj F^Y_jj
//
// The diagonal rule makes the map
//
//   T(X)_ik = D^X_i delta_ik + w(i,k) F^X_ik,
//   w(i,k) = h (k < i), h/2 (k = i), 0 (k > i)
//
// an exact isomorphism onto the algebra of block lower-triangular matrices.
// Consequently products are associative to roundoff (not merely to O(h^2)),
// partial sums telescope exactly, and the inverse computed in resolvent.hpp
// is a true two-sided ring inverse.  The h -> 0 limit of any fixed product
// reproduces the continuum convolution with the usual trapezoid O(h^2) error.
//
// Cost: O(n^3 d^3) generally; O(n^2 d^3) when the left kernel is constant
// along rows (F^X_ik == F^X_i0 bitwise), the shape produced by
// from_generator and theta_element.  Both paths accumulate each column with
// ascending k, so results are bitwise independent of thread count, and
// translation-invariant inputs yield translation-invariant outputs bitwise.

#include <vector>

#include "starframe/parallel.hpp"
#include "starframe/star_element.hpp"

namespace starframe {

namespace detail {

// Quadrature part of column j, generic kernels.  acc(i) must return the
// accumulation target for row i and ycol(k) the block F^Y_kj.
template <class YCol, class Acc>
void convolve_column(const BlockTriangle& fx, int j, int n, int d, double h, YCol&& ycol,
                     Acc&& acc) {
  const double hh = 0.5 * h;
  for (int i = j; i < n; ++i) {
    cxd* out = acc(i);
    for (int k = j; k <= i; ++k)
      blk::mac(out, fx.block(i, k), ycol(k), d, (k == j || k == i) ? hh : h);
  }
}

// Quadrature part of column j when F^X is constant along rows: maintains the
// running trapezoid T_i = 1/2 F^Y_jj + sum_{j<k<i} F^Y_kj + 1/2 F^Y_ij and
// emits Q_ij = h F^X_i. T_i.  Values agree with the generic path to roundoff
// (the summation is associated differently), and within this path each
// column adds the same block sequence per row offset, so translation
// invariance of the inputs is preserved bitwise.
template <class YCol, class Acc>
void convolve_column_row_constant(const BlockTriangle& fx, int j, int n, int d, double h,
                                  YCol&& ycol, Acc&& acc, std::vector<cxd>& scratch) {
  scratch.assign(static_cast<std::size_t>(d) * d, cxd(0.0, 0.0));
  cxd* t = scratch.data();
  blk::axpy(t, ycol(j), 0.5, d);  // lower endpoint: half weight, permanently
  blk::mac(acc(j), fx.block(j, j), t, d, h);
  for (int i = j + 1; i < n; ++i) {
    if (i > j + 1) blk::axpy(t, ycol(i - 1), 0.5, d);  // old upper endpoint becomes interior
    blk::axpy(t, ycol(i), 0.5, d);                     // new upper endpoint: half weight
    blk::mac(acc(i), fx.block(i, i), t, d, h);
  }
}

}  // namespace detail

inline StarElement star_product(const StarElement& x, const StarElement& y) {
  detail::require_compatible(x, y, "star_product");
  const int n = x.nodes();
  const int d = x.dim;
  const double h = x.grid->step;

  const bool x_delta = x.delta_kind != DeltaKind::zero;
  const bool y_delta = y.delta_kind != DeltaKind::zero;
  const bool both_theta = x.has_theta && y.has_theta;
  const bool out_theta = (x_delta && y.has_theta) || (x.has_theta && y_delta) || both_theta;

  DeltaKind out_kind = DeltaKind::zero;
  if (x_delta && y_delta) {
    if (x.delta_kind == DeltaKind::identity && y.delta_kind == DeltaKind::identity)
      out_kind = DeltaKind::identity;
    else
      out_kind = DeltaKind::general;
  }

  StarElement r = StarElement::make(x.grid, d, out_kind, out_theta);

  if (out_kind == DeltaKind::general) {
    for (int i = 0; i < n; ++i) {
      if (x.delta_kind == DeltaKind::identity)
        blk::copy(r.delta_part.block(i), y.delta_part.block(i), d);
      else if (y.delta_kind == DeltaKind::identity)
        blk::copy(r.delta_part.block(i), x.delta_part.block(i), d);
      else
        blk::mul(r.delta_part.block(i), x.delta_part.block(i), y.delta_part.block(i), d);
    }
  }

  if (!out_theta) return r;

  const bool fast = both_theta && detail::row_constant_kernel(x);

  parallel_for_scratch(n, [&](int j, std::vector<cxd>& scratch) {
    // Multiplicative-part contributions to column j.
    for (int i = j; i < n; ++i) {
      cxd* out = r.theta_part.block(i, j);
      if (x_delta && y.has_theta) {
        if (x.delta_kind == DeltaKind::identity)
          blk::add(out, y.theta_part.block(i, j), d);
        else
          blk::mac(out, x.delta_part.block(i), y.theta_part.block(i, j), d);
      }
      if (x.has_theta && y_delta) {
        if (y.delta_kind == DeltaKind::identity)
          blk::add(out, x.theta_part.block(i, j), d);
        else
          blk::mac(out, x.theta_part.block(i, j), y.delta_part.block(j), d);
      }
    }
    if (!both_theta) return;
    auto ycol = [&](int k) { return y.theta_part.block(k, j); };
    auto acc = [&](int i) { return r.theta_part.block(i, j); };
    if (fast)
      detail::convolve_column_row_constant(x.theta_part, j, n, d, h, ycol, acc, scratch);
    else
      detail::convolve_column(x.theta_part, j, n, d, h, ycol, acc);
  });
  return r;
}

// ---------------------------------------------------------------------------
// Sums, scalar multiples, unit injection
// ---------------------------------------------------------------------------

inline StarElement element_add(const StarElement& x, const StarElement& y) {
  detail::require_compatible(x, y, "element_add");
  const int n = x.nodes();
  const int d = x.dim;
  const bool out_theta = x.has_theta || y.has_theta;
  DeltaKind out_kind;
  if (x.delta_kind == DeltaKind::zero)
    out_kind = y.delta_kind;
  else if (y.delta_kind == DeltaKind::zero)
    out_kind = x.delta_kind;
  else
    out_kind = DeltaKind::general;  // both present: materialize the sum
  StarElement r = StarElement::make(x.grid, d, out_kind, out_theta);
  if (out_kind == DeltaKind::general) {
    for (int i = 0; i < n; ++i) {
      Matrix s = x.delta_block(i) + y.delta_block(i);
      blk::copy(r.delta_part.block(i), s.data(), d);
    }
  }
  if (out_theta) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        cxd* out = r.theta_part.block(i, j);
        if (x.has_theta) blk::add(out, x.theta_part.block(i, j), d);
        if (y.has_theta) blk::add(out, y.theta_part.block(i, j), d);
      }
  }
  return r;
}

inline StarElement element_scale(const StarElement& x, cxd s) {
  StarElement r = x;
  if (r.delta_kind == DeltaKind::identity) {
    r.delta_kind = DeltaKind::general;
    r.delta_part = BlockDiag(r.nodes(), r.dim);
    for (int i = 0; i < r.nodes(); ++i) blk::set_identity(r.delta_part.block(i), r.dim);
  }
  if (r.delta_kind == DeltaKind::general)
    for (int i = 0; i < r.nodes(); ++i) blk::scale(r.delta_part.block(i), s, r.dim);
  if (r.has_theta)
    for (int i = 0; i < r.nodes(); ++i)
      for (int j = 0; j <= i; ++j) blk::scale(r.theta_part.block(i, j), s, r.dim);
  return r;
}

// In-place X := I_* + X (adds the product unit to the multiplicative part).
inline void add_unit_in_place(StarElement& x) {
  switch (x.delta_kind) {
    case DeltaKind::zero:
      x.delta_kind = DeltaKind::identity;
      break;
    case DeltaKind::identity: {
      x.delta_kind = DeltaKind::general;
      x.delta_part = BlockDiag(x.nodes(), x.dim);
      for (int i = 0; i < x.nodes(); ++i) {
        blk::set_identity(x.delta_part.block(i), x.dim);
        blk::scale(x.delta_part.block(i), cxd(2.0, 0.0), x.dim);
      }
      break;
    }
    case DeltaKind::general:
      for (int i = 0; i < x.nodes(); ++i) {
        cxd* b = x.delta_part.block(i);
        for (int k = 0; k < x.dim; ++k) b[k * x.dim + k] += cxd(1.0, 0.0);
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Powers and truncated geometric series
// ---------------------------------------------------------------------------

inline StarElement star_power(const StarElement& x, int k) {
  if (k < 0) throw argument_error("star_power: exponent must be non-negative");
  if (k == 0) return identity_element(x.grid, x.dim);
  StarElement p = x;
  for (int step = 1; step < k; ++step) p = star_product(x, p);
  return p;
}

// Horner form of I_* + X + X^2 + ... + X^m, using exactly m products.
inline StarElement neumann_partial_sum(const StarElement& x, int m) {
  if (m < 0) throw argument_error("neumann_partial_sum: order must be non-negative");
  StarElement s = identity_element(x.grid, x.dim);
  for (int step = 0; step < m; ++step) {
    s = star_product(x, s);
    add_unit_in_place(s);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Column-restricted application
// ---------------------------------------------------------------------------
//
// The first column of a product depends only on the first column of the
// right factor, so propagator sweeps that ultimately evaluate U(t, t_start)
// can run in O(n^2 d^3) per applied factor.  ThetaColumn holds column 0 of
// an element: the kernel blocks (i, 0) plus the node-0 multiplicative block.

struct ThetaColumn {
  GridPtr grid;
  int dim = 0;
  DeltaKind delta_kind = DeltaKind::zero;
  Matrix delta0;              // node-0 multiplicative block when general
  std::vector<cxd> blocks;    // kernel blocks (i, 0), contiguous

  int nodes() const { return static_cast<int>(grid->n_points); }
  cxd* block(int i) { return blocks.data() + static_cast<std::size_t>(i) * dim * dim; }
  const cxd* block(int i) const {
    return blocks.data() + static_cast<std::size_t>(i) * dim * dim;
  }
  Matrix theta0(int i) const { return ConstMatrixMap(block(i), dim, dim); }
};

inline ThetaColumn column_zero(const StarElement& x) {
  ThetaColumn c;
  c.grid = x.grid;
  c.dim = x.dim;
  c.delta_kind = x.delta_kind;
  if (x.delta_kind == DeltaKind::general) c.delta0 = x.delta_part.map(0);
  c.blocks.assign(static_cast<std::size_t>(x.nodes()) * x.dim * x.dim, cxd(0.0, 0.0));
  if (x.has_theta)
    for (int i = 0; i < x.nodes(); ++i) blk::copy(c.block(i), x.theta_part.block(i, 0), x.dim);
  return c;
}

inline ThetaColumn column_unit(const GridPtr& grid, int dim) {
  ThetaColumn c;
  c.grid = grid;
  c.dim = dim;
  c.delta_kind = DeltaKind::identity;
  c.blocks.assign(static_cast<std::size_t>(grid->n_points) * dim * dim, cxd(0.0, 0.0));
  return c;
}

// Column 0 of X * Y, given column 0 of Y.  Identical arithmetic to the
// j = 0 column of the full product.
inline ThetaColumn apply_to_column(const StarElement& x, const ThetaColumn& y) {
  if (!x.grid || !y.grid) throw argument_error("apply_to_column: missing grid");
  require_same_grid(*x.grid, *y.grid, "apply_to_column");
  if (x.dim != y.dim) throw mismatch_error("apply_to_column: dimension mismatch");
  const int n = x.nodes();
  const int d = x.dim;
  const double h = x.grid->step;

  ThetaColumn r = column_unit(x.grid, d);
  r.delta_kind = DeltaKind::zero;

  const bool x_delta = x.delta_kind != DeltaKind::zero;
  const bool y_delta = y.delta_kind != DeltaKind::zero;

  if (x_delta && y_delta) {
    if (x.delta_kind == DeltaKind::identity && y.delta_kind == DeltaKind::identity) {
      r.delta_kind = DeltaKind::identity;
    } else {
      r.delta_kind = DeltaKind::general;
      Matrix dx = x.delta_block(0);
      Matrix dy = y.delta_kind == DeltaKind::identity ? Matrix::Identity(d, d) : y.delta0;
      r.delta0 = dx * dy;
    }
  }

  for (int i = 0; i < n; ++i) {
    cxd* out = r.block(i);
    if (x_delta) {
      if (x.delta_kind == DeltaKind::identity)
        blk::add(out, y.block(i), d);
      else
        blk::mac(out, x.delta_part.block(i), y.block(i), d);
    }
    if (x.has_theta && y_delta) {
      if (y.delta_kind == DeltaKind::identity)
        blk::add(out, x.theta_part.block(i, 0), d);
      else {
        Matrix dy = y.delta0;
        blk::mac(out, x.theta_part.block(i, 0), dy.data(), d);
      }
    }
  }
  if (x.has_theta) {
    auto ycol = [&](int k) { return y.block(k); };
    auto acc = [&](int i) { return r.block(i); };
    detail::convolve_column(x.theta_part, 0, n, d, h, ycol, acc);
  }
  return r;
}

inline void column_accumulate(ThetaColumn& into, const ThetaColumn& from) {
  if (into.dim != from.dim || into.nodes() != from.nodes())
    throw mismatch_error("column_accumulate: shape mismatch");
  for (int i = 0; i < into.nodes(); ++i) blk::add(into.block(i), from.block(i), into.dim);
  if (from.delta_kind != DeltaKind::zero) {
    Matrix add = from.delta_kind == DeltaKind::identity
                     ? Matrix::Identity(from.dim, from.dim)
                     : from.delta0;
    if (into.delta_kind == DeltaKind::zero) {
      into.delta_kind = DeltaKind::general;
      into.delta0 = add;
    } else {
      Matrix cur = into.delta_kind == DeltaKind::identity
                       ? Matrix::Identity(into.dim, into.dim)
                       : into.delta0;
      into.delta_kind = DeltaKind::general;
      into.delta0 = cur + add;
    }
  }
}

}  // namespace starframe
