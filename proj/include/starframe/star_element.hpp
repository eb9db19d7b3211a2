#pragma once

// Sampled generators and the discrete two-time elements they generate.
//
// A discrete element represents, on a uniform grid, an object of the form
//
//     c(t) delta(t - s)  +  f(t, s) Theta(t - s)
//
// i.e. a multiplicative part `delta_part` (one d x d block per node) plus a
// causal integral kernel `theta_part` (one d x d block per ordered node pair
// i >= j).  The convolution-style product of two such elements is implemented
// in star_ops.hpp; everything downstream (resolvents, evolution tables,
// frame assemblies) is built from this representation.

#include <cmath>
#include <functional>
#include <utility>

#include "starframe/block_storage.hpp"
#include "starframe/errors.hpp"
#include "starframe/grid.hpp"

namespace starframe {

// ---------------------------------------------------------------------------
// Generator: a matrix-valued function of time sampled on grid nodes.
// ---------------------------------------------------------------------------

struct Generator {
  GridPtr grid;
  int dim = 0;
  BlockDiag samples;  // samples.block(i) = A(t_i)

  Generator() = default;
  Generator(GridPtr g, int d) : grid(std::move(g)), dim(d), samples(static_cast<int>(grid->n_points), d) {}
};

using GeneratorFn = std::function<Matrix(double)>;

// Samples `fn` at every node.  Throws argument_error if any sample has the
// wrong shape or a non-finite entry.
inline Generator sample_generator(const GridPtr& grid, int dim, const GeneratorFn& fn) {
  if (!grid) throw argument_error("sample_generator: null grid");
  if (dim < 1) throw argument_error("sample_generator: dimension must be positive");
  Generator gen(grid, dim);
  const int n = gen.samples.count();
  for (int i = 0; i < n; ++i) {
    Matrix a = fn(grid->node(i));
    if (a.rows() != dim || a.cols() != dim)
      throw argument_error("sample_generator: sample has wrong shape");
    if (!a.allFinite())
      throw argument_error("sample_generator: sample has non-finite entries");
    gen.samples.map(i) = a;
  }
  return gen;
}

// ---------------------------------------------------------------------------
// StarElement
// ---------------------------------------------------------------------------

// Structural tag for the multiplicative part.  Tracking "exactly zero" and
// "exactly identity" symbolically keeps products bitwise exact in the common
// cases (pure kernels, Green-function elements) and skips dead arithmetic.
enum class DeltaKind { zero, identity, general };

struct StarElement {
  GridPtr grid;
  int dim = 0;
  DeltaKind delta_kind = DeltaKind::zero;
  BlockDiag delta_part;      // only meaningful when delta_kind == general
  bool has_theta = false;
  BlockTriangle theta_part;  // blocks (i, j) for i >= j; only when has_theta

  StarElement() = default;

  static StarElement make(GridPtr g, int d, DeltaKind kind, bool with_theta) {
    if (!g) throw argument_error("StarElement: null grid");
    if (d < 1) throw argument_error("StarElement: dimension must be positive");
    StarElement x;
    x.grid = std::move(g);
    x.dim = d;
    x.delta_kind = kind;
    if (kind == DeltaKind::general) x.delta_part = BlockDiag(static_cast<int>(x.grid->n_points), d);
    x.has_theta = with_theta;
    if (with_theta) x.theta_part = BlockTriangle(static_cast<int>(x.grid->n_points), d);
    return x;
  }

  int nodes() const { return static_cast<int>(grid->n_points); }

  // Materialized delta block at node i (identity/zero kinds expanded).
  Matrix delta_block(int i) const {
    Matrix m = Matrix::Zero(dim, dim);
    if (delta_kind == DeltaKind::identity) m.setIdentity();
    else if (delta_kind == DeltaKind::general) m = delta_part.map(i);
    return m;
  }

  Matrix theta_block(int i, int j) const {
    if (!has_theta) return Matrix::Zero(dim, dim);
    return theta_part.map(i, j);
  }
};

// The unit of the product: delta part identity, no kernel.
inline StarElement identity_element(const GridPtr& grid, int dim) {
  return StarElement::make(grid, dim, DeltaKind::identity, false);
}

// The causal step kernel: F_ij = Id for every i >= j, no delta part.
inline StarElement theta_element(const GridPtr& grid, int dim) {
  StarElement x = StarElement::make(grid, dim, DeltaKind::zero, true);
  const int n = x.nodes();
  const int d = x.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) blk::set_identity(x.theta_part.block(i, j), d);
  return x;
}

// Embeds a generator as a pure kernel: F_ij = A(t_i) for every j <= i.
// (This is the sampled form of A(t) Theta(t - s).)
inline StarElement from_generator(const Generator& gen) {
  if (!gen.grid) throw argument_error("from_generator: generator has no grid");
  StarElement x = StarElement::make(gen.grid, gen.dim, DeltaKind::zero, true);
  const int n = x.nodes();
  const int d = x.dim;
  for (int i = 0; i < n; ++i) {
    const cxd* a = gen.samples.block(i);
    for (int j = 0; j <= i; ++j) blk::copy(x.theta_part.block(i, j), a, d);
  }
  return x;
}

namespace detail {

inline void require_compatible(const StarElement& x, const StarElement& y, const char* what) {
  if (!x.grid || !y.grid) throw argument_error(std::string(what) + ": element has no grid");
  require_same_grid(*x.grid, *y.grid, what);
  if (x.dim != y.dim) throw mismatch_error(std::string(what) + ": dimension mismatch");
}

// True when every kernel row is constant along its columns, i.e. the block
// (i, j) is bitwise equal to (i, 0) for all j.  Elements built by
// from_generator and theta_element have this shape, which enables an O(n^2)
// product path (see star_ops.hpp).
inline bool row_constant_kernel(const StarElement& x) {
  if (!x.has_theta) return false;
  const int n = x.nodes();
  const std::size_t bs = static_cast<std::size_t>(x.dim) * x.dim;
  for (int i = 1; i < n; ++i) {
    const cxd* first = x.theta_part.block(i, 0);
    for (int j = 1; j <= i; ++j) {
      const cxd* b = x.theta_part.block(i, j);
      for (std::size_t k = 0; k < bs; ++k)
        if (b[k] != first[k]) return false;
    }
  }
  return true;
}

}  // namespace detail

}  // namespace starframe
