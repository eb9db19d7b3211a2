#pragma once

// Frame-change assemblies built on the discrete product ring.
//
// A SplitGenerator carries a decomposition A = sum_p A_p together with, for
// each part, its propagator table U_p and its Green element
// G_p = (I_* - A_p Theta)^{-1}.  Green elements are always computed with
// exact_resolvent so they are ring inverses to roundoff regardless of
// whether the part propagators came from closed forms.
//
// The assemblies below evaluate the full propagator by resumming the
// remaining parts around one or more of the part frames:
//
//   single frame  U = U_1-frame resummation of A_0 (std_frame_U)
//   two frames    U = Theta * G_0 * (I - V11 * V00)^{-1} * G_1   ("blue")
//                 U = Theta * G_0 * G_1 * (I - V10 * V01)^{-1}   ("red")
//   three frames  nested two-frame assembly over ((A_0 + A_1), A_2)
//
// with V_ab = A_a Theta * G_b.  All compositions happen inside the ring, so
// algebraically equivalent assemblies agree to roundoff, not just to O(h^2).

#include <string>
#include <utility>
#include <vector>

#include "starframe/evolution.hpp"
#include "starframe/metrics.hpp"
#include "starframe/resolvent.hpp"
#include "starframe/star_ops.hpp"

namespace starframe {

// ---------------------------------------------------------------------------
// SplitGenerator
// ---------------------------------------------------------------------------

struct SplitGenerator {
  GridPtr grid;
  int dim = 0;
  bool unitary = false;  // part propagators are unitary (inverse == adjoint)
  std::vector<Generator> parts;
  std::vector<EvolutionTable> part_evolutions;
  std::vector<StarElement> part_greens;

  int n_parts() const { return static_cast<int>(parts.size()); }
};

namespace detail {

inline void validate_parts(const std::vector<Generator>& parts) {
  if (parts.empty()) throw argument_error("make_split: need at least one part");
  for (const Generator& p : parts) {
    if (!p.grid) throw argument_error("make_split: part has no grid");
    require_same_grid(parts.front().grid, p.grid, "make_split");
    if (p.dim != parts.front().dim) throw mismatch_error("make_split: part dimension mismatch");
  }
}

}  // namespace detail

// Builds a split whose part propagators are integrated from the discrete
// Green elements themselves.
inline SplitGenerator make_split(std::vector<Generator> parts, bool unitary = false) {
  detail::validate_parts(parts);
  SplitGenerator s;
  s.grid = parts.front().grid;
  s.dim = parts.front().dim;
  s.unitary = unitary;
  s.parts = std::move(parts);
  for (const Generator& p : s.parts) {
    s.part_greens.push_back(exact_resolvent(from_generator(p)));
    s.part_evolutions.push_back(evolution_from_green(s.part_greens.back()));
  }
  return s;
}

// Builds a split with externally supplied part propagators (typically closed
// forms).  Green elements are still computed discretely so that they remain
// exact ring inverses.
inline SplitGenerator make_split(std::vector<Generator> parts,
                                 std::vector<EvolutionTable> part_evolutions,
                                 bool unitary = false) {
  detail::validate_parts(parts);
  if (part_evolutions.size() != parts.size())
    throw mismatch_error("make_split: one propagator table per part required");
  for (const EvolutionTable& t : part_evolutions) {
    require_same_grid(parts.front().grid, t.grid, "make_split");
    if (t.dim != parts.front().dim)
      throw mismatch_error("make_split: propagator dimension mismatch");
  }
  SplitGenerator s;
  s.grid = parts.front().grid;
  s.dim = parts.front().dim;
  s.unitary = unitary;
  s.parts = std::move(parts);
  s.part_evolutions = std::move(part_evolutions);
  for (const Generator& p : s.parts) s.part_greens.push_back(exact_resolvent(from_generator(p)));
  return s;
}

inline SplitGenerator permute_split(const SplitGenerator& s, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != s.n_parts())
    throw argument_error("permute_split: order must list every part once");
  SplitGenerator r;
  r.grid = s.grid;
  r.dim = s.dim;
  r.unitary = s.unitary;
  std::vector<bool> seen(order.size(), false);
  for (int idx : order) {
    if (idx < 0 || idx >= s.n_parts() || seen[static_cast<std::size_t>(idx)])
      throw argument_error("permute_split: order must list every part once");
    seen[static_cast<std::size_t>(idx)] = true;
    r.parts.push_back(s.parts[static_cast<std::size_t>(idx)]);
    r.part_evolutions.push_back(s.part_evolutions[static_cast<std::size_t>(idx)]);
    r.part_greens.push_back(s.part_greens[static_cast<std::size_t>(idx)]);
  }
  return r;
}

// Largest kernel-block norm of (I - A_p Theta) * G_p - I_* over all parts;
// near roundoff by construction.
inline double max_green_residual(const SplitGenerator& s) {
  double worst = 0.0;
  for (int p = 0; p < s.n_parts(); ++p) {
    StarElement one_minus = element_scale(from_generator(s.parts[static_cast<std::size_t>(p)]),
                                          cxd(-1.0, 0.0));
    add_unit_in_place(one_minus);
    StarElement left = star_product(one_minus, s.part_greens[static_cast<std::size_t>(p)]);
    if (left.has_theta) worst = std::max(worst, left.theta_part.max_block_norm());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

namespace detail {

inline const Generator& part(const SplitGenerator& s, int p) {
  return s.parts[static_cast<std::size_t>(p)];
}
inline const StarElement& green(const SplitGenerator& s, int p) {
  return s.part_greens[static_cast<std::size_t>(p)];
}
inline const EvolutionTable& evo(const SplitGenerator& s, int p) {
  return s.part_evolutions[static_cast<std::size_t>(p)];
}

inline void require_parts(const SplitGenerator& s, int n, const char* what) {
  if (s.n_parts() != n)
    throw argument_error(std::string(what) + ": split must have exactly " + std::to_string(n) +
                         " parts");
}

inline std::vector<Matrix> univariate_samples(const EvolutionTable& t) {
  std::vector<Matrix> v;
  v.reserve(static_cast<std::size_t>(t.nodes()));
  for (int i = 0; i < t.nodes(); ++i) v.push_back(t.u(i));
  return v;
}

inline std::vector<Matrix> invert_samples(const std::vector<Matrix>& v, bool unitary,
                                          const char* what) {
  std::vector<Matrix> inv;
  inv.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (unitary) {
      inv.push_back(v[i].adjoint());
    } else {
      Eigen::FullPivLU<Matrix> lu(v[i]);
      if (!lu.isInvertible())
        throw singular_matrix(std::string(what) + ": frame propagator is singular at node " +
                              std::to_string(i));
      inv.push_back(lu.inverse());
    }
  }
  return inv;
}

// V_ab = A_a Theta * G_b; the left factor is row-constant, so this is an
// O(n^2) product.
inline StarElement v_element(const SplitGenerator& s, int a, int b) {
  return star_product(from_generator(part(s, a)), green(s, b));
}

inline Generator sum_generator(const SplitGenerator& s) {
  Generator g(s.grid, s.dim);
  const int n = g.samples.count();
  for (int i = 0; i < n; ++i) {
    Matrix acc = Matrix::Zero(s.dim, s.dim);
    for (const Generator& p : s.parts) acc += p.samples.map(i);
    g.samples.map(i) = acc;
  }
  return g;
}

// Generator with samples V^{-1}(t_i) A_other(t_i) V(t_i): the remaining
// dynamics as seen from the frame of part `frame_part`.
inline Generator rotated_remainder(const SplitGenerator& s, int frame_part) {
  require_parts(s, 2, "std frame");
  const int other = 1 - frame_part;
  if (frame_part != 0 && frame_part != 1)
    throw argument_error("std frame: frame part must be 0 or 1");
  std::vector<Matrix> v = univariate_samples(evo(s, frame_part));
  std::vector<Matrix> vinv = invert_samples(v, s.unitary, "std frame");
  Generator g(s.grid, s.dim);
  for (int i = 0; i < g.samples.count(); ++i)
    g.samples.map(i) = vinv[static_cast<std::size_t>(i)] *
                       part(s, other).samples.map(i) * v[static_cast<std::size_t>(i)];
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-frame assembly
// ---------------------------------------------------------------------------

// Pure kernel of the frame-rotated remainder: F_ij = V^{-1}(t_i) A_0(t_i) V(t_i)
// where V is the propagator of `frame_part` (default: part 1).
inline StarElement std_frame_operator(const SplitGenerator& s, int frame_part = 1) {
  return from_generator(detail::rotated_remainder(s, frame_part));
}

// Full propagator via the single-frame resummation: integrate the resolvent
// of the rotated remainder, then undo the rotation node-wise.
inline EvolutionTable std_frame_U(const SplitGenerator& s, int frame_part = 1) {
  StarElement op = std_frame_operator(s, frame_part);
  EvolutionTable inner = evolution_from_green(exact_resolvent(op));
  std::vector<Matrix> v = detail::univariate_samples(detail::evo(s, frame_part));
  std::vector<Matrix> vinv = detail::invert_samples(v, s.unitary, "std_frame_U");
  return conjugate_table(inner, v, vinv);
}

// ---------------------------------------------------------------------------
// Two-frame assembly
// ---------------------------------------------------------------------------

enum class BiframeForm { blue, red };

struct BiframeOperator {
  GridPtr grid;
  int dim = 0;
  BlockTriangle kernel;  // B(t_i, t_j), i >= j; diagonal exactly zero
};

// Explicit two-frame kernel via its quadrature reduction
//
//   blue: B(t,s) = A_1(t) U_1(t) [ int_s^t U_1^{-1} A_0 U_0 dtau ] U_0^{-1}(s)
//   red:  B(t,s) = A_1(t) U_0(t) [ int_s^t U_0^{-1} A_0 U_1 dtau ] U_1^{-1}(s)
//
// using the trapezoid prefix of the bracketed integrand, so B_jj = 0 exactly.
inline BiframeOperator biframe_operator(const SplitGenerator& s,
                                        BiframeForm form = BiframeForm::blue) {
  detail::require_parts(s, 2, "biframe_operator");
  const int n = static_cast<int>(s.grid->n_points);
  const int d = s.dim;
  const double h = s.grid->step;

  const int left_frame = form == BiframeForm::blue ? 1 : 0;    // U inside the prefactor
  const int right_frame = 1 - left_frame;                      // U closing the bracket

  std::vector<Matrix> ul = detail::univariate_samples(detail::evo(s, left_frame));
  std::vector<Matrix> ur = detail::univariate_samples(detail::evo(s, right_frame));
  std::vector<Matrix> ul_inv = detail::invert_samples(ul, s.unitary, "biframe_operator");
  std::vector<Matrix> ur_inv = detail::invert_samples(ur, s.unitary, "biframe_operator");

  std::vector<Matrix> lead(static_cast<std::size_t>(n));    // A_1(t) U_left(t)
  std::vector<Matrix> prefix(static_cast<std::size_t>(n));  // running trapezoid of the bracket
  Matrix integrand_prev;
  for (int i = 0; i < n; ++i) {
    const Matrix a0 = detail::part(s, 0).samples.map(i);
    const Matrix a1 = detail::part(s, 1).samples.map(i);
    lead[static_cast<std::size_t>(i)] = a1 * ul[static_cast<std::size_t>(i)];
    Matrix integrand = ul_inv[static_cast<std::size_t>(i)] * a0 * ur[static_cast<std::size_t>(i)];
    if (i == 0)
      prefix[0] = Matrix::Zero(d, d);
    else
      prefix[static_cast<std::size_t>(i)] =
          prefix[static_cast<std::size_t>(i - 1)] + 0.5 * h * (integrand_prev + integrand);
    integrand_prev = std::move(integrand);
  }

  BiframeOperator op;
  op.grid = s.grid;
  op.dim = d;
  op.kernel = BlockTriangle(n, d);
  parallel_for(n, [&](int j) {
    for (int i = j + 1; i < n; ++i) {  // diagonal stays exactly zero
      Matrix b = lead[static_cast<std::size_t>(i)] *
                 (prefix[static_cast<std::size_t>(i)] - prefix[static_cast<std::size_t>(j)]) *
                 ur_inv[static_cast<std::size_t>(j)];
      op.kernel.map(i, j) = b;
    }
  });
  return op;
}

inline StarElement element_from_kernel(const BiframeOperator& op) {
  StarElement x = StarElement::make(op.grid, op.dim, DeltaKind::zero, true);
  const int n = x.nodes();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) blk::copy(x.theta_part.block(i, j), op.kernel.block(i, j), x.dim);
  return x;
}

// Full propagator via the two-frame resummation, composed entirely in the
// ring:  blue  U = Theta * G_0 * (I - V11 * V00)^{-1} * G_1
//        red   U = Theta * G_0 * G_1 * (I - V10 * V01)^{-1}.
inline EvolutionTable biframe_U(const SplitGenerator& s, BiframeForm form = BiframeForm::blue) {
  detail::require_parts(s, 2, "biframe_U");
  if (form == BiframeForm::blue) {
    StarElement inner = star_product(detail::v_element(s, 1, 1), detail::v_element(s, 0, 0));
    StarElement res = exact_resolvent(inner);
    StarElement w = star_product(star_product(detail::green(s, 0), res), detail::green(s, 1));
    return evolution_from_green(w);
  }
  StarElement inner = star_product(detail::v_element(s, 1, 0), detail::v_element(s, 0, 1));
  StarElement res = exact_resolvent(inner);
  StarElement w = star_product(star_product(detail::green(s, 0), detail::green(s, 1)), res);
  return evolution_from_green(w);
}

// ---------------------------------------------------------------------------
// Three-frame assembly
// ---------------------------------------------------------------------------

// Nested two-frame assembly: resum parts 0 and 1 into their joint Green
// element, then treat (A_0 + A_1, A_2) as a two-part split.  The joint
// kernel (A_0 + A_1) Theta * G_01 is assembled from part quantities only:
//
//   G_01 = G_0 * (I - V11 * V00)^{-1} * G_1
//   (A_0 + A_1) Theta * G_01 = V00 * Ra * G_1 + V11 * Rb * G_0
//
// with Ra = (I - V11 * V00)^{-1} and Rb = (I - V00 * V11)^{-1}; the two
// orderings are the resummations of G_01 written leading with part 0 and
// part 1 respectively.
inline EvolutionTable triframe_U(const SplitGenerator& s) {
  detail::require_parts(s, 3, "triframe_U");
  StarElement v00 = detail::v_element(s, 0, 0);
  StarElement v11 = detail::v_element(s, 1, 1);
  StarElement ra = exact_resolvent(star_product(v11, v00));
  StarElement rb = exact_resolvent(star_product(v00, v11));
  StarElement inner = element_add(
      star_product(star_product(v00, ra), detail::green(s, 1)),
      star_product(star_product(v11, rb), detail::green(s, 0)));
  StarElement rc = exact_resolvent(star_product(detail::v_element(s, 2, 2), inner));
  StarElement w = star_product(
      star_product(star_product(star_product(detail::green(s, 0), ra), detail::green(s, 1)), rc),
      detail::green(s, 2));
  return evolution_from_green(w);
}

// ---------------------------------------------------------------------------
// Truncated expansions
// ---------------------------------------------------------------------------

enum class Frame { lab, std, biframe };

// Order-m truncation of the chosen expansion:
//
//   lab      U^[m] = Theta * sum_{k<=m} (A Theta)^k
//   std      U^[m] = V . [ Theta * sum_{k<=m} (A~ Theta)^k ] . V^{-1},
//            A~ = V^{-1} A_other V  (remainder seen from frame `std_part`)
//   biframe  U^[m] = Theta * G_0 * sum_{k<=m} (V11 * V00)^k * G_1
//
// All three reduce to the exact pipelines as m grows.
inline EvolutionTable dyson_truncated(const SplitGenerator& s, Frame frame, int m,
                                      int std_part = 1) {
  if (m < 0) throw argument_error("dyson_truncated: order must be non-negative");
  switch (frame) {
    case Frame::lab: {
      StarElement x = from_generator(detail::sum_generator(s));
      return evolution_from_green(neumann_partial_sum(x, m));
    }
    case Frame::std: {
      detail::require_parts(s, 2, "dyson_truncated");
      StarElement x = from_generator(detail::rotated_remainder(s, std_part));
      EvolutionTable inner = evolution_from_green(neumann_partial_sum(x, m));
      std::vector<Matrix> v = detail::univariate_samples(detail::evo(s, std_part));
      std::vector<Matrix> vinv = detail::invert_samples(v, s.unitary, "dyson_truncated");
      return conjugate_table(inner, v, vinv);
    }
    case Frame::biframe: {
      detail::require_parts(s, 2, "dyson_truncated");
      StarElement inner = star_product(detail::v_element(s, 1, 1), detail::v_element(s, 0, 0));
      StarElement sum = neumann_partial_sum(inner, m);
      StarElement w =
          star_product(star_product(detail::green(s, 0), sum), detail::green(s, 1));
      return evolution_from_green(w);
    }
  }
  throw argument_error("dyson_truncated: unknown frame");
}

// Sum of all alternating products of the part derivative elements
// Udot_p = A_p Theta * G_p up to word length m:
//
//   S_m = sum_{L=1..m} sum_{alternating words p1 != p2 != ... != pL}
//         Udot_{p1} * ... * Udot_{pL}
//
// I_* + S_m converges to the Green element of the full generator; the sum
// is symmetric under swapping the two parts by construction.
inline StarElement udot_alternating_series(const SplitGenerator& s, int m) {
  detail::require_parts(s, 2, "udot_alternating_series");
  if (m < 1) throw argument_error("udot_alternating_series: need at least one word length");
  StarElement v00 = detail::v_element(s, 0, 0);
  StarElement v11 = detail::v_element(s, 1, 1);
  StarElement cur0 = v00;  // longest-so-far word starting with part 0
  StarElement cur1 = v11;
  StarElement total = element_add(cur0, cur1);
  for (int len = 2; len <= m; ++len) {
    StarElement next0 = star_product(v00, cur1);
    StarElement next1 = star_product(v11, cur0);
    total = element_add(total, element_add(next0, next1));
    cur0 = std::move(next0);
    cur1 = std::move(next1);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Order sweeps (first-column pipelines)
// ---------------------------------------------------------------------------
//
// Convergence studies need U^[m](t, t_start) for a whole range of orders.
// Since only the first column of each truncation is required, the sweeps
// below advance the order with column-restricted applications: O(n^2) per
// order instead of O(n^3).

namespace detail {

// Propagator samples from the first column of a Green-like element:
// U_i = Id + trapezoid of the kernel column (delta part must be the unit).
inline std::vector<Matrix> evolution_from_column(const ThetaColumn& col) {
  const int n = col.nodes();
  const int d = col.dim;
  const double h = col.grid->step;
  if (col.delta_kind != DeltaKind::identity) {
    if (col.delta_kind != DeltaKind::general ||
        (col.delta0 - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
      throw argument_error("evolution_from_column: multiplicative part must be the identity");
  }
  std::vector<Matrix> u(static_cast<std::size_t>(n));
  u[0] = Matrix::Identity(d, d);
  Matrix acc = 0.5 * col.theta0(0);  // lower endpoint keeps half weight throughout
  for (int i = 1; i < n; ++i) {
    if (i > 1) acc += 0.5 * col.theta0(i - 1);  // promote old upper endpoint to interior
    acc += 0.5 * col.theta0(i);
    u[static_cast<std::size_t>(i)] = Matrix::Identity(d, d) + h * acc;
  }
  return u;
}

inline void add_unit_to_column(ThetaColumn& col) {
  if (col.delta_kind == DeltaKind::zero) {
    col.delta_kind = DeltaKind::identity;
  } else if (col.delta_kind == DeltaKind::identity) {
    col.delta_kind = DeltaKind::general;
    col.delta0 = 2.0 * Matrix::Identity(col.dim, col.dim);
  } else {
    col.delta0 += Matrix::Identity(col.dim, col.dim);
  }
}

}  // namespace detail

// Per-order propagator samples of the lab truncations for m = 0..max_order.
inline std::vector<std::vector<Matrix>> sweep_lab(const SplitGenerator& s, int max_order) {
  if (max_order < 0) throw argument_error("sweep_lab: order must be non-negative");
  StarElement x = from_generator(detail::sum_generator(s));
  std::vector<std::vector<Matrix>> out;
  ThetaColumn partial = column_unit(s.grid, s.dim);  // Horner state: column of sum_{k<=m} X^k
  out.push_back(detail::evolution_from_column(partial));
  for (int m = 1; m <= max_order; ++m) {
    partial = apply_to_column(x, partial);
    detail::add_unit_to_column(partial);
    out.push_back(detail::evolution_from_column(partial));
  }
  return out;
}

// Per-order propagator samples of the single-frame truncations.
inline std::vector<std::vector<Matrix>> sweep_std(const SplitGenerator& s, int max_order,
                                                  int std_part = 1) {
  if (max_order < 0) throw argument_error("sweep_std: order must be non-negative");
  StarElement x = from_generator(detail::rotated_remainder(s, std_part));
  std::vector<Matrix> v = detail::univariate_samples(detail::evo(s, std_part));
  Matrix v0 = v[0];
  std::vector<Matrix> vinv0 = detail::invert_samples({v0}, s.unitary, "sweep_std");
  std::vector<std::vector<Matrix>> out;
  ThetaColumn partial = column_unit(s.grid, s.dim);
  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) {
      partial = apply_to_column(x, partial);
      detail::add_unit_to_column(partial);
    }
    std::vector<Matrix> u = detail::evolution_from_column(partial);
    for (int i = 0; i < static_cast<int>(u.size()); ++i)
      u[static_cast<std::size_t>(i)] =
          v[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)] * vinv0[0];
    out.push_back(std::move(u));
  }
  return out;
}

// Per-order propagator samples of the two-frame truncations.
inline std::vector<std::vector<Matrix>> sweep_biframe(const SplitGenerator& s, int max_order) {
  if (max_order < 0) throw argument_error("sweep_biframe: order must be non-negative");
  detail::require_parts(s, 2, "sweep_biframe");
  StarElement v00 = detail::v_element(s, 0, 0);
  StarElement v11 = detail::v_element(s, 1, 1);
  ThetaColumn g1_col = column_zero(detail::green(s, 1));  // unit delta comes with it
  ThetaColumn term = g1_col;  // (V11 V00)^k applied to G_1's column
  ThetaColumn sum = g1_col;
  std::vector<std::vector<Matrix>> out;
  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) {
      term = apply_to_column(v11, apply_to_column(v00, term));
      column_accumulate(sum, term);
    }
    ThetaColumn w = apply_to_column(detail::green(s, 0), sum);
    out.push_back(detail::evolution_from_column(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ring-form partial sums (deviation-order probes)
// ---------------------------------------------------------------------------

// Single-frame partial sum composed purely inside the ring:
//   U^[j] = Theta * G_1 * sum_{k<=j} (A_0 Theta * G_1)^k.
inline std::vector<Matrix> split_partial_sum_univariate(const SplitGenerator& s, int order,
                                                        int frame_part = 1) {
  detail::require_parts(s, 2, "split_partial_sum_univariate");
  if (order < 0) throw argument_error("split_partial_sum_univariate: negative order");
  const int other = 1 - frame_part;
  StarElement x =
      star_product(from_generator(detail::part(s, other)), detail::green(s, frame_part));
  ThetaColumn partial = column_unit(s.grid, s.dim);
  for (int k = 0; k < order; ++k) {
    partial = apply_to_column(x, partial);
    detail::add_unit_to_column(partial);
  }
  ThetaColumn w = apply_to_column(detail::green(s, frame_part), partial);
  return detail::evolution_from_column(w);
}

// Two-frame partial sum composed purely inside the ring:
//   U^[m] = Theta * G_0 * sum_{k<=m} (V11 * V00)^k * G_1.
inline std::vector<Matrix> symmetric_partial_sum_univariate(const SplitGenerator& s, int order) {
  detail::require_parts(s, 2, "symmetric_partial_sum_univariate");
  if (order < 0) throw argument_error("symmetric_partial_sum_univariate: negative order");
  StarElement v00 = detail::v_element(s, 0, 0);
  StarElement v11 = detail::v_element(s, 1, 1);
  ThetaColumn g1_col = column_zero(detail::green(s, 1));
  ThetaColumn term = g1_col;
  ThetaColumn sum = g1_col;
  for (int k = 1; k <= order; ++k) {
    term = apply_to_column(v11, apply_to_column(v00, term));
    column_accumulate(sum, term);
  }
  ThetaColumn w = apply_to_column(detail::green(s, 0), sum);
  return detail::evolution_from_column(w);
}

// A copy of the split with every part scaled by `factor`; part propagators
// and Green elements are rebuilt discretely for the scaled dynamics.
inline SplitGenerator scaled_split(const SplitGenerator& s, double factor) {
  std::vector<Generator> parts;
  parts.reserve(static_cast<std::size_t>(s.n_parts()));
  for (const Generator& p : s.parts) {
    Generator q(p.grid, p.dim);
    for (int i = 0; i < q.samples.count(); ++i) q.samples.map(i) = factor * p.samples.map(i);
    parts.push_back(std::move(q));
  }
  return make_split(std::move(parts), s.unitary);
}

}  // namespace starframe
