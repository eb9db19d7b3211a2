// End-to-end acceptance gates.  Each numbered criterion prints exactly one
// [PASS]/[FAIL] verdict line followed by indented measurement details; the
// process exit code is the number of failed criteria.  Tolerances are pinned
// here and are not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "starframe/starframe.hpp"

using namespace starframe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
};

double max_dev(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

double table_max_dev(const EvolutionTable& a, const EvolutionTable& b) {
  double worst = 0.0;
  for (int i = 0; i < a.nodes(); ++i)
    for (int j = 0; j <= i; ++j)
      worst = std::max(worst, (a.u(i, j) - b.u(i, j)).cwiseAbs().maxCoeff());
  return worst;
}

bool elements_bitwise(const StarElement& x, const StarElement& y) {
  if (x.delta_kind != y.delta_kind || x.has_theta != y.has_theta) return false;
  const std::size_t bs = sizeof(cxd) * x.dim * x.dim;
  if (x.delta_kind == DeltaKind::general)
    for (int i = 0; i < x.nodes(); ++i)
      if (std::memcmp(x.delta_part.block(i), y.delta_part.block(i), bs) != 0) return false;
  if (x.has_theta)
    for (int i = 0; i < x.nodes(); ++i)
      for (int j = 0; j <= i; ++j)
        if (std::memcmp(x.theta_part.block(i, j), y.theta_part.block(i, j), bs) != 0)
          return false;
  return true;
}

// Direct route: invert the summed generator in one go.
EvolutionTable direct_lab(const SplitGenerator& s) {
  return evolution_from_green(exact_resolvent(from_generator(detail::sum_generator(s))));
}

// Smooth dense element whose kernel varies with both time arguments.
StarElement dense_element(const GridPtr& grid, int d, double shift, bool with_delta) {
  StarElement x =
      StarElement::make(grid, d, with_delta ? DeltaKind::general : DeltaKind::zero, true);
  for (int i = 0; i < x.nodes(); ++i) {
    const double t = grid->node(i);
    if (with_delta) {
      MatrixMap m(x.delta_part.block(i), d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          m(r, c) = cxd(0.3 * std::cos(t + shift + r), 0.2 * std::sin(2.0 * t - c));
    }
    for (int j = 0; j <= i; ++j) {
      const double s = grid->node(j);
      MatrixMap m(x.theta_part.block(i, j), d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          m(r, c) = cxd(std::sin(t + 0.4 * s + shift + 0.3 * r - 0.2 * c),
                        std::cos(0.8 * t - s + 0.1 * r * c + shift));
    }
  }
  return x;
}

// Kernel depending only on t - s, so the product must reduce to a discrete
// convolution.
StarElement invariant_element(const GridPtr& grid, int d, double a, double b) {
  StarElement x = StarElement::make(grid, d, DeltaKind::zero, true);
  for (int i = 0; i < x.nodes(); ++i)
    for (int j = 0; j <= i; ++j) {
      MatrixMap m(x.theta_part.block(i, j), d, d);
      const double u = (i - j) * grid->step;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = cxd(std::cos(a * u + r), std::sin(b * u - c));
    }
  return x;
}

// Smooth non-commuting parts shared by the split-based criteria.
GeneratorFn part_fn(int which) {
  switch (which) {
    case 0:
      return [](double t) -> Matrix {
        return Matrix(cxd(0.0, -1.0) * (0.9 + 0.3 * std::sin(t)) * pauli::z());
      };
    case 1:
      return [](double t) -> Matrix {
        return Matrix(cxd(0.0, -1.0) * 1.1 * std::cos(2.0 * t) * pauli::x());
      };
    default:
      return [](double t) -> Matrix {
        return Matrix(cxd(0.0, -1.0) * 0.5 * std::sin(1.3 * t) * pauli::y());
      };
  }
}

SplitGenerator smooth_split(const GridPtr& g, int n_parts) {
  std::vector<Generator> parts;
  for (int p = 0; p < n_parts; ++p) parts.push_back(sample_generator(g, 2, part_fn(p)));
  return make_split(std::move(parts), /*unitary=*/true);
}

// Adaptive-quadrature values of the phase-weighted drive integrals at the
// default example parameters, frozen from an independent oracle run.
const cxd kS20(5.20380857298300858e-01, 2.91463230500590309e-01);
const cxd kC20(6.72886427314103974e-01, -1.00900110811786670e+00);
const cxd kS1505(1.55456293400323020e-01, 1.16292108407053660e-01);
const cxd kC1505(6.27792773654763381e-01, -3.56624525966050376e-01);

// ---------------------------------------------------------------------------
// Criterion 1: seeded random split identities at matrix level.
Outcome c1_identities() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::uint64_t counter = 0;
  for (int trial = 0; trial < 100; ++trial)
    for (int dim : {2, 4, 8})
      for (double rho : {0.5, 0.9}) {
        const std::uint64_t seed = 20240901u + counter++;
        const ContractionPair pair2 = random_contraction(seed, dim, 2, rho);
        const ContractionPair pair3 = random_contraction(seed, dim, 3, rho);
        worst = std::max({worst, check_simple_split(pair2), check_symmetric_split(pair2),
                          check_triframe_identity(pair3)});
      }
  const double elapsed = seconds_since(t0);

  Outcome out;
  out.pass = worst <= 1e-11 && elapsed <= 10.0;
  out.details.push_back(
      fmt("100 trials x dims {2,4,8} x radii {0.5,0.9}, three identities per cell"));
  out.details.push_back(fmt("max relative residual %.3e (bound 1.0e-11)", worst));
  out.details.push_back(fmt("elapsed %.2f s (budget 10 s)", elapsed));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2: acceleration order of the squared- and cubed-argument series.
Outcome c2_acceleration() {
  Outcome out;
  const ContractionPair pair = random_contraction(20240901u, 4, 2, 0.5);
  const Matrix m_sum = pair.sum();

  for (int m : {1, 2}) {
    const TrickReport sq = check_square_trick(m_sum, m);
    const double slope = accelerated_slope(pair, m);
    const double target = 2.0 * m + 2.0;
    const bool ok = sq.residual <= 1e-13 && std::abs(slope - target) <= 0.2;
    out.pass = out.pass && ok;
    out.details.push_back(
        fmt("square step m=%d: polynomial residual %.3e (bound 1e-13), accelerated-sum "
            "slope %.3f (target %.0f +/- 0.2)%s",
            m, sq.residual, slope, target, ok ? "" : "  <-- FAIL"));
  }
  for (int m : {0, 1}) {
    const TrickReport cu = check_cube_trick(m_sum, m);
    const double target = 3.0 * m + 3.0;
    const bool ok = cu.residual <= 1e-13 && std::abs(cu.slope - target) <= 0.2;
    out.pass = out.pass && ok;
    out.details.push_back(
        fmt("cube step m=%d: polynomial residual %.3e (bound 1e-13), slope %.3f "
            "(target %.0f +/- 0.2)%s",
            m, cu.residual, cu.slope, target, ok ? "" : "  <-- FAIL"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: every exact frame pipeline reproduces the reference evolution
// on the example grid.
Outcome c3_frame_equivalence() {
  const auto t0 = Clock::now();
  RabiParams p;  // example defaults, N = 601
  const SplitGenerator two = rabi_split(p);
  const SplitGenerator three = rabi_split_three(p);
  const ReferenceSolution ref = rk_reference(rabi_generator(p), two.grid, 2, 20);

  const EvolutionTable blue = biframe_U(two, BiframeForm::blue);
  const EvolutionTable red = biframe_U(two, BiframeForm::red);
  const double e_lab = epsilon_error(ref, direct_lab(two));
  const double e_std = epsilon_error(ref, std_frame_U(two));
  const double e_blue = epsilon_error(ref, blue);
  const double e_red = epsilon_error(ref, red);
  const double e_tri = epsilon_error(ref, triframe_U(three));

  double dev = 0.0, scale = 0.0;
  for (int i = 0; i < blue.nodes(); ++i)
    for (int j = 0; j <= i; ++j) {
      dev = std::max(dev, (blue.u(i, j) - red.u(i, j)).cwiseAbs().maxCoeff());
      scale = std::max(scale, blue.u(i, j).cwiseAbs().maxCoeff());
    }
  const double rel = dev / scale;
  const double elapsed = seconds_since(t0);

  Outcome out;
  out.pass = e_lab <= 1e-4 && e_std <= 1e-4 && e_blue <= 1e-4 && e_red <= 1e-4 &&
             e_tri <= 1e-4 && rel <= 1e-8 && elapsed <= 60.0;
  out.details.push_back(fmt("infidelity vs reference (bound 1.0e-4): direct %.3e, "
                            "single-frame %.3e, two-frame %.3e/%.3e, three-frame %.3e",
                            e_lab, e_std, e_blue, e_red, e_tri));
  out.details.push_back(fmt("two-frame assembly forms agree to %.3e relative (bound 1.0e-8)", rel));
  out.details.push_back(fmt("elapsed %.2f s (budget 60 s)", elapsed));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: structure of the truncation-order convergence curves.
Outcome c4_curve_structure() {
  RabiParams p;  // example defaults, N = 601
  const int top = 13;
  const SplitGenerator s = rabi_split(p);
  const ReferenceSolution ref = rk_reference(rabi_generator(p), s.grid, 2, 20);

  auto eps_of = [&ref](const std::vector<std::vector<Matrix>>& sweep) {
    std::vector<double> eps;
    for (const auto& u : sweep) eps.push_back(epsilon_error(ref, u));
    return eps;
  };
  const std::vector<double> e_lab = eps_of(sweep_lab(s, top));
  const std::vector<double> e_std = eps_of(sweep_std(s, top, 1));
  const std::vector<double> e_bif = eps_of(sweep_biframe(s, top));
  const double f_std = *std::min_element(e_std.begin(), e_std.end());
  const double f_bif = *std::min_element(e_bif.begin(), e_bif.end());

  Outcome out;
  out.details.push_back("  m    direct-lab   single-frame   two-frame");
  for (int m = 0; m <= top; ++m)
    out.details.push_back(fmt(" %2d    %.3e    %.3e    %.3e", m, e_lab[static_cast<std::size_t>(m)],
                              e_std[static_cast<std::size_t>(m)],
                              e_bif[static_cast<std::size_t>(m)]));
  out.details.push_back(
      fmt("discretization floors: single-frame %.3e, two-frame %.3e", f_std, f_bif));

  // (a) Strict improvement at equal truncation order for m = 1..6, skipping
  // orders already at a curve's discretization floor.
  std::string fails_a;
  for (int m = 1; m <= 6; ++m) {
    const auto um = static_cast<std::size_t>(m);
    if (e_bif[um] < 2.0 * f_bif || e_std[um] < 2.0 * f_std) continue;
    if (!(e_bif[um] < e_std[um]))
      fails_a += fmt(" m=%d (%.3e vs %.3e)", m, e_bif[um], e_std[um]);
  }
  out.pass = out.pass && fails_a.empty();
  out.details.push_back("two-frame below single-frame at equal order (m = 1..6 above floor): " +
                        (fails_a.empty() ? std::string("holds") : "FAILS at" + fails_a));

  // (b) Order-m two-frame value pairs with the order-(2m+1) single-frame
  // value to within half a decade, same floor eligibility.
  std::string fails_b;
  for (int m = 1; m <= 6; ++m) {
    const auto um = static_cast<std::size_t>(m);
    const auto uk = static_cast<std::size_t>(2 * m + 1);
    if (e_bif[um] < 2.0 * f_bif || e_std[uk] < 2.0 * f_std) continue;
    const double gap = std::abs(std::log10(e_bif[um]) - std::log10(e_std[uk]));
    if (gap > 0.5) fails_b += fmt(" m=%d (gap %.2f)", m, gap);
  }
  out.pass = out.pass && fails_b.empty();
  out.details.push_back(
      "order-m two-frame within 0.5 decades of order-(2m+1) single-frame (above floor): " +
      (fails_b.empty() ? std::string("holds") : "FAILS at" + fails_b));

  // (c) The direct-lab curve lies above the single-frame curve everywhere.
  std::string fails_c;
  for (int m = 0; m <= top; ++m)
    if (!(e_lab[static_cast<std::size_t>(m)] > e_std[static_cast<std::size_t>(m)]))
      fails_c += fmt(" m=%d", m);
  out.pass = out.pass && fails_c.empty();
  out.details.push_back("direct-lab curve above single-frame curve at every order: " +
                        (fails_c.empty() ? std::string("holds") : "FAILS at" + fails_c));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: constant generator split into constant parts — assembled
// two-frame route equals the directly inverted pipeline.
Outcome c5_constant_generator() {
  auto g = make_grid(2.0, 201);
  std::vector<Generator> parts;
  parts.push_back(
      sample_generator(g, 2, [](double) -> Matrix { return Matrix(cxd(0, -0.7) * pauli::z()); }));
  parts.push_back(
      sample_generator(g, 2, [](double) -> Matrix { return Matrix(cxd(0, -0.4) * pauli::x()); }));
  const SplitGenerator s = make_split(std::move(parts), true);

  const EvolutionTable direct = direct_lab(s);
  const double dev_blue = table_max_dev(direct, biframe_U(s, BiframeForm::blue));
  const double dev_red = table_max_dev(direct, biframe_U(s, BiframeForm::red));

  Outcome out;
  out.pass = dev_blue <= 1e-10 && dev_red <= 1e-10;
  out.details.push_back(fmt("max per-block deviation vs direct route (bound 1.0e-10): "
                            "%.3e / %.3e for the two assembly forms",
                            dev_blue, dev_red));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: product core laws.
Outcome c6_product_core() {
  Outcome out;

  {
    auto g = make_grid(1.5, 9);
    const StarElement id = identity_element(g, 2);
    const StarElement x = dense_element(g, 2, 0.17, true);
    const StarElement th = theta_element(g, 2);
    const bool ok = elements_bitwise(star_product(id, x), x) &&
                    elements_bitwise(star_product(x, id), x) &&
                    elements_bitwise(star_product(id, th), th) &&
                    elements_bitwise(star_product(th, id), th);
    out.pass = out.pass && ok;
    out.details.push_back(fmt("unit laws bitwise: %s", ok ? "hold" : "FAIL"));
  }

  {
    auto g = make_grid(1.2, 31);
    const StarElement x = dense_element(g, 2, 0.0, true);
    const StarElement y = dense_element(g, 2, 0.8, true);
    const StarElement z = dense_element(g, 2, 1.9, true);
    const StarElement left = star_product(star_product(x, y), z);
    const StarElement right = star_product(x, star_product(y, z));
    double worst = 0.0;
    for (int i = 0; i < g->n_points; ++i)
      worst = std::max(worst, (left.delta_block(i) - right.delta_block(i)).cwiseAbs().maxCoeff());
    for (int i = 0; i < g->n_points; ++i)
      for (int j = 0; j <= i; ++j)
        worst = std::max(worst, (left.theta_block(i, j) - right.theta_block(i, j))
                                    .cwiseAbs()
                                    .maxCoeff());
    out.pass = out.pass && worst <= 1e-10;
    out.details.push_back(fmt("associativity deviation %.3e (bound 1.0e-10)", worst));
  }

  {
    auto g = make_grid(2.0, 17);
    const StarElement x = invariant_element(g, 2, 1.1, 0.7);
    const StarElement y = invariant_element(g, 2, 0.4, 1.9);
    const StarElement prod = star_product(x, y);
    bool ok = true;
    const std::size_t bs = sizeof(cxd) * 4;
    for (int i = 0; i < prod.nodes() && ok; ++i)
      for (int j = 1; j <= i && ok; ++j)
        ok = std::memcmp(prod.theta_part.block(i, j), prod.theta_part.block(i - j, 0), bs) == 0;
    out.pass = out.pass && ok;
    out.details.push_back(
        fmt("translation-invariant product reduces to a convolution bitwise: %s",
            ok ? "holds" : "FAIL"));
  }

  {
    // Second-order convergence of the propagator pipeline under grid halving.
    auto phase = [](double t) { return 0.9 * t + 0.3 * (1.0 - std::cos(t)); };
    auto gen = [](double t) -> Matrix {
      const double w = 0.9 + 0.3 * std::sin(t);
      Matrix a(2, 2);
      a << cxd(0, 0), cxd(-w, 0), cxd(w, 0), cxd(0, 0);
      return a;
    };
    std::vector<double> errs;
    for (int n : {51, 101, 201}) {
      auto g = make_grid(2.0, n);
      const EvolutionTable t =
          evolution_from_green(exact_resolvent(from_generator(sample_generator(g, 2, gen))));
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ph = phase(g->node(i));
        Matrix closed(2, 2);
        closed << cxd(std::cos(ph), 0), cxd(-std::sin(ph), 0), cxd(std::sin(ph), 0),
            cxd(std::cos(ph), 0);
        err = std::max(err, max_dev(t.u(i), closed));
      }
      errs.push_back(err);
    }
    const double slope = 0.5 * (std::log2(errs[0] / errs[1]) + std::log2(errs[1] / errs[2]));
    out.pass = out.pass && std::abs(slope - 2.0) <= 0.2 && errs[0] > 1e-12;
    out.details.push_back(fmt("grid-halving error slope %.3f (target 2 +/- 0.2; errors "
                              "%.2e / %.2e / %.2e)",
                              slope, errs[0], errs[1], errs[2]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: symmetry suites.
Outcome c7_symmetries() {
  Outcome out;

  {
    auto g = make_grid(1.5, 61);
    const SplitGenerator s = smooth_split(g, 2);
    const SplitGenerator swapped = permute_split(s, {1, 0});
    bool ok = true;
    for (int m : {1, 2, 5})
      ok = ok && elements_bitwise(udot_alternating_series(s, m),
                                  udot_alternating_series(swapped, m));
    out.pass = out.pass && ok;
    out.details.push_back(
        fmt("alternating derivative series invariant under part swap (bitwise): %s",
            ok ? "holds" : "FAIL"));
  }

  {
    auto g = make_grid(1.5, 151);
    const SplitGenerator s = smooth_split(g, 3);
    const EvolutionTable base = triframe_U(s);
    double worst = 0.0;
    const std::vector<std::vector<int>> orders = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& order : orders)
      worst = std::max(worst, table_max_dev(base, triframe_U(permute_split(s, order))));
    out.pass = out.pass && worst <= 1e-8;
    out.details.push_back(
        fmt("three-frame route over all 6 part orderings: max deviation %.3e (bound 1.0e-8)",
            worst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: closed forms of the worked example against generic pipelines.
Outcome c8_closed_forms() {
  Outcome out;
  RabiParams p;
  const Matrix id2 = Matrix::Identity(2, 2);

  {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double t = p.t_total * i / 100.0;
      const Matrix u0 = rabi_u0(p, t), u1 = rabi_u1(p, t);
      worst = std::max({worst, max_dev(Matrix(u0.adjoint() * u0), id2),
                        max_dev(Matrix(u1.adjoint() * u1), id2)});
    }
    out.pass = out.pass && worst <= 1e-14;
    out.details.push_back(
        fmt("part propagators unitary over 101 nodes: %.3e (bound 1.0e-14)", worst));
  }

  {
    std::mt19937_64 rng(20240901u);
    std::uniform_real_distribution<double> uni(0.0, p.t_total);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double t = uni(rng);
      const Matrix h = rabi_hamiltonian(p, t);
      const Matrix u0 = rabi_u0(p, t), u1 = rabi_u1(p, t);
      worst = std::max({worst, max_dev(h_std(p, 0, t), Matrix(u0.adjoint() * h * u0)),
                        max_dev(h_std(p, 1, t), Matrix(u1.adjoint() * h * u1))});
    }
    out.pass = out.pass && worst <= 1e-12;
    out.details.push_back(
        fmt("rotated Hamiltonians vs direct conjugation at 50 seeded times: %.3e "
            "(bound 1.0e-12)",
            worst));
  }

  {
    std::vector<double> errs;
    for (int n : {151, 301}) {
      RabiParams pn = p;
      pn.n_grid = n;
      const SplitGenerator sp = rabi_split(pn);
      const EvolutionTable t = evolution_from_green(exact_resolvent(from_generator(sp.parts[1])));
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        err = std::max(err, max_dev(t.u(i), rabi_u1(p, sp.grid->node(i))));
      errs.push_back(err);
    }
    const double ratio = errs[0] / errs[1];
    const bool ok = errs[0] <= 1e-3 && ratio >= 3.2 && ratio <= 4.8;
    out.pass = out.pass && ok;
    out.details.push_back(
        fmt("drive propagator, discrete pipeline vs closed form: error %.3e -> %.3e "
            "under halving (ratio %.2f, expected ~4)%s",
            errs[0], errs[1], ratio, ok ? "" : "  <-- FAIL"));
  }

  {
    RabiParams pk = p;
    pk.n_grid = 201;
    auto g = make_grid(pk.t_total, pk.n_grid);
    const BiframeOperator generic = biframe_operator(rabi_split(pk), BiframeForm::blue);
    const BiframeOperator closed = biframe_closed_form(pk, g);
    double dev = 0.0, scale = 0.0;
    for (int i = 0; i < pk.n_grid; ++i)
      for (int j = 0; j <= i; ++j) {
        dev = std::max(dev, max_dev(Matrix(generic.kernel.map(i, j)),
                                    Matrix(closed.kernel.map(i, j))));
        scale = std::max(scale, Matrix(closed.kernel.map(i, j)).cwiseAbs().maxCoeff());
      }
    const double rel = dev / scale;
    out.pass = out.pass && rel <= 1e-8;
    out.details.push_back(
        fmt("two-frame kernel closed form vs generic assembly: %.3e relative (bound 1.0e-8)",
            rel));
  }

  {
    auto g = make_grid(2.0, 240001);
    const SCIntegrals sc = sc_integrals(p, g);
    const double dev =
        std::max({std::abs(sc.s(240000, 0) - kS20), std::abs(sc.c(240000, 0) - kC20),
                  std::abs(sc.s(180000, 60000) - kS1505), std::abs(sc.c(180000, 60000) - kC1505)});
    out.pass = out.pass && dev <= 1e-8;
    out.details.push_back(
        fmt("phase-weighted drive integrals vs adaptive-quadrature oracle on a fine grid: "
            "%.3e (bound 1.0e-8)",
            dev));
  }
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"seeded split-identity residual sweep", c1_identities},
      {"series acceleration order", c2_acceleration},
      {"frame equivalence on the example grid", c3_frame_equivalence},
      {"convergence-curve structure", c4_curve_structure},
      {"constant-generator equivalence", c5_constant_generator},
      {"product core laws", c6_product_core},
      {"permutation symmetries", c7_symmetries},
      {"closed-form cross-checks", c8_closed_forms},
  };

  int failures = 0;
  for (std::size_t i = 0; i < sizeof(entries) / sizeof(entries[0]); ++i) {
    Outcome out;
    try {
      out = entries[i].fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.details.push_back(std::string("unexpected exception: ") + e.what());
    }
    std::printf("[%s] criterion %zu: %s\n", out.pass ? "PASS" : "FAIL", i + 1, entries[i].name);
    for (const std::string& d : out.details) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures;
}
