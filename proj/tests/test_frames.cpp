// Frame-change machinery tests: split construction, the exact single-,
// two- and three-frame pipelines, truncated expansions and their
// column-pipeline sweeps, the alternating derivative series, and the
// coupling-order probes.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "starframe/frames.hpp"
#include "starframe/metrics.hpp"
#include "starframe/reference.hpp"

using namespace starframe;

namespace {

Matrix sigma_x() {
  Matrix m(2, 2);
  m << cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0);
  return m;
}

Matrix sigma_y() {
  Matrix m(2, 2);
  m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  return m;
}

Matrix sigma_z() {
  Matrix m(2, 2);
  m << cxd(1, 0), cxd(0, 0), cxd(0, 0), cxd(-1, 0);
  return m;
}

// Generic smooth non-commuting two-part split used across the tests.  The
// lambdas return Matrix explicitly so Eigen expressions are materialized
// before their operands go out of scope.
GeneratorFn gen_part0() {
  return [](double t) -> Matrix {
    return cxd(0.0, -1.0) * (0.9 + 0.3 * std::sin(t)) * sigma_z();
  };
}

GeneratorFn gen_part1() {
  return [](double t) -> Matrix { return cxd(0.0, -1.0) * 1.1 * std::cos(2.0 * t) * sigma_x(); };
}

GeneratorFn gen_part2() {
  return [](double t) -> Matrix { return cxd(0.0, -1.0) * 0.5 * std::sin(1.3 * t) * sigma_y(); };
}

SplitGenerator two_part_split(const GridPtr& g) {
  std::vector<Generator> parts;
  parts.push_back(sample_generator(g, 2, gen_part0()));
  parts.push_back(sample_generator(g, 2, gen_part1()));
  return make_split(std::move(parts), /*unitary=*/true);
}

SplitGenerator three_part_split(const GridPtr& g) {
  std::vector<Generator> parts;
  parts.push_back(sample_generator(g, 2, gen_part0()));
  parts.push_back(sample_generator(g, 2, gen_part1()));
  parts.push_back(sample_generator(g, 2, gen_part2()));
  return make_split(std::move(parts), /*unitary=*/true);
}

GeneratorFn total_generator(const SplitGenerator& s) {
  const int n_parts = s.n_parts();
  std::vector<GeneratorFn> fns;
  if (n_parts >= 1) fns.push_back(gen_part0());
  if (n_parts >= 2) fns.push_back(gen_part1());
  if (n_parts >= 3) fns.push_back(gen_part2());
  return [fns](double t) {
    Matrix m = Matrix::Zero(2, 2);
    for (const auto& f : fns) m += f(t);
    return m;
  };
}

EvolutionTable direct_lab(const SplitGenerator& s) {
  Generator sum(s.grid, s.dim);
  for (int i = 0; i < sum.samples.count(); ++i) {
    sum.samples.map(i).setZero();
    for (const Generator& p : s.parts) sum.samples.map(i) += p.samples.map(i);
  }
  return evolution_from_green(exact_resolvent(from_generator(sum)));
}

double table_max_dev(const EvolutionTable& a, const EvolutionTable& b) {
  double worst = 0.0;
  for (int i = 0; i < a.nodes(); ++i)
    for (int j = 0; j <= i; ++j)
      worst = std::max(worst, (a.u(i, j) - b.u(i, j)).cwiseAbs().maxCoeff());
  return worst;
}

double samples_max_dev(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
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

}  // namespace

TEST_CASE("split construction and validation") {
  auto g = make_grid(1.5, 41);
  CHECK_THROWS_AS(make_split(std::vector<Generator>{}), argument_error);

  {
    auto g2 = make_grid(1.5, 43);
    std::vector<Generator> parts;
    parts.push_back(sample_generator(g, 2, gen_part0()));
    parts.push_back(sample_generator(g2, 2, gen_part1()));
    CHECK_THROWS_AS(make_split(std::move(parts)), mismatch_error);
  }
  {
    std::vector<Generator> parts;
    parts.push_back(sample_generator(g, 2, gen_part0()));
    parts.push_back(sample_generator(g, 1, [](double) { return Matrix::Identity(1, 1); }));
    CHECK_THROWS_AS(make_split(std::move(parts)), mismatch_error);
  }

  SplitGenerator s = two_part_split(g);
  REQUIRE(s.n_parts() == 2);
  REQUIRE(s.part_greens.size() == 2);
  REQUIRE(s.part_evolutions.size() == 2);

  // Part Green elements are exact ring inverses of I - A_p Theta.
  CHECK(max_green_residual(s) <= 1e-12);

  // Part propagators track independent integrations of each part.
  for (int p = 0; p < 2; ++p) {
    GeneratorFn fn = p == 0 ? gen_part0() : gen_part1();
    ReferenceSolution ref = rk_reference(fn, g, 2, 16);
    double worst = 0.0;
    for (int i = 0; i < g->n_points; ++i)
      worst = std::max(worst, (s.part_evolutions[p].u(i) - ref.u(i)).cwiseAbs().maxCoeff());
    CHECK(worst <= 5e-3);  // trapezoid-order pipeline on a coarse grid
  }
}

TEST_CASE("split permutation validation") {
  auto g = make_grid(1.0, 21);
  SplitGenerator s = two_part_split(g);
  CHECK_THROWS_AS(permute_split(s, {0}), argument_error);
  CHECK_THROWS_AS(permute_split(s, {0, 0}), argument_error);
  CHECK_THROWS_AS(permute_split(s, {0, 2}), argument_error);
  SplitGenerator r = permute_split(s, {1, 0});
  CHECK(elements_bitwise(r.part_greens[0], s.part_greens[1]));
  CHECK(elements_bitwise(r.part_greens[1], s.part_greens[0]));
}

TEST_CASE("exact frame pipelines agree with each other") {
  // The lab route and both two-frame assemblies invert the same discretized
  // problem inside the same ring, so they coincide far below the quadrature
  // error.  The single-frame route composes node-wise conjugations with a
  // separately inverted rotated problem, so it only matches at quadrature
  // order.
  auto g = make_grid(2.0, 201);
  SplitGenerator s = two_part_split(g);

  EvolutionTable lab = direct_lab(s);
  EvolutionTable std_u = std_frame_U(s);
  EvolutionTable blue = biframe_U(s, BiframeForm::blue);
  EvolutionTable red = biframe_U(s, BiframeForm::red);

  CHECK(table_max_dev(lab, blue) <= 1e-10);
  CHECK(table_max_dev(blue, red) <= 1e-10);
  CHECK(table_max_dev(lab, std_u) <= 1e-3);

  // And all of them integrate the true dynamics at quadrature accuracy.
  ReferenceSolution ref = rk_reference(total_generator(s), g, 2, 16);
  REQUIRE_FALSE(ref.warning);
  CHECK(epsilon_error(ref, lab) <= 1e-4);
  CHECK(epsilon_error(ref, std_u) <= 1e-4);
  CHECK(epsilon_error(ref, blue) <= 1e-4);
  CHECK(epsilon_error(ref, red) <= 1e-4);
}

TEST_CASE("three-part pipeline agrees with the lab route and is order-blind") {
  auto g = make_grid(1.5, 151);
  SplitGenerator s = three_part_split(g);

  EvolutionTable base = triframe_U(s);
  CHECK(table_max_dev(direct_lab(s), base) <= 1e-10);

  const std::vector<std::vector<int>> orders = {{0, 2, 1}, {1, 0, 2}, {1, 2, 0},
                                                {2, 0, 1}, {2, 1, 0}};
  for (const auto& order : orders) {
    EvolutionTable permuted = triframe_U(permute_split(s, order));
    CHECK(table_max_dev(base, permuted) <= 1e-8);
  }

  CHECK_THROWS_AS(triframe_U(two_part_split(g)), argument_error);
}

TEST_CASE("constant commuting-free parts: two-frame route matches direct integration") {
  // Constant non-commuting parts; the assembled two-frame propagator must
  // match the directly inverted lab pipeline block by block.
  auto g = make_grid(2.0, 201);
  std::vector<Generator> parts;
  parts.push_back(sample_generator(g, 2, [](double) { return cxd(0, -0.7) * sigma_z(); }));
  parts.push_back(sample_generator(g, 2, [](double) { return cxd(0, -0.4) * sigma_x(); }));
  SplitGenerator s = make_split(std::move(parts), true);

  CHECK(table_max_dev(direct_lab(s), biframe_U(s, BiframeForm::blue)) <= 1e-10);
  CHECK(table_max_dev(direct_lab(s), biframe_U(s, BiframeForm::red)) <= 1e-10);
}

TEST_CASE("explicit two-frame kernel has an exactly vanishing diagonal") {
  auto g = make_grid(1.5, 61);
  SplitGenerator s = two_part_split(g);
  for (BiframeForm form : {BiframeForm::blue, BiframeForm::red}) {
    BiframeOperator op = biframe_operator(s, form);
    for (int i = 0; i < g->n_points; ++i)
      CHECK(ConstMatrixMap(op.kernel.block(i, i), 2, 2).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("truncated expansions converge to the exact pipelines") {
  auto g = make_grid(1.5, 101);
  SplitGenerator s = two_part_split(g);
  ReferenceSolution ref = rk_reference(total_generator(s), g, 2, 16);

  CHECK_THROWS_AS(dyson_truncated(s, Frame::lab, -1), argument_error);

  for (Frame frame : {Frame::lab, Frame::std, Frame::biframe}) {
    // Each truncation family converges to its own frame's exact pipeline.
    EvolutionTable exact = frame == Frame::lab    ? direct_lab(s)
                           : frame == Frame::std ? std_frame_U(s)
                                                 : biframe_U(s, BiframeForm::blue);
    double prev = 1e100;
    for (int m : {1, 3, 5, 7}) {
      EvolutionTable t = dyson_truncated(s, frame, m);
      const double dev = table_max_dev(t, exact);
      CHECK(dev < prev);
      prev = dev;
    }
    // High orders land on the exact discrete pipeline.
    EvolutionTable deep = dyson_truncated(s, frame, 25);
    CHECK(table_max_dev(deep, exact) <= 1e-9);
    CHECK(epsilon_error(ref, deep) <= 1e-3);
  }
}

TEST_CASE("order sweeps match the one-shot truncations") {
  auto g = make_grid(1.5, 101);
  SplitGenerator s = two_part_split(g);
  const int max_order = 4;

  std::vector<std::vector<std::vector<Matrix>>> swept = {
      sweep_lab(s, max_order), sweep_std(s, max_order), sweep_biframe(s, max_order)};
  const Frame frames[] = {Frame::lab, Frame::std, Frame::biframe};

  for (int f = 0; f < 3; ++f) {
    REQUIRE(static_cast<int>(swept[f].size()) == max_order + 1);
    for (int m = 0; m <= max_order; ++m) {
      EvolutionTable t = dyson_truncated(s, frames[f], m);
      std::vector<Matrix> u;
      for (int i = 0; i < t.nodes(); ++i) u.push_back(t.u(i));
      CHECK(samples_max_dev(swept[f][m], u) <= 1e-11);
    }
  }
}

TEST_CASE("alternating derivative series is swap-symmetric bitwise") {
  auto g = make_grid(1.5, 61);
  SplitGenerator s = two_part_split(g);
  SplitGenerator swapped = permute_split(s, {1, 0});

  CHECK_THROWS_AS(udot_alternating_series(s, 0), argument_error);

  for (int m : {1, 2, 5}) {
    StarElement a = udot_alternating_series(s, m);
    StarElement b = udot_alternating_series(swapped, m);
    CHECK(elements_bitwise(a, b));
  }
}

TEST_CASE("alternating derivative series rebuilds the full resolvent") {
  auto g = make_grid(1.5, 61);
  SplitGenerator s = two_part_split(g);
  StarElement full = exact_resolvent(from_generator(detail::sum_generator(s)));

  double prev = 1e100;
  for (int m : {2, 4, 8, 14}) {
    StarElement approx = udot_alternating_series(s, m);
    add_unit_in_place(approx);
    double worst = 0.0;
    for (int i = 0; i < approx.nodes(); ++i)
      for (int j = 0; j <= i; ++j)
        worst = std::max(
            worst, (approx.theta_block(i, j) - full.theta_block(i, j)).cwiseAbs().maxCoeff());
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev <= 1e-9);
}

TEST_CASE("ring partial sums miss the series tail at the expected coupling order") {
  // Scaling every part by lambda and truncating at order m leaves a
  // deviation of order lambda^{m+1} for the single-frame sum and
  // lambda^{2m+2} for the two-frame sum.  Both the truncation and the exact
  // route live in the same discrete ring, so the probe is free of
  // discretization error.
  auto g = make_grid(1.5, 101);
  SplitGenerator base = two_part_split(g);
  const std::vector<double> lambdas = {0.5, 0.25, 0.125};

  auto exact_samples = [](const SplitGenerator& s) {
    EvolutionTable t = biframe_U(s, BiframeForm::blue);
    std::vector<Matrix> u;
    for (int i = 0; i < t.nodes(); ++i) u.push_back(t.u(i));
    return u;
  };

  auto fitted_slope = [&](auto&& deviation_at) {
    std::vector<double> logs;
    for (double lam : lambdas) logs.push_back(std::log(deviation_at(lam)));
    // Least-squares slope of log(dev) against log(lambda).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const double x = std::log(lambdas[k]);
      sx += x;
      sy += logs[k];
      sxx += x * x;
      sxy += x * logs[k];
    }
    const double n = static_cast<double>(lambdas.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  SECTION("single-frame partial sum: order m + 1") {
    for (int m : {1, 2}) {
      const double slope = fitted_slope([&](double lam) {
        SplitGenerator s = scaled_split(base, lam);
        return samples_max_dev(split_partial_sum_univariate(s, m), exact_samples(s));
      });
      CHECK(slope == Catch::Approx(m + 1.0).margin(0.35));
    }
  }

  SECTION("two-frame partial sum: order 2m + 2") {
    for (int m : {1, 2}) {
      const double slope = fitted_slope([&](double lam) {
        SplitGenerator s = scaled_split(base, lam);
        return samples_max_dev(symmetric_partial_sum_univariate(s, m), exact_samples(s));
      });
      CHECK(slope == Catch::Approx(2.0 * m + 2.0).margin(0.35));
    }
  }
}

TEST_CASE("two-frame truncation outpaces the single-frame truncation") {
  // The order-m two-frame curve should sit near the order-(2m+1)
  // single-frame curve, both measured against the reference dynamics.
  auto g = make_grid(2.0, 301);
  SplitGenerator s = two_part_split(g);
  ReferenceSolution ref = rk_reference(total_generator(s), g, 2, 16);
  REQUIRE_FALSE(ref.warning);

  std::vector<std::vector<Matrix>> std_sweep = sweep_std(s, 9);
  std::vector<std::vector<Matrix>> bi_sweep = sweep_biframe(s, 4);

  for (int m = 1; m <= 4; ++m) {
    const double e_bi = epsilon_error(ref, bi_sweep[m]);
    const double e_std_same = epsilon_error(ref, std_sweep[m]);
    const double e_std_double = epsilon_error(ref, std_sweep[2 * m + 1]);
    CHECK(e_bi < e_std_same);
    // The order-m two-frame truncation captures at least the order-(2m+1)
    // single-frame content; above the quadrature floor its error can only
    // sit at or below that curve.
    if (e_bi > 1e-7) CHECK(e_bi <= e_std_double * 1.05);
  }
}
