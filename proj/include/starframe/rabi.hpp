#pragma once

// Worked example: a driven two-level system with Hamiltonian
//
//   H(t) = (omega0/2) sigma_z + 2 beta cos(omega t) sigma_x,
//
// generator A(t) = -i H(t), split into the static part
// A_0 = -i (omega0/2) sigma_z and the drive A_1 = -2i beta cos(omega t)
// sigma_x.  Both part propagators have closed forms:
//
//   U_0(t) = diag(e^{-i omega0 t/2}, e^{+i omega0 t/2})
//   U_1(t) = cos(theta) Id - i sin(theta) sigma_x,
//   theta(t) = (2 beta / omega) sin(omega t),
//
// which makes every frame assembly in frames.hpp checkable against
// independent expressions: the rotated Hamiltonians h_std, the explicit
// two-frame kernel biframe_closed_form, and the reference integrator.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "starframe/frames.hpp"
#include "starframe/metrics.hpp"
#include "starframe/reference.hpp"

namespace starframe {

struct RabiParams {
  double omega0 = 2.0;   // level splitting
  double beta = 1.6;     // drive strength
  double omega = 3.0;    // drive frequency
  double t_total = 2.0;  // horizon
  int n_grid = 601;      // grid nodes
  std::vector<int> orders = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};

  void validate() const {
    if (!(std::isfinite(omega0) && std::isfinite(beta) && std::isfinite(omega)))
      throw config_error("rabi: parameters must be finite");
    if (omega == 0.0) throw config_error("rabi: drive frequency must be non-zero");
    if (!(t_total > 0.0) || !std::isfinite(t_total))
      throw config_error("rabi: horizon must be positive");
    if (n_grid < 2) throw config_error("rabi: need at least 2 grid nodes");
    if (orders.empty()) throw config_error("rabi: orders must be non-empty");
    for (int m : orders)
      if (m < 0) throw config_error("rabi: orders must be non-negative");
  }
};

namespace pauli {
inline Matrix x() {
  Matrix m(2, 2);
  m << cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0);
  return m;
}
inline Matrix y() {
  Matrix m(2, 2);
  m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  return m;
}
inline Matrix z() {
  Matrix m(2, 2);
  m << cxd(1, 0), cxd(0, 0), cxd(0, 0), cxd(-1, 0);
  return m;
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

inline Matrix rabi_hamiltonian(const RabiParams& p, double t) {
  return 0.5 * p.omega0 * pauli::z() + 2.0 * p.beta * std::cos(p.omega * t) * pauli::x();
}

inline GeneratorFn rabi_generator(const RabiParams& p) {
  return [p](double t) { return Matrix(cxd(0, -1) * rabi_hamiltonian(p, t)); };
}

inline double rabi_drive_angle(const RabiParams& p, double t) {
  return (2.0 * p.beta / p.omega) * std::sin(p.omega * t);
}

inline Matrix rabi_u0(const RabiParams& p, double t) {
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = std::exp(cxd(0, -0.5 * p.omega0 * t));
  u(1, 1) = std::exp(cxd(0, +0.5 * p.omega0 * t));
  return u;
}

inline Matrix rabi_u1(const RabiParams& p, double t) {
  const double th = rabi_drive_angle(p, t);
  return Matrix(std::cos(th) * Matrix::Identity(2, 2) + cxd(0, -std::sin(th)) * pauli::x());
}

// Full Hamiltonian seen from part frame `which`:  U_which^{-1} H U_which.
inline Matrix h_std(const RabiParams& p, int which, double t) {
  const double drive = 2.0 * p.beta * std::cos(p.omega * t);
  if (which == 0) {
    Matrix m(2, 2);
    m(0, 0) = cxd(0.5 * p.omega0, 0);
    m(1, 1) = cxd(-0.5 * p.omega0, 0);
    m(0, 1) = drive * std::exp(cxd(0, p.omega0 * t));
    m(1, 0) = drive * std::exp(cxd(0, -p.omega0 * t));
    return m;
  }
  if (which == 1) {
    const double two_theta = 2.0 * rabi_drive_angle(p, t);
    return Matrix(drive * pauli::x() + 0.5 * p.omega0 * std::sin(two_theta) * pauli::y() +
                  0.5 * p.omega0 * std::cos(two_theta) * pauli::z());
  }
  throw argument_error("h_std: frame selector must be 0 or 1");
}

// ---------------------------------------------------------------------------
// Splits
// ---------------------------------------------------------------------------

inline SplitGenerator rabi_split(const RabiParams& p) {
  p.validate();
  GridPtr grid = make_grid(p.t_total, p.n_grid);
  Generator a0 = sample_generator(grid, 2, [&p](double) {
    return Matrix(cxd(0, -0.5 * p.omega0) * pauli::z());
  });
  Generator a1 = sample_generator(grid, 2, [&p](double t) {
    return Matrix(cxd(0, -2.0 * p.beta * std::cos(p.omega * t)) * pauli::x());
  });
  std::vector<Matrix> u0_samples, u1_samples;
  for (int i = 0; i < p.n_grid; ++i) {
    u0_samples.push_back(rabi_u0(p, grid->node(i)));
    u1_samples.push_back(rabi_u1(p, grid->node(i)));
  }
  std::vector<EvolutionTable> tables;
  tables.push_back(table_from_univariate(grid, u0_samples, /*unitary=*/true));
  tables.push_back(table_from_univariate(grid, u1_samples, /*unitary=*/true));
  return make_split({std::move(a0), std::move(a1)}, std::move(tables), /*unitary=*/true);
}

// Three-part variant: the drive is divided into two equal halves, each with
// closed propagator exp(-i (beta/omega) sin(omega t) sigma_x).
inline SplitGenerator rabi_split_three(const RabiParams& p) {
  p.validate();
  GridPtr grid = make_grid(p.t_total, p.n_grid);
  Generator a0 = sample_generator(grid, 2, [&p](double) {
    return Matrix(cxd(0, -0.5 * p.omega0) * pauli::z());
  });
  auto half_drive = [&p](double t) {
    return Matrix(cxd(0, -p.beta * std::cos(p.omega * t)) * pauli::x());
  };
  Generator a1 = sample_generator(grid, 2, half_drive);
  Generator a2 = sample_generator(grid, 2, half_drive);
  std::vector<Matrix> u0_samples, uh_samples;
  for (int i = 0; i < p.n_grid; ++i) {
    const double t = grid->node(i);
    u0_samples.push_back(rabi_u0(p, t));
    const double phi = (p.beta / p.omega) * std::sin(p.omega * t);
    uh_samples.push_back(
        Matrix(std::cos(phi) * Matrix::Identity(2, 2) + cxd(0, -std::sin(phi)) * pauli::x()));
  }
  std::vector<EvolutionTable> tables;
  tables.push_back(table_from_univariate(grid, u0_samples, /*unitary=*/true));
  tables.push_back(table_from_univariate(grid, uh_samples, /*unitary=*/true));
  tables.push_back(table_from_univariate(grid, uh_samples, /*unitary=*/true));
  return make_split({std::move(a0), std::move(a1), std::move(a2)}, std::move(tables),
                    /*unitary=*/true);
}

// ---------------------------------------------------------------------------
// Phase-weighted drive integrals
// ---------------------------------------------------------------------------
//
// The explicit two-frame kernel of this example reduces to two scalar
// integral families,
//
//   S(t, s) = e^{+i omega0 s / 2} int_s^t e^{-i omega0 tau / 2} sin(theta(tau)) dtau
//   C(t, s) = e^{+i omega0 s / 2} int_s^t e^{-i omega0 tau / 2} cos(theta(tau)) dtau,
//
// evaluated here with the same composite trapezoid rule the generic kernel
// assembly uses, via O(n) prefix tables.  S(t, t) = C(t, t) = 0 exactly.

struct SCIntegrals {
  GridPtr grid;
  std::vector<cxd> prefix_s;  // running trapezoid of e^{-i omega0 tau/2} sin(theta)
  std::vector<cxd> prefix_c;  // ... and cos(theta)
  std::vector<cxd> phase;     // e^{+i omega0 t_j / 2}

  cxd s(int i, int j) const {
    return phase[static_cast<std::size_t>(j)] *
           (prefix_s[static_cast<std::size_t>(i)] - prefix_s[static_cast<std::size_t>(j)]);
  }
  cxd c(int i, int j) const {
    return phase[static_cast<std::size_t>(j)] *
           (prefix_c[static_cast<std::size_t>(i)] - prefix_c[static_cast<std::size_t>(j)]);
  }
};

inline SCIntegrals sc_integrals(const RabiParams& p, const GridPtr& grid) {
  p.validate();
  if (!grid) throw argument_error("sc_integrals: null grid");
  const int n = grid->n_points;
  const double h = grid->step;
  SCIntegrals sc;
  sc.grid = grid;
  sc.prefix_s.resize(static_cast<std::size_t>(n));
  sc.prefix_c.resize(static_cast<std::size_t>(n));
  sc.phase.resize(static_cast<std::size_t>(n));
  cxd fs_prev, fc_prev;
  for (int i = 0; i < n; ++i) {
    const double t = grid->node(i);
    const double th = rabi_drive_angle(p, t);
    const cxd mod = std::exp(cxd(0, -0.5 * p.omega0 * t));
    const cxd fs = mod * std::sin(th);
    const cxd fc = mod * std::cos(th);
    if (i == 0) {
      sc.prefix_s[0] = cxd(0, 0);
      sc.prefix_c[0] = cxd(0, 0);
    } else {
      sc.prefix_s[static_cast<std::size_t>(i)] =
          sc.prefix_s[static_cast<std::size_t>(i - 1)] + 0.5 * h * (fs_prev + fs);
      sc.prefix_c[static_cast<std::size_t>(i)] =
          sc.prefix_c[static_cast<std::size_t>(i - 1)] + 0.5 * h * (fc_prev + fc);
    }
    sc.phase[static_cast<std::size_t>(i)] = std::exp(cxd(0, +0.5 * p.omega0 * t));
    fs_prev = fs;
    fc_prev = fc;
  }
  return sc;
}

// Explicit closed form of the two-frame kernel for this example:
//
//   B(t,s) = beta omega0 cos(omega t) cos(theta(t)) [ -iS   conj(C) ]
//                                                   [ -C    i conj(S) ]
//          + beta omega0 cos(omega t) sin(theta(t)) [  iC   conj(S) ]
//                                                   [ -S   -i conj(C) ]
//
// with S = S(t,s), C = C(t,s).  Agrees with biframe_operator(split, blue)
// to roundoff on the same grid.
inline BiframeOperator biframe_closed_form(const RabiParams& p, const GridPtr& grid) {
  SCIntegrals sc = sc_integrals(p, grid);
  const int n = grid->n_points;
  BiframeOperator op;
  op.grid = grid;
  op.dim = 2;
  op.kernel = BlockTriangle(n, 2);
  std::vector<double> pre_c(static_cast<std::size_t>(n)), pre_s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = grid->node(i);
    const double th = rabi_drive_angle(p, t);
    const double lead = p.beta * p.omega0 * std::cos(p.omega * t);
    pre_c[static_cast<std::size_t>(i)] = lead * std::cos(th);
    pre_s[static_cast<std::size_t>(i)] = lead * std::sin(th);
  }
  parallel_for(n, [&](int j) {
    for (int i = j + 1; i < n; ++i) {  // diagonal stays exactly zero
      const cxd sv = sc.s(i, j);
      const cxd cv = sc.c(i, j);
      const double a = pre_c[static_cast<std::size_t>(i)];
      const double b = pre_s[static_cast<std::size_t>(i)];
      Matrix m(2, 2);
      m(0, 0) = a * cxd(0, -1) * sv + b * cxd(0, 1) * cv;
      m(0, 1) = a * std::conj(cv) + b * std::conj(sv);
      m(1, 0) = a * (-cv) + b * (-sv);
      m(1, 1) = a * cxd(0, 1) * std::conj(sv) + b * cxd(0, -1) * std::conj(cv);
      op.kernel.map(i, j) = m;
    }
  });
  return op;
}

// ---------------------------------------------------------------------------
// Convergence sweep
// ---------------------------------------------------------------------------

struct ConvergenceRecord {
  std::string frame;
  int m = 0;
  double epsilon = 0.0;
};

inline const std::vector<std::string>& figure_frames_default() {
  static const std::vector<std::string> f = {"lab", "std", "biframe"};
  return f;
}

// Truncation-order sweep of the requested expansions against the reference
// integrator.  Records are sorted by (frame, m).
inline std::vector<ConvergenceRecord> run_figure1(
    const RabiParams& p, const std::vector<std::string>& frames = figure_frames_default(),
    int substeps = 20) {
  p.validate();
  for (const std::string& f : frames)
    if (f != "lab" && f != "std" && f != "std0" && f != "biframe")
      throw config_error("run_figure1: unknown frame '" + f + "'");
  if (frames.empty()) throw config_error("run_figure1: frames must be non-empty");

  SplitGenerator split = rabi_split(p);
  ReferenceSolution ref = rk_reference(rabi_generator(p), split.grid, 2, substeps);
  const int max_order = *std::max_element(p.orders.begin(), p.orders.end());

  std::vector<ConvergenceRecord> records;
  auto record_sweep = [&](const std::string& name,
                          const std::vector<std::vector<Matrix>>& sweep) {
    for (int m : p.orders)
      records.push_back({name, m, epsilon_error(ref, sweep[static_cast<std::size_t>(m)])});
  };
  for (const std::string& f : frames) {
    if (f == "lab")
      record_sweep(f, sweep_lab(split, max_order));
    else if (f == "std")
      record_sweep(f, sweep_std(split, max_order, 1));
    else if (f == "std0")
      record_sweep(f, sweep_std(split, max_order, 0));
    else
      record_sweep(f, sweep_biframe(split, max_order));
  }
  std::sort(records.begin(), records.end(), [](const ConvergenceRecord& a,
                                               const ConvergenceRecord& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.m < b.m;
  });
  return records;
}

}  // namespace starframe
