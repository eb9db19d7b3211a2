#pragma once

// Command implementations behind the CLI executable.  Each command takes a
// validated RunConfig, checks its output paths up front, computes, writes
// each output exactly once, and returns a process exit code:
//   0  success
//   1  configuration / IO problems (raised as config_error by callees)
//   2  verification failure (verify only)

#include <cstdio>
#include <string>
#include <vector>

#include "starframe/config.hpp"
#include "starframe/csv.hpp"
#include "starframe/identities.hpp"
#include "starframe/svg.hpp"
#include "starframe/verify.hpp"

namespace starframe {

namespace detail {

inline std::string default_output(const RunConfig& cfg, const char* fallback) {
  return cfg.output_path.empty() ? std::string(fallback) : cfg.output_path;
}

inline std::string svg_sibling(const std::string& csv_path) {
  const std::string suffix = ".csv";
  if (csv_path.size() > suffix.size() &&
      csv_path.compare(csv_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return csv_path.substr(0, csv_path.size() - suffix.size()) + ".svg";
  return csv_path + ".svg";
}

}  // namespace detail

// Seeded identity-check table over the configured trial/dimension/radius
// sweep.  Purely matrix-level; always exits 0 unless configuration or IO
// fails (the produced residuals are data, not a gate).
inline int cmd_identities(const RunConfig& cfg) {
  validate_config(cfg);
  const std::string out_path = detail::default_output(cfg, "identities.csv");
  ensure_writable(out_path);

  std::vector<CheckRow> rows;
  std::uint64_t counter = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (int dim : cfg.dims) {
      for (double rho : cfg.rhos) {
        const std::uint64_t seed = cfg.seed + counter;
        ++counter;
        const ContractionPair pair2 = random_contraction(seed, dim, 2, rho);
        const ContractionPair pair3 = random_contraction(seed, dim, 3, rho);

        rows.push_back({"simple_split", seed, dim, rho, check_simple_split(pair2), {}});
        rows.push_back({"symmetric_split", seed, dim, rho, check_symmetric_split(pair2), {}});
        rows.push_back({"triframe", seed, dim, rho, check_triframe_identity(pair3), {}});
        for (int m : {1, 2}) {
          const TrickReport rep = check_square_trick(pair2.sum(), m);
          rows.push_back({"square_trick_m" + std::to_string(m), seed, dim, rho, rep.residual,
                          rep.slope});
        }
        for (int m : {0, 1}) {
          const TrickReport rep = check_cube_trick(pair2.sum(), m);
          rows.push_back(
              {"cube_trick_m" + std::to_string(m), seed, dim, rho, rep.residual, rep.slope});
        }
        for (int m : {1, 2}) {
          rows.push_back({"accelerated_m" + std::to_string(m), seed, dim, rho, {},
                          accelerated_slope(pair2, m)});
        }
      }
    }
  }
  write_text_file(out_path, checks_csv(rows));
  return 0;
}

// Convergence sweep of the configured frames; CSV always, SVG on request.
inline int cmd_figure1(const RunConfig& cfg) {
  validate_config(cfg);
  std::vector<std::string> frames = cfg.frames;
  if (cfg.include_std0) {
    bool present = false;
    for (const std::string& f : frames) present = present || f == "std0";
    if (!present) frames.push_back("std0");
  }
  const std::string out_path = detail::default_output(cfg, "figure1.csv");
  ensure_writable(out_path);
  const std::string svg_path = detail::svg_sibling(out_path);
  if (cfg.emit_svg) ensure_writable(svg_path);

  const std::vector<ConvergenceRecord> records = run_figure1(cfg.rabi, frames, cfg.substeps);
  write_text_file(out_path, figure_csv(records));

  if (cfg.emit_svg) {
    // Floor: what the untruncated single-frame pipeline reaches on this grid.
    SplitGenerator split = rabi_split(cfg.rabi);
    ReferenceSolution ref = rk_reference(rabi_generator(cfg.rabi), split.grid, 2, cfg.substeps);
    const double floor_eps = epsilon_error(ref, std_frame_U(split));
    write_text_file(svg_path, figure_svg(records, floor_eps));
  }
  return 0;
}

// Named end-to-end properties; exit 2 when any fails.
inline int cmd_verify(const RunConfig& cfg) {
  validate_config(cfg);
  const std::string out_path = detail::default_output(cfg, "verify.csv");
  ensure_writable(out_path);

  const std::vector<PropertyResult> results = verify_properties(cfg);
  std::vector<CheckRow> rows;
  bool all_pass = true;
  for (const PropertyResult& r : results) {
    CheckRow row;
    row.check = r.name;
    row.seed = cfg.seed;
    row.dim = 2;
    if (r.is_slope)
      row.slope = r.value;
    else
      row.residual = r.value;
    rows.push_back(row);
    all_pass = all_pass && r.pass;
    if (r.is_slope)
      std::printf("[%s] %s value=%.3e expected=[%g, %g]\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.value, r.bound_lo, r.bound_hi);
    else
      std::printf("[%s] %s value=%.3e bound=%.1e\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.value, r.bound_hi);
  }
  write_text_file(out_path, checks_csv(rows));
  return all_pass ? 0 : 2;
}

}  // namespace starframe
