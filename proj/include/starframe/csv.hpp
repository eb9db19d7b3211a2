#pragma once

// CSV serialization for the two tabular outputs.  All floating-point values
// are printed with 17 significant digits (%.16e) so reruns are
// byte-identical and values round-trip exactly.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "starframe/rabi.hpp"

namespace starframe {

inline std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

struct CheckRow {
  std::string check;
  std::uint64_t seed = 0;
  int dim = 0;
  std::optional<double> rho;
  std::optional<double> residual;
  std::optional<double> slope;
};

inline std::string checks_csv(const std::vector<CheckRow>& rows) {
  std::string out = "check,seed,dim,rho,residual,slope_if_any\n";
  for (const CheckRow& r : rows) {
    out += r.check;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.dim);
    out += ',';
    if (r.rho) out += format_sci(*r.rho);
    out += ',';
    if (r.residual) out += format_sci(*r.residual);
    out += ',';
    if (r.slope) out += format_sci(*r.slope);
    out += '\n';
  }
  return out;
}

inline std::string figure_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out = "frame,m,epsilon,log10_epsilon\n";
  for (const ConvergenceRecord& r : records) {
    const double eps = r.epsilon;
    const double safe = eps > 0.0 ? eps : 1e-300;  // keep the log finite
    out += r.frame;
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += format_sci(eps);
    out += ',';
    out += format_sci(std::log10(safe));
    out += '\n';
  }
  return out;
}

}  // namespace starframe
