// Uniform time grid shared by all discretized operators.
#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "starframe/errors.hpp"

namespace starframe {

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_points = 0;   // number of nodes, >= 2
  double step = 0.0;  // h = (t_end - t_start)/(n_points - 1)
  std::vector<double> nodes;

  double node(int i) const { return nodes[static_cast<size_t>(i)]; }
};

using GridPtr = std::shared_ptr<const TimeGrid>;

inline GridPtr make_grid(double t_end, int n_points, double t_start = 0.0) {
  if (!(std::isfinite(t_start) && std::isfinite(t_end)) || t_end <= t_start)
    throw config_error("make_grid: horizon must be finite with t_end > t_start");
  if (n_points < 2) throw config_error("make_grid: need at least 2 nodes");
  auto g = std::make_shared<TimeGrid>();
  g->t_start = t_start;
  g->t_end = t_end;
  g->n_points = n_points;
  g->step = (t_end - t_start) / (n_points - 1);
  g->nodes.resize(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i) g->nodes[static_cast<size_t>(i)] = t_start + i * g->step;
  g->nodes.back() = t_end;
  return g;
}

inline bool same_grid(const TimeGrid& a, const TimeGrid& b) {
  return a.n_points == b.n_points && a.t_start == b.t_start && a.t_end == b.t_end;
}

inline void require_same_grid(const TimeGrid& a, const TimeGrid& b,
                              const char* what = "operation") {
  if (!same_grid(a, b))
    throw mismatch_error(std::string(what) + ": operands live on different grids");
}

inline void require_same_grid(const GridPtr& a, const GridPtr& b,
                              const char* what = "operation") {
  if (!a || !b) throw mismatch_error(std::string(what) + ": missing grid");
  require_same_grid(*a, *b, what);
}

}  // namespace starframe
