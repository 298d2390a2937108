#ifndef NETPUT_ORACLE_HPP
#define NETPUT_ORACLE_HPP

// Brute-force reference computations used to check the solvers.

#include <cstddef>

#include "netput/gmean.hpp"
#include "netput/technology.hpp"

namespace netput {

struct GridSpec {
  std::size_t resolution = 101;  // points per axis, >= 2
  // Upper bound on each expansion delta_k over K_g (in support order).
  // Left empty, it is computed from single-coordinate programs.
  Vector delta_max;
};

struct GridResult {
  ExtReal lower_bound = ExtReal::neg_infinity();
  // No feasible delta can beat this value.
  ExtReal upper_envelope = ExtReal::neg_infinity();
  Vector argmax;  // delta on all coordinates, zero off K_g
  std::size_t feasible_points = 0;
};

// Scans a grid of the first d_g - 1 expansions; the last expansion is set to
// its largest feasible value on each grid line. W is applied to u - z = delta*g.
GridResult grid_search(const Technology& tech, const Vector& z, const Direction& g, const UtilitySpec& spec,
                       const GridSpec& grid);

// max over data points a >= z of the normalized p-mean of (a_k - z_k) / g_k.
ExtReal fdh_closed_form(const std::vector<Vector>& points, const Vector& z, const Direction& g, PParam p);

// Largest W(v) over a grid of the budget set {v >= 0 : w.v = c}.
double budget_line_max(const UtilitySpec& spec, const Vector& w, double c, std::size_t resolution);

}  // namespace netput

#endif
