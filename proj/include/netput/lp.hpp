#ifndef NETPUT_LP_HPP
#define NETPUT_LP_HPP

// Dense linear programming kernel: two-phase primal simplex with Bland's rule.

#include <cstddef>
#include <vector>

#include "netput/gmean.hpp"

namespace netput {

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vector coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

// { x : rows hold, x_j >= 0 unless free[j] }.
struct Polyhedron {
  std::size_t num_vars = 0;
  std::vector<LinearConstraint> rows;
  std::vector<bool> free;

  explicit Polyhedron(std::size_t n = 0) : num_vars(n), free(n, false) {}

  void add_row(Vector coeffs, RowSense sense, double rhs);
  // Appends `extra` nonnegative variables; existing rows get zero coefficients.
  std::size_t add_vars(std::size_t extra);
  bool contains(const Vector& x, double tol) const;
};

struct LinearProgram {
  Polyhedron feasible;
  Vector objective;  // maximized
};

enum class LpStatus { Optimal, Infeasible, Unbounded, SolverFailure };

const char* lp_status_name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::SolverFailure;
  Vector x;
  double objective = 0.0;
  // Row multipliers, sign convention of a maximization with <= rows:
  // LessEqual rows >= 0, GreaterEqual rows <= 0, Equal rows free.
  Vector duals;
  double dual_objective = 0.0;
  int iterations = 0;
};

LpSolution solve_lp(const LinearProgram& lp);

// Convenience: maximizes c.x over `poly`; throws SolverFailure on breakdown.
LpSolution maximize(const Polyhedron& poly, const Vector& c);

}  // namespace netput

#endif
