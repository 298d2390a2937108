#ifndef NETPUT_CONCAVE_HPP
#define NETPUT_CONCAVE_HPP

// Smooth concave maximization (and convex power-sum minimization) over a
// polyhedron by a log-barrier Newton method in the affine hull of the
// feasible set.

#include "netput/gmean.hpp"
#include "netput/lp.hpp"

namespace netput {

struct ConcaveProgram {
  enum class Sense { Maximize, Minimize };
  Polyhedron feasible;
  // Coordinates of `objective` index the polyhedron's variables.
  SeparableForm objective;
  Sense sense = Sense::Maximize;
};

enum class ConcaveStatus { Optimal, Infeasible, NonConvergence };

struct ConcaveResult {
  ConcaveStatus status = ConcaveStatus::NonConvergence;
  Vector x;
  double value = 0.0;
  // Some objective coordinate is identically zero on the feasible set.
  bool absorbed = false;
  std::vector<std::size_t> blocked;  // objective coordinates fixed at zero
  int newton_steps = 0;
};

// Maximize requires a quasi-concave Power (p < 1) or Geometric form;
// Minimize requires a Power form with p > 1. The feasible set must be bounded.
ConcaveResult solve_concave(const ConcaveProgram& cp, double tol = 1e-10);

}  // namespace netput

#endif
