#ifndef NETPUT_VERTICES_HPP
#define NETPUT_VERTICES_HPP

// Vertex enumeration for small polytopes by exhaustive basis search.

#include <cstddef>
#include <vector>

#include "netput/lp.hpp"

namespace netput {

struct Halfspace {
  Vector normal;  // normal.x <= rhs
  double rhs = 0.0;
};

struct Box {
  Vector lower, upper;
};

inline constexpr std::size_t kMaxEnumerationDim = 3;

// All vertices of {x in box : normal_i.x <= rhs_i}, deduplicated at 1e-9 and
// sorted lexicographically. Dimension above 3 is unsupported.
std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& constraints, const Box& box);

// Candidate vertices of the projection of a bounded polyhedron onto its first
// `keep` variables: the projections of all basic feasible solutions. Throws
// Unsupported when more than `budget` bases would have to be examined.
std::vector<Vector> projected_basic_points(const Polyhedron& poly, std::size_t keep,
                                           std::size_t budget = 400000);

// Drops points that are convex combinations of the remaining ones.
std::vector<Vector> extreme_points(std::vector<Vector> points);

}  // namespace netput

#endif
