#ifndef NETPUT_TECHNOLOGY_HPP
#define NETPUT_TECHNOLOGY_HPP

// Production sets over netput vectors (inputs negative, outputs positive).

#include <cstddef>
#include <vector>

#include "netput/extended_real.hpp"
#include "netput/gmean.hpp"
#include "netput/lp.hpp"
#include "netput/vertices.hpp"

namespace netput {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kImprovementTol = 1e-7;

class Technology {
 public:
  enum class Kind { VrsHull, Fdh, HRep };

  // {u : u <= sum t_a a, t in the simplex}
  static Technology vrs_hull(std::vector<Vector> points);
  // union of {u : u <= a}
  static Technology fdh(std::vector<Vector> points);
  // {u : normal_i.u <= rhs_i}
  static Technology hrep(std::vector<Halfspace> constraints);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool convex() const { return kind_ != Kind::Fdh; }
  const std::vector<Vector>& points() const { return points_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  // Image of the set under u -> l (.) u for a positive vector l.
  Technology scaled(const Vector& l) const;

 private:
  Technology(Kind k, std::size_t d) : kind_(k), dim_(d) {}
  Kind kind_;
  std::size_t dim_;
  std::vector<Vector> points_;
  std::vector<Halfspace> halfspaces_;
};

const char* technology_kind_name(Technology::Kind k);

struct EfficiencyStatus {
  enum class Kind { Infeasible, Efficient, WeaklyEfficient, Inefficient };
  Kind kind = Kind::Infeasible;
  // WeaklyEfficient: the coordinates of K that admit no improvement.
  std::vector<std::size_t> witness;
};

const char* efficiency_status_name(EfficiencyStatus::Kind k);

bool contains(const Technology& tech, const Vector& z);

// Pi_z(w) = sup { w.u : u in T, u >= z }.
ExtReal dominating_profit(const Technology& tech, const Vector& z, const Vector& w);

// Pi_{z,g}(w): as Pi_z with u_k = z_k for every k outside K_g.
ExtReal restricted_profit(const Technology& tech, const Vector& z, const Direction& g, const Vector& w);

EfficiencyStatus classify(const Technology& tech, const Vector& z, const std::vector<std::size_t>& k_set);

std::vector<Vector> dominating_vertices(const Technology& tech, const Vector& z);

// ---- building blocks shared by the solvers

// { (v, aux) : base + sum_j v_j columns[j] in T } for a convex technology.
// The first columns.size() variables are v (nonnegative unless `free_v`).
// The first technology_row_count(tech) rows describe membership and carry
// the multipliers read by prices_from_duals.
Polyhedron preimage(const Technology& tech, const Vector& base, const std::vector<Vector>& columns,
                    bool free_v = false);
std::size_t technology_row_count(const Technology& tech);
// Netput prices from LP multipliers of a preimage polyhedron.
Vector prices_from_duals(const Technology& tech, const Vector& duals);

// Unit vectors e_k for k in `coords`, scaled by `scale[k]` when given.
std::vector<Vector> coordinate_columns(std::size_t d, const std::vector<std::size_t>& coords,
                                       const Vector* scale = nullptr);

// sup { c.(u - z) : u in T_z, u_k = z_k for k outside `movable` } with c >= 0
// on `movable`. -inf when z is not in T.
ExtReal max_gain(const Technology& tech, const Vector& z, const Vector& c,
                 const std::vector<std::size_t>& movable);

// Verifies that T_z is bounded (halfspace technologies only); Config error otherwise.
void check_bounded(const Technology& tech, const Vector& z);

// Data points a >= z (within the membership tolerance).
std::vector<std::size_t> dominating_points(const Technology& tech, const Vector& z);

}  // namespace netput

#endif
