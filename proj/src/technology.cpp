#include "netput/technology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netput/error.hpp"

namespace netput {

namespace {

void require_finite(const Vector& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorCode::Domain, std::string(what) + " must be finite");
}

void require_dim(const Technology& tech, const Vector& z, const char* what) {
  if (z.size() != tech.dim())
    fail(ErrorCode::DimensionMismatch, std::string(what) + " has the wrong dimension");
  require_finite(z, what);
}

std::vector<std::size_t> all_coords(std::size_t d) {
  std::vector<std::size_t> k(d);
  std::iota(k.begin(), k.end(), std::size_t{0});
  return k;
}

}  // namespace

Technology Technology::vrs_hull(std::vector<Vector> points) {
  if (points.empty()) fail(ErrorCode::Config, "technology needs at least one data point");
  Technology t(Kind::VrsHull, points.front().size());
  if (t.dim_ == 0) fail(ErrorCode::Config, "netput vectors need at least one coordinate");
  for (const auto& p : points) {
    if (p.size() != t.dim_) fail(ErrorCode::DimensionMismatch, "data points differ in dimension");
    require_finite(p, "data point");
  }
  t.points_ = std::move(points);
  return t;
}

Technology Technology::fdh(std::vector<Vector> points) {
  Technology t = vrs_hull(std::move(points));
  t.kind_ = Kind::Fdh;
  return t;
}

Technology Technology::hrep(std::vector<Halfspace> constraints) {
  if (constraints.empty()) fail(ErrorCode::Config, "halfspace technology needs constraints");
  Technology t(Kind::HRep, constraints.front().normal.size());
  if (t.dim_ == 0) fail(ErrorCode::Config, "netput vectors need at least one coordinate");
  for (const auto& h : constraints) {
    if (h.normal.size() != t.dim_) fail(ErrorCode::DimensionMismatch, "constraints differ in dimension");
    require_finite(h.normal, "constraint normal");
    if (!std::isfinite(h.rhs)) fail(ErrorCode::Domain, "constraint bound must be finite");
  }
  t.halfspaces_ = std::move(constraints);
  return t;
}

Technology Technology::scaled(const Vector& l) const {
  if (l.size() != dim_) fail(ErrorCode::DimensionMismatch, "scaling vector has the wrong dimension");
  for (double x : l)
    if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::Domain, "scaling must be positive");
  Technology t = *this;
  for (auto& p : t.points_)
    for (std::size_t k = 0; k < dim_; ++k) p[k] *= l[k];
  for (auto& h : t.halfspaces_)
    for (std::size_t k = 0; k < dim_; ++k) h.normal[k] /= l[k];
  return t;
}

const char* technology_kind_name(Technology::Kind k) {
  switch (k) {
    case Technology::Kind::VrsHull: return "vrs";
    case Technology::Kind::Fdh: return "fdh";
    case Technology::Kind::HRep: return "hrep";
  }
  return "unknown";
}

const char* efficiency_status_name(EfficiencyStatus::Kind k) {
  switch (k) {
    case EfficiencyStatus::Kind::Infeasible: return "infeasible";
    case EfficiencyStatus::Kind::Efficient: return "efficient";
    case EfficiencyStatus::Kind::WeaklyEfficient: return "weakly-efficient";
    case EfficiencyStatus::Kind::Inefficient: return "inefficient";
  }
  return "unknown";
}

std::vector<Vector> coordinate_columns(std::size_t d, const std::vector<std::size_t>& coords,
                                       const Vector* scale) {
  std::vector<Vector> cols;
  for (std::size_t k : coords) {
    Vector c(d, 0.0);
    c[k] = scale ? (*scale)[k] : 1.0;
    cols.push_back(std::move(c));
  }
  return cols;
}

std::size_t technology_row_count(const Technology& tech) {
  return tech.kind() == Technology::Kind::HRep ? tech.halfspaces().size() : tech.dim();
}

Polyhedron preimage(const Technology& tech, const Vector& base, const std::vector<Vector>& columns,
                    bool free_v) {
  if (!tech.convex()) fail(ErrorCode::ConvexityRequired, "polyhedral description needs a convex technology");
  const std::size_t d = tech.dim();
  const std::size_t nv = columns.size();
  Polyhedron poly(nv);
  if (free_v) poly.free.assign(nv, true);
  if (tech.kind() == Technology::Kind::VrsHull) {
    const auto& pts = tech.points();
    poly.add_vars(pts.size());
    for (std::size_t k = 0; k < d; ++k) {
      Vector row(nv + pts.size(), 0.0);
      for (std::size_t j = 0; j < nv; ++j) row[j] = columns[j][k];
      for (std::size_t a = 0; a < pts.size(); ++a) row[nv + a] = -pts[a][k];
      poly.add_row(std::move(row), RowSense::LessEqual, -base[k]);
    }
    Vector simplex(nv + pts.size(), 0.0);
    for (std::size_t a = 0; a < pts.size(); ++a) simplex[nv + a] = 1.0;
    poly.add_row(std::move(simplex), RowSense::Equal, 1.0);
  } else {
    for (const auto& h : tech.halfspaces()) {
      Vector row(nv, 0.0);
      double nb = 0.0;
      for (std::size_t k = 0; k < d; ++k) nb += h.normal[k] * base[k];
      for (std::size_t j = 0; j < nv; ++j)
        for (std::size_t k = 0; k < d; ++k) row[j] += h.normal[k] * columns[j][k];
      poly.add_row(std::move(row), RowSense::LessEqual, h.rhs - nb);
    }
  }
  return poly;
}

Vector prices_from_duals(const Technology& tech, const Vector& duals) {
  const std::size_t d = tech.dim();
  Vector w(d, 0.0);
  if (tech.kind() == Technology::Kind::HRep) {
    const auto& hs = tech.halfspaces();
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t k = 0; k < d; ++k) w[k] += std::max(0.0, duals[i]) * hs[i].normal[k];
  } else {
    for (std::size_t k = 0; k < d; ++k) w[k] = duals[k];
  }
  for (double& x : w) x = std::max(0.0, x);
  return w;
}

std::vector<std::size_t> dominating_points(const Technology& tech, const Vector& z) {
  std::vector<std::size_t> out;
  const auto& pts = tech.points();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    bool dom = true;
    for (std::size_t k = 0; k < z.size() && dom; ++k)
      if (pts[a][k] < z[k] - kMembershipTol * (1.0 + std::abs(z[k]))) dom = false;
    if (dom) out.push_back(a);
  }
  return out;
}

bool contains(const Technology& tech, const Vector& z) {
  require_dim(tech, z, "netput vector");
  switch (tech.kind()) {
    case Technology::Kind::Fdh: return !dominating_points(tech, z).empty();
    case Technology::Kind::HRep:
      for (const auto& h : tech.halfspaces()) {
        double s = 0.0;
        for (std::size_t k = 0; k < z.size(); ++k) s += h.normal[k] * z[k];
        if (s > h.rhs + kMembershipTol * (1.0 + std::abs(h.rhs))) return false;
      }
      return true;
    case Technology::Kind::VrsHull: {
      Polyhedron poly = preimage(tech, z, {});
      LpSolution s = maximize(poly, Vector(poly.num_vars, 0.0));
      return s.status == LpStatus::Optimal;
    }
  }
  return false;
}

void check_bounded(const Technology& tech, const Vector& z) {
  if (tech.kind() != Technology::Kind::HRep) return;
  const std::size_t d = tech.dim();
  Polyhedron poly = preimage(tech, z, coordinate_columns(d, all_coords(d)));
  LpSolution s = maximize(poly, Vector(d, 1.0));
  if (s.status == LpStatus::Unbounded)
    fail(ErrorCode::Config, "halfspace technology is unbounded above on the dominating set");
}

ExtReal max_gain(const Technology& tech, const Vector& z, const Vector& c,
                 const std::vector<std::size_t>& movable) {
  require_dim(tech, z, "netput vector");
  if (c.size() != tech.dim()) fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  if (tech.kind() == Technology::Kind::Fdh) {
    auto dom = dominating_points(tech, z);
    if (dom.empty()) return ExtReal::neg_infinity();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a : dom) {
      double s = 0.0;
      for (std::size_t k : movable) s += c[k] * std::max(0.0, tech.points()[a][k] - z[k]);
      best = std::max(best, s);
    }
    return ExtReal(best);
  }
  check_bounded(tech, z);
  Polyhedron poly = preimage(tech, z, coordinate_columns(tech.dim(), movable));
  Vector obj(poly.num_vars, 0.0);
  for (std::size_t j = 0; j < movable.size(); ++j) obj[j] = c[movable[j]];
  LpSolution s = maximize(poly, obj);
  if (s.status == LpStatus::Infeasible) return ExtReal::neg_infinity();
  if (s.status == LpStatus::Unbounded) return ExtReal::pos_infinity();
  return ExtReal(std::max(0.0, s.objective));
}

namespace {

ExtReal profit(const Technology& tech, const Vector& z, const Vector& w,
               const std::vector<std::size_t>& movable) {
  require_dim(tech, z, "netput vector");
  if (w.size() != tech.dim()) fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  for (double x : w)
    if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorCode::Domain, "prices must be finite and nonnegative");
  ExtReal gain = max_gain(tech, z, w, movable);
  if (gain.is_neg_infinity()) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
  if (gain.is_pos_infinity()) return gain;
  double wz = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) wz += w[k] * z[k];
  return ExtReal(gain.value() + wz);
}

}  // namespace

ExtReal dominating_profit(const Technology& tech, const Vector& z, const Vector& w) {
  return profit(tech, z, w, all_coords(tech.dim()));
}

ExtReal restricted_profit(const Technology& tech, const Vector& z, const Direction& g, const Vector& w) {
  if (g.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
  if (g.is_zero()) fail(ErrorCode::Domain, "direction must have a nonempty support");
  return profit(tech, z, w, g.support());
}

EfficiencyStatus classify(const Technology& tech, const Vector& z, const std::vector<std::size_t>& k_set) {
  require_dim(tech, z, "netput vector");
  if (k_set.empty()) fail(ErrorCode::Domain, "index set must be nonempty");
  for (std::size_t k : k_set)
    if (k >= tech.dim()) fail(ErrorCode::DimensionMismatch, "index set exceeds the dimension");
  EfficiencyStatus st;
  if (!contains(tech, z)) return st;
  const std::size_t d = tech.dim();
  const auto all = all_coords(d);
  std::vector<std::size_t> stuck;
  for (std::size_t k : k_set) {
    Vector e(d, 0.0);
    e[k] = 1.0;
    ExtReal gain = max_gain(tech, z, e, all);
    if (gain.is_neg_infinity()) return st;
    if (gain.is_finite() && gain.value() <= kImprovementTol * (1.0 + std::abs(z[k]))) stuck.push_back(k);
  }
  if (stuck.size() == k_set.size()) {
    st.kind = EfficiencyStatus::Kind::Efficient;
    return st;
  }
  if (!stuck.empty()) {
    st.kind = EfficiencyStatus::Kind::WeaklyEfficient;
    st.witness = stuck;
    return st;
  }
  // Every coordinate improves on its own; convex sets then improve all at once.
  st.kind = EfficiencyStatus::Kind::Inefficient;
  if (tech.kind() == Technology::Kind::Fdh) {
    bool strict = false;
    for (std::size_t a : dominating_points(tech, z)) {
      bool all_up = true;
      for (std::size_t k : k_set)
        if (tech.points()[a][k] - z[k] <= kImprovementTol * (1.0 + std::abs(z[k]))) all_up = false;
      if (all_up) strict = true;
    }
    if (!strict) st.kind = EfficiencyStatus::Kind::WeaklyEfficient;
  }
  return st;
}

std::vector<Vector> dominating_vertices(const Technology& tech, const Vector& z) {
  require_dim(tech, z, "netput vector");
  if (!contains(tech, z)) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
  const std::size_t d = tech.dim();
  std::vector<Vector> out;
  if (tech.kind() == Technology::Kind::Fdh) {
    for (std::size_t a : dominating_points(tech, z)) out.push_back(tech.points()[a]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  check_bounded(tech, z);
  Polyhedron poly = preimage(tech, z, coordinate_columns(d, all_coords(d)));
  std::vector<Vector> deltas;
  if (tech.kind() == Technology::Kind::HRep) {
    if (d > kMaxEnumerationDim) fail(ErrorCode::Unsupported, "vertex enumeration is limited to dimension 3");
    deltas = projected_basic_points(poly, d);
  } else {
    deltas = extreme_points(projected_basic_points(poly, d));
  }
  for (auto& v : deltas) {
    for (std::size_t k = 0; k < d; ++k) v[k] += z[k];
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace netput
