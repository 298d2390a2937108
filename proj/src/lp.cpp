#include "netput/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "netput/error.hpp"

namespace netput {

void Polyhedron::add_row(Vector coeffs, RowSense sense, double rhs) {
  if (coeffs.size() != num_vars)
    fail(ErrorCode::DimensionMismatch, "constraint row has the wrong number of coefficients");
  rows.push_back({std::move(coeffs), sense, rhs});
}

std::size_t Polyhedron::add_vars(std::size_t extra) {
  std::size_t first = num_vars;
  num_vars += extra;
  free.resize(num_vars, false);
  for (auto& r : rows) r.coeffs.resize(num_vars, 0.0);
  return first;
}

bool Polyhedron::contains(const Vector& x, double tol) const {
  if (x.size() != num_vars) return false;
  for (std::size_t j = 0; j < num_vars; ++j)
    if (!free[j] && x[j] < -tol) return false;
  for (const auto& r : rows) {
    double s = 0.0;
    for (std::size_t j = 0; j < num_vars; ++j) s += r.coeffs[j] * x[j];
    double scale = 1.0 + std::abs(r.rhs);
    if (r.sense == RowSense::LessEqual && s > r.rhs + tol * scale) return false;
    if (r.sense == RowSense::GreaterEqual && s < r.rhs - tol * scale) return false;
    if (r.sense == RowSense::Equal && std::abs(s - r.rhs) > tol * scale) return false;
  }
  return true;
}

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::SolverFailure: return "solver-failure";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr int kMaxIterations = 200000;

enum class ColumnKind { Structural, Slack, Artificial };

// Standard form: A_std y = b_std (b_std >= 0), y >= 0.
struct StandardForm {
  std::size_t m = 0, n = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::vector<ColumnKind> kind;
  std::vector<std::size_t> source;   // original variable of a structural column
  std::vector<double> source_sign;   // +1 for x+, -1 for x-
  std::vector<double> row_sign;      // +1 or -1 applied to the original row
  std::vector<std::size_t> initial_basis;
};

StandardForm to_standard(const Polyhedron& poly) {
  StandardForm sf;
  sf.m = poly.rows.size();
  // structural columns
  for (std::size_t j = 0; j < poly.num_vars; ++j) {
    sf.kind.push_back(ColumnKind::Structural);
    sf.source.push_back(j);
    sf.source_sign.push_back(1.0);
    if (poly.free[j]) {
      sf.kind.push_back(ColumnKind::Structural);
      sf.source.push_back(j);
      sf.source_sign.push_back(-1.0);
    }
  }
  const std::size_t n_struct = sf.kind.size();
  // row normalization and auxiliary columns
  std::vector<RowSense> sense(sf.m);
  sf.row_sign.assign(sf.m, 1.0);
  for (std::size_t i = 0; i < sf.m; ++i) {
    sense[i] = poly.rows[i].sense;
    if (poly.rows[i].rhs < 0) {
      sf.row_sign[i] = -1.0;
      if (sense[i] == RowSense::LessEqual) sense[i] = RowSense::GreaterEqual;
      else if (sense[i] == RowSense::GreaterEqual) sense[i] = RowSense::LessEqual;
    }
  }
  std::size_t n_aux = 0;
  for (std::size_t i = 0; i < sf.m; ++i)
    n_aux += sense[i] == RowSense::GreaterEqual ? 2 : 1;
  sf.n = n_struct + n_aux;
  sf.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sf.m), static_cast<Eigen::Index>(sf.n));
  sf.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sf.m));
  sf.initial_basis.resize(sf.m);
  std::size_t col = n_struct;
  for (std::size_t i = 0; i < sf.m; ++i) {
    const auto& row = poly.rows[i];
    const double s = sf.row_sign[i];
    for (std::size_t c = 0; c < n_struct; ++c)
      sf.a(i, c) = s * sf.source_sign[c] * row.coeffs[sf.source[c]];
    sf.b(i) = s * row.rhs;
    if (sense[i] == RowSense::LessEqual) {
      sf.a(i, col) = 1.0;
      sf.kind.push_back(ColumnKind::Slack);
      sf.initial_basis[i] = col++;
    } else if (sense[i] == RowSense::GreaterEqual) {
      sf.a(i, col) = -1.0;
      sf.kind.push_back(ColumnKind::Slack);
      ++col;
      sf.a(i, col) = 1.0;
      sf.kind.push_back(ColumnKind::Artificial);
      sf.initial_basis[i] = col++;
    } else {
      sf.a(i, col) = 1.0;
      sf.kind.push_back(ColumnKind::Artificial);
      sf.initial_basis[i] = col++;
    }
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf)
      : m_(sf.m), n_(sf.n), t_(static_cast<Eigen::Index>(sf.m), static_cast<Eigen::Index>(sf.n + 1)),
        basis_(sf.initial_basis), active_row_(sf.m, true) {
    t_.leftCols(static_cast<Eigen::Index>(n_)) = sf.a;
    t_.col(static_cast<Eigen::Index>(n_)) = sf.b;
  }

  // Runs Bland's-rule simplex maximizing cost over the allowed columns.
  // Returns false on unboundedness; sets `failed` on iteration exhaustion.
  bool optimize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed, int& iterations,
                bool& failed) {
    failed = false;
    for (;;) {
      if (++iterations > kMaxIterations) {
        failed = true;
        return true;
      }
      // reduced costs
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_ && enter == n_; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        double d = cost(static_cast<Eigen::Index>(j));
        for (std::size_t i = 0; i < m_; ++i)
          if (active_row_[i]) d -= cost(static_cast<Eigen::Index>(basis_[i])) * t_(i, j);
        if (d > kCostTol) enter = j;
      }
      if (enter == n_) return true;
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_row_[i]) continue;
        double aij = t_(i, enter);
        if (aij <= kPivotTol) continue;
        double ratio = std::max(0.0, t_(i, n_)) / aij;
        if (leave == m_ || ratio < best - 1e-12 * (1.0 + best) ||
            (std::abs(ratio - best) <= 1e-12 * (1.0 + best) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const auto ri = static_cast<Eigen::Index>(r), ci = static_cast<Eigen::Index>(c);
    t_.row(ri) /= t_(ri, ci);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double f = t_(static_cast<Eigen::Index>(i), ci);
      if (f != 0.0) t_.row(static_cast<Eigen::Index>(i)) -= f * t_.row(ri);
    }
    basis_[r] = c;
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (active_row_[i] && basis_[i] == j) return true;
    return false;
  }

  double entry(std::size_t i, std::size_t j) const {
    return t_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double rhs(std::size_t i) const { return entry(i, n_); }

  std::size_t m_, n_;
  Eigen::MatrixXd t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_row_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const Polyhedron& poly = lp.feasible;
  if (lp.objective.size() != poly.num_vars)
    fail(ErrorCode::DimensionMismatch, "objective has the wrong number of coefficients");
  for (double c : lp.objective)
    if (!std::isfinite(c)) fail(ErrorCode::Domain, "objective coefficients must be finite");
  for (const auto& r : poly.rows) {
    if (!std::isfinite(r.rhs)) fail(ErrorCode::Domain, "constraint data must be finite");
    for (double c : r.coeffs)
      if (!std::isfinite(c)) fail(ErrorCode::Domain, "constraint data must be finite");
  }

  LpSolution sol;
  const StandardForm sf = to_standard(poly);
  Tableau tab(sf);
  const std::size_t m = sf.m, n = sf.n;

  // phase one: drive artificials to zero
  bool any_artificial = false;
  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    if (sf.kind[j] == ColumnKind::Artificial) {
      cost1(static_cast<Eigen::Index>(j)) = -1.0;
      any_artificial = true;
    }
  std::vector<bool> all(n, true);
  bool failed = false;
  if (any_artificial) {
    tab.optimize(cost1, all, sol.iterations, failed);
    if (failed) return sol;
    double infeas = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      scale = std::max(scale, std::abs(sf.b(static_cast<Eigen::Index>(i))));
      if (sf.kind[tab.basis_[i]] == ColumnKind::Artificial) infeas += std::max(0.0, tab.rhs(i));
    }
    if (infeas > 1e-9 * scale) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // pivot remaining artificials out of the basis or drop their rows
    for (std::size_t i = 0; i < m; ++i) {
      if (sf.kind[tab.basis_[i]] != ColumnKind::Artificial) continue;
      std::size_t col = n;
      for (std::size_t j = 0; j < n && col == n; ++j)
        if (sf.kind[j] != ColumnKind::Artificial && !tab.is_basic(j) &&
            std::abs(tab.entry(i, j)) > 1e-7)
          col = j;
      if (col == n) tab.active_row_[i] = false;
      else tab.pivot(i, col);
    }
  }

  // phase two
  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::vector<bool> allowed(n, true);
  for (std::size_t j = 0; j < n; ++j) {
    if (sf.kind[j] == ColumnKind::Artificial) allowed[j] = false;
    if (sf.kind[j] == ColumnKind::Structural)
      cost2(static_cast<Eigen::Index>(j)) = sf.source_sign[j] * lp.objective[sf.source[j]];
  }
  if (!tab.optimize(cost2, allowed, sol.iterations, failed)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  if (failed) return sol;

  // Recompute the basic solution and the duals from the original data.
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.active_row_[i]) {
      rows.push_back(i);
      cols.push_back(tab.basis_[i]);
    }
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd basis(k, k);
  Eigen::VectorXd rhs(k), cb(k);
  for (Eigen::Index r = 0; r < k; ++r) {
    rhs(r) = sf.b(static_cast<Eigen::Index>(rows[r]));
    cb(r) = cost2(static_cast<Eigen::Index>(cols[r]));
    for (Eigen::Index c = 0; c < k; ++c)
      basis(r, c) = sf.a(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
  }
  Eigen::VectorXd xb(k), y(k);
  if (k > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    if (!lu.isInvertible()) return sol;
    xb = lu.solve(rhs);
    y = lu.transpose().solve(cb);
  }
  Eigen::VectorXd ystd = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (Eigen::Index r = 0; r < k; ++r) ystd(static_cast<Eigen::Index>(rows[r])) = y(r);

  Vector ycol(n, 0.0);
  double primal_scale = 1.0;
  for (Eigen::Index r = 0; r < k; ++r) {
    if (xb(r) < -1e-7 * (1.0 + std::abs(rhs(r)))) return sol;
    ycol[cols[r]] = std::max(0.0, xb(r));
    primal_scale = std::max(primal_scale, std::abs(xb(r)));
  }
  sol.x.assign(poly.num_vars, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    if (sf.kind[j] == ColumnKind::Structural) sol.x[sf.source[j]] += sf.source_sign[j] * ycol[j];

  // KKT certificate: dual feasibility of every non-artificial column and a
  // matching dual objective.
  double cmax = 1.0, ymax = 1.0;
  for (Eigen::Index j = 0; j < cost2.size(); ++j) cmax = std::max(cmax, std::abs(cost2(j)));
  for (Eigen::Index i = 0; i < ystd.size(); ++i) ymax = std::max(ymax, std::abs(ystd(i)));
  const double tol = 1e-8 * cmax * ymax * 10.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sf.kind[j] == ColumnKind::Artificial) continue;
    double d = cost2(static_cast<Eigen::Index>(j)) - ystd.dot(sf.a.col(static_cast<Eigen::Index>(j)));
    if (d > tol) return sol;
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < poly.num_vars; ++j) sol.objective += lp.objective[j] * sol.x[j];
  sol.dual_objective = ystd.dot(sf.b);
  if (std::abs(sol.objective - sol.dual_objective) > 1e-8 * (1.0 + std::abs(sol.objective)) * ymax * primal_scale)
    return sol;
  sol.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.duals[i] = sf.row_sign[i] * ystd(static_cast<Eigen::Index>(i));
  sol.status = LpStatus::Optimal;
  return sol;
}

LpSolution maximize(const Polyhedron& poly, const Vector& c) {
  LpSolution s = solve_lp(LinearProgram{poly, c});
  if (s.status == LpStatus::SolverFailure)
    fail(ErrorCode::SolverFailure, "linear programming kernel broke down");
  return s;
}

}  // namespace netput
