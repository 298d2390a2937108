#include "netput/vertices.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "netput/error.hpp"

namespace netput {

namespace {

constexpr double kDedupTol = 1e-9;

bool same_point(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kDedupTol * (1.0 + std::abs(a[i]))) return false;
  return true;
}

void push_unique(std::vector<Vector>& pts, Vector p) {
  for (const auto& q : pts)
    if (same_point(q, p)) return;
  pts.push_back(std::move(p));
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

std::vector<Vector> projected_basic_points(const Polyhedron& poly, std::size_t keep,
                                           std::size_t budget) {
  const std::size_t n = poly.num_vars;
  if (keep > n) fail(ErrorCode::DimensionMismatch, "projection keeps more variables than exist");
  std::vector<Eigen::VectorXd> eq_a, in_a;
  std::vector<double> eq_b, in_b;
  for (const auto& r : poly.rows) {
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(r.coeffs.data(), static_cast<Eigen::Index>(n));
    if (r.sense == RowSense::Equal) {
      eq_a.push_back(a);
      eq_b.push_back(r.rhs);
    } else {
      in_a.push_back(a);
      in_b.push_back(r.rhs);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (poly.free[j]) continue;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    a(static_cast<Eigen::Index>(j)) = 1.0;
    in_a.push_back(a);
    in_b.push_back(0.0);
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::Index eq_rank = 0;
  if (!eq_a.empty()) {
    Eigen::MatrixXd e(static_cast<Eigen::Index>(eq_a.size()), ni);
    for (std::size_t i = 0; i < eq_a.size(); ++i) e.row(static_cast<Eigen::Index>(i)) = eq_a[i].transpose();
    eq_rank = Eigen::FullPivLU<Eigen::MatrixXd>(e).rank();
  }
  const std::size_t k = n - static_cast<std::size_t>(eq_rank);
  if (k > in_a.size()) return {};
  if (binomial(in_a.size(), k) > static_cast<double>(budget))
    fail(ErrorCode::Unsupported, "vertex enumeration exceeds its combinatorial budget");

  std::vector<Vector> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  const auto rows = static_cast<Eigen::Index>(eq_a.size() + k);
  Eigen::MatrixXd m(rows, ni);
  Eigen::VectorXd rhs(rows);
  for (std::size_t i = 0; i < eq_a.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = eq_a[i].transpose();
    rhs(static_cast<Eigen::Index>(i)) = eq_b[i];
  }
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto r = static_cast<Eigen::Index>(eq_a.size() + i);
      m.row(r) = in_a[pick[i]].transpose();
      rhs(r) = in_b[pick[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (lu.rank() == ni) {
      Eigen::VectorXd x = lu.solve(rhs);
      if (x.allFinite() && (m * x - rhs).norm() <= 1e-9 * (1.0 + rhs.norm())) {
        Vector xv(x.data(), x.data() + x.size());
        if (poly.contains(xv, 1e-9)) push_unique(out, Vector(xv.begin(), xv.begin() + static_cast<long>(keep)));
      }
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == in_a.size() - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> extreme_points(std::vector<Vector> points) {
  for (std::size_t i = 0; i < points.size();) {
    if (points.size() == 1) break;
    const std::size_t d = points[i].size();
    Polyhedron poly(points.size() - 1);
    std::vector<const Vector*> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(&points[j]);
    for (std::size_t c = 0; c < d; ++c) {
      Vector row(others.size());
      for (std::size_t j = 0; j < others.size(); ++j) row[j] = (*others[j])[c];
      poly.add_row(row, RowSense::Equal, points[i][c]);
    }
    poly.add_row(Vector(others.size(), 1.0), RowSense::Equal, 1.0);
    LpSolution s = solve_lp(LinearProgram{poly, Vector(others.size(), 0.0)});
    if (s.status == LpStatus::Optimal) points.erase(points.begin() + static_cast<long>(i));
    else ++i;
  }
  return points;
}

std::vector<Vector> enumerate_vertices(const std::vector<Halfspace>& constraints, const Box& box) {
  const std::size_t d = box.lower.size();
  if (box.upper.size() != d) fail(ErrorCode::DimensionMismatch, "box bounds differ in dimension");
  if (d > kMaxEnumerationDim) fail(ErrorCode::Unsupported, "vertex enumeration is limited to dimension 3");
  Polyhedron poly(d);
  poly.free.assign(d, true);
  for (const auto& h : constraints) poly.add_row(h.normal, RowSense::LessEqual, h.rhs);
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d, 0.0);
    e[k] = 1.0;
    poly.add_row(e, RowSense::LessEqual, box.upper[k]);
    poly.add_row(e, RowSense::GreaterEqual, box.lower[k]);
  }
  return projected_basic_points(poly, d);
}

}  // namespace netput
