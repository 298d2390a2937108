#include "netput/concave.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "netput/error.hpp"

namespace netput {

namespace {

struct Inequality {
  Eigen::VectorXd a;  // a.x <= b
  double b;
  long var = -1;  // nonnegativity row of this variable, if any
};

constexpr double kEqualityTol = 1e-9;
constexpr int kMaxNewton = 4000;

// Smooth objective phi(x) to be minimized, restricted to `coords`.
class Objective {
 public:
  Objective(const SeparableForm& form, bool minimize, std::vector<std::size_t> coords, Vector a,
            Vector t, double scale)
      : form_(form), minimize_(minimize), coords_(std::move(coords)), a_(std::move(a)),
        t_(std::move(t)), scale_(scale) {}

  bool domain_ok(const Eigen::VectorXd& x) const {
    for (std::size_t c : coords_)
      if (!(x(static_cast<Eigen::Index>(c)) > 0.0)) return false;
    return true;
  }

  double value(const Eigen::VectorXd& x) const {
    if (coords_.empty()) return 0.0;
    if (minimize_) {
      double s = 0.0;
      for (std::size_t i = 0; i < coords_.size(); ++i)
        s += std::pow(a_[i] * x(static_cast<Eigen::Index>(coords_[i])), form_.p);
      return s / scale_;
    }
    if (form_.kind == SeparableForm::Kind::Geometric) {
      double s = 0.0;
      for (std::size_t i = 0; i < coords_.size(); ++i)
        s -= t_[i] * std::log(a_[i] * x(static_cast<Eigen::Index>(coords_[i])));
      return s;
    }
    const double p = form_.p;
    std::vector<double> y(coords_.size());
    double ymax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      y[i] = p * std::log(a_[i] * x(static_cast<Eigen::Index>(coords_[i])));
      ymax = std::max(ymax, y[i]);
    }
    double s = 0.0;
    for (double v : y) s += std::exp(v - ymax);
    return -(ymax + std::log(s)) / p;
  }

  void derivatives(const Eigen::VectorXd& x, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const std::size_t n = coords_.size();
    if (n == 0) return;
    Eigen::VectorXd xs(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) xs(static_cast<Eigen::Index>(i)) = x(static_cast<Eigen::Index>(coords_[i]));
    Eigen::VectorXd gl = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd hl = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (minimize_) {
      const double p = form_.p;
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        double ap = std::pow(a_[i], p);
        gl(ii) = p * ap * std::pow(xs(ii), p - 1.0) / scale_;
        hl(ii, ii) = p * (p - 1.0) * ap * std::pow(xs(ii), p - 2.0) / scale_;
      }
    } else if (form_.kind == SeparableForm::Kind::Geometric) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        gl(ii) = -t_[i] / xs(ii);
        hl(ii, ii) = t_[i] / (xs(ii) * xs(ii));
      }
    } else {
      const double p = form_.p;
      Eigen::VectorXd y(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i)
        y(static_cast<Eigen::Index>(i)) = p * std::log(a_[i] * xs(static_cast<Eigen::Index>(i)));
      Eigen::VectorXd pi = (y.array() - y.maxCoeff()).exp();
      pi /= pi.sum();
      Eigen::VectorXd u = pi.array() / xs.array();
      gl = -u;
      hl = p * u * u.transpose();
      hl.diagonal() += ((1.0 - p) * pi.array() / xs.array().square()).matrix();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto ci = static_cast<Eigen::Index>(coords_[i]);
      grad(ci) += gl(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < n; ++j)
        hess(ci, static_cast<Eigen::Index>(coords_[j])) += hl(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }

 private:
  const SeparableForm& form_;
  bool minimize_;
  std::vector<std::size_t> coords_;
  Vector a_, t_;
  double scale_;
};

Vector to_vector(const Eigen::VectorXd& v) { return Vector(v.data(), v.data() + v.size()); }

}  // namespace

ConcaveResult solve_concave(const ConcaveProgram& cp, double tol) {
  const Polyhedron& poly = cp.feasible;
  const SeparableForm& form = cp.objective;
  const bool minimize = cp.sense == ConcaveProgram::Sense::Minimize;
  if (minimize) {
    if (form.kind != SeparableForm::Kind::Power || !(form.p > 1.0))
      fail(ErrorCode::Unsupported, "convex minimization needs a power form with p > 1");
  } else if (!form.quasi_concave() || form.kind == SeparableForm::Kind::Min) {
    fail(ErrorCode::Unsupported, "concave maximization needs a power form with p < 1 or a geometric form");
  }
  if (!(tol > 0.0)) fail(ErrorCode::Domain, "tolerance must be positive");
  const std::size_t n = poly.num_vars;
  for (std::size_t c : form.coords)
    if (c >= n || poly.free[c]) fail(ErrorCode::Domain, "objective coordinates must be nonnegative variables");

  ConcaveResult res;

  // Inequalities in a.x <= b form, equalities kept aside.
  std::vector<Inequality> ineq;
  std::vector<std::pair<Eigen::VectorXd, double>> eq;
  for (const auto& r : poly.rows) {
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(r.coeffs.data(), static_cast<Eigen::Index>(n));
    if (r.sense == RowSense::LessEqual) ineq.push_back({a, r.rhs});
    else if (r.sense == RowSense::GreaterEqual) ineq.push_back({-a, -r.rhs});
    else eq.emplace_back(a, r.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (poly.free[j]) continue;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    a(static_cast<Eigen::Index>(j)) = -1.0;
    ineq.push_back({a, 0.0, static_cast<long>(j)});
  }

  LpSolution start = maximize(poly, Vector(n, 0.0));
  if (start.status == LpStatus::Infeasible) {
    res.status = ConcaveStatus::Infeasible;
    return res;
  }
  if (start.status != LpStatus::Optimal) fail(ErrorCode::SolverFailure, "feasibility problem failed");

  // Implicit equalities and a relative-interior point.
  std::vector<bool> implicit(ineq.size(), false), witnessed(ineq.size(), false);
  std::vector<Eigen::VectorXd> witnesses;
  auto slack = [&](std::size_t i, const Eigen::VectorXd& x) { return ineq[i].b - ineq[i].a.dot(x); };
  auto eq_tol = [&](std::size_t i) { return kEqualityTol * (1.0 + std::abs(ineq[i].b)); };
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    if (witnessed[i]) continue;
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = -ineq[i].a(static_cast<Eigen::Index>(j));
    LpSolution s = maximize(poly, c);
    if (s.status == LpStatus::Unbounded) fail(ErrorCode::Config, "feasible set is unbounded");
    if (s.status != LpStatus::Optimal) fail(ErrorCode::SolverFailure, "slack problem failed");
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(s.x.data(), static_cast<Eigen::Index>(n));
    if (slack(i, x) <= eq_tol(i)) {
      implicit[i] = true;
      continue;
    }
    witnesses.push_back(x);
    for (std::size_t j = 0; j < ineq.size(); ++j)
      if (!witnessed[j] && slack(j, x) > eq_tol(j)) witnessed[j] = true;
  }
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(start.x.data(), static_cast<Eigen::Index>(n));
  if (!witnesses.empty()) {
    x0.setZero();
    for (const auto& w : witnesses) x0 += w;
    x0 /= static_cast<double>(witnesses.size());
  }

  // Objective coordinates pinned at zero.
  std::vector<std::size_t> coords;
  Vector a, t;
  for (std::size_t k = 0; k < form.coords.size(); ++k) {
    bool blocked = false;
    for (std::size_t i = 0; i < ineq.size(); ++i)
      if (implicit[i] && ineq[i].var == static_cast<long>(form.coords[k])) blocked = true;
    if (blocked) {
      res.blocked.push_back(form.coords[k]);
      x0(static_cast<Eigen::Index>(form.coords[k])) = 0.0;
      continue;
    }
    coords.push_back(form.coords[k]);
    a.push_back(form.a[k]);
    if (form.kind == SeparableForm::Kind::Geometric) t.push_back(form.t[k]);
  }
  auto finish = [&](const Eigen::VectorXd& x) {
    res.x = to_vector(x);
    for (std::size_t c : res.blocked) res.x[c] = 0.0;
    res.value = form.evaluate(res.x).to_double();
  };
  if (!res.blocked.empty() && !minimize && form.absorbing()) {
    res.absorbed = true;
    res.status = ConcaveStatus::Optimal;
    res.x = to_vector(x0);
    res.value = 0.0;
    return res;
  }
  if (coords.empty()) {
    res.status = ConcaveStatus::Optimal;
    finish(x0);
    return res;
  }

  // Affine hull: x = x0 + Z y.
  std::vector<Eigen::VectorXd> eq_rows;
  for (const auto& e : eq) eq_rows.push_back(e.first);
  for (std::size_t i = 0; i < ineq.size(); ++i)
    if (implicit[i]) eq_rows.push_back(ineq[i].a);
  Eigen::MatrixXd z;
  if (eq_rows.empty()) {
    z = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  } else {
    Eigen::MatrixXd e(static_cast<Eigen::Index>(eq_rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < eq_rows.size(); ++i) {
      double nrm = eq_rows[i].norm();
      e.row(static_cast<Eigen::Index>(i)) = (eq_rows[i] / (nrm > 0 ? nrm : 1.0)).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
    z = svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - rank);
  }
  std::vector<std::size_t> barrier;
  for (std::size_t i = 0; i < ineq.size(); ++i)
    if (!implicit[i]) barrier.push_back(i);

  double scale = 1.0;
  if (minimize) {
    scale = 0.0;
    for (std::size_t i = 0; i < coords.size(); ++i)
      scale += std::pow(a[i] * x0(static_cast<Eigen::Index>(coords[i])), form.p);
    if (!(scale > 0.0)) scale = 1.0;
  }
  Objective obj(form, minimize, coords, a, t, scale);
  if (z.cols() == 0 || !obj.domain_ok(x0)) {
    res.status = ConcaveStatus::Optimal;
    finish(x0);
    return res;
  }

  const double m = static_cast<double>(std::max<std::size_t>(barrier.size(), 1));
  double tau = 1.0;
  Eigen::VectorXd x = x0;
  auto barrier_value = [&](const Eigen::VectorXd& v, double tau_) {
    double f = tau_ * obj.value(v);
    for (std::size_t i : barrier) f -= std::log(slack(i, v));
    return f;
  };
  auto strictly_inside = [&](const Eigen::VectorXd& v) {
    for (std::size_t i : barrier)
      if (!(slack(i, v) > 0.0)) return false;
    return obj.domain_ok(v);
  };

  const auto nv = static_cast<Eigen::Index>(n);
  for (;;) {
    // centering
    bool stalled = false;
    for (;;) {
      if (++res.newton_steps > kMaxNewton) {
        finish(x);
        res.status = ConcaveStatus::NonConvergence;
        return res;
      }
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(nv);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(nv, nv);
      obj.derivatives(x, grad, hess);
      grad *= tau;
      hess *= tau;
      for (std::size_t i : barrier) {
        double s = slack(i, x);
        grad += ineq[i].a / s;
        hess += ineq[i].a * ineq[i].a.transpose() / (s * s);
      }
      Eigen::VectorXd gr = z.transpose() * grad;
      Eigen::MatrixXd hr = z.transpose() * hess * z;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hr);
      Eigen::VectorXd step = ldlt.solve(-gr);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        Eigen::MatrixXd reg = hr;
        reg.diagonal().array() += 1e-12 * (1.0 + hr.diagonal().cwiseAbs().maxCoeff());
        step = reg.ldlt().solve(-gr);
        if (!step.allFinite()) {
          stalled = true;
          break;
        }
      }
      double decrement = -gr.dot(step);
      double f0 = barrier_value(x, tau);
      if (decrement / 2.0 <= 1e-10 * std::max(1.0, std::abs(f0))) break;
      Eigen::VectorXd dx = z * step;
      double s = 1.0;
      while (s > 1e-14 && !strictly_inside(x + s * dx)) s *= 0.5;
      while (s > 1e-14 && barrier_value(x + s * dx, tau) > f0 - 0.25 * s * decrement) s *= 0.5;
      if (s <= 1e-14) {
        stalled = true;
        break;
      }
      x += s * dx;
    }
    if (m / tau < tol || stalled) {
      finish(x);
      res.status = (m / tau < std::max(tol, 1e-6)) ? ConcaveStatus::Optimal : ConcaveStatus::NonConvergence;
      return res;
    }
    tau *= 10.0;
  }
}

}  // namespace netput
