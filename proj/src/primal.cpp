#include "netput/primal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netput/concave.hpp"
#include "netput/error.hpp"
#include "netput/vertices.hpp"

namespace netput {

DistanceFamily distance_family(PParam p) {
  if (p.is_neg_infinity()) return DistanceFamily::Directional;
  if (p.is_pos_infinity()) return DistanceFamily::Asymmetric;
  if (p.is_geometric()) return DistanceFamily::MultiplicativeFareLovell;
  if (p.value() == 1.0) return DistanceFamily::FareLovell;
  return DistanceFamily::Generalized;
}

const char* distance_family_name(DistanceFamily f) {
  switch (f) {
    case DistanceFamily::Directional: return "directional";
    case DistanceFamily::MultiplicativeFareLovell: return "multiplicative-fare-lovell";
    case DistanceFamily::FareLovell: return "fare-lovell";
    case DistanceFamily::Asymmetric: return "asymmetric";
    case DistanceFamily::Generalized: return "generalized";
  }
  return "unknown";
}

PrimalMethod primal_method(PParam p) {
  if (p.is_neg_infinity()) return PrimalMethod::DirectionalLp;
  if (p.is_pos_infinity()) return PrimalMethod::AsymmetricLp;
  if (p.is_geometric() || p.value() < 1.0) return PrimalMethod::ConcaveBarrier;
  if (p.value() == 1.0) return PrimalMethod::LinearLp;
  return PrimalMethod::VertexRoute;
}

const char* primal_method_name(PrimalMethod m) {
  switch (m) {
    case PrimalMethod::DirectionalLp: return "lp-directional";
    case PrimalMethod::AsymmetricLp: return "lp-asymmetric";
    case PrimalMethod::LinearLp: return "lp";
    case PrimalMethod::ConcaveBarrier: return "concave-barrier";
    case PrimalMethod::VertexRoute: return "vertex";
  }
  return "unknown";
}

namespace {

struct FormSolution {
  double value = 0.0;
  Vector gain;  // u* - z
  std::string method;
  int newton_steps = 0;
};

// The same form over the first n variables of a polyhedron.
SeparableForm local_form(const SeparableForm& f) {
  SeparableForm l = f;
  std::iota(l.coords.begin(), l.coords.end(), std::size_t{0});
  return l;
}

double eval_finite(const SeparableForm& f, const Vector& v) {
  ExtReal r = f.evaluate(v);
  if (!r.is_finite()) fail(ErrorCode::SolverFailure, "utility overflow");
  return r.value();
}

FormSolution scan_fdh(const Technology& tech, const Vector& z, const SeparableForm& f) {
  const std::size_t d = tech.dim();
  FormSolution best;
  best.method = "fdh-scan";
  bool found = false;
  for (std::size_t a : dominating_points(tech, z)) {
    Vector v(d, 0.0);
    for (std::size_t k : f.coords) v[k] = std::max(0.0, tech.points()[a][k] - z[k]);
    double w = eval_finite(f, v);
    if (!found || w > best.value) {
      found = true;
      best.value = w;
      Vector gain(d, 0.0);
      if (f.kind == SeparableForm::Kind::Min) {
        for (std::size_t j = 0; j < f.coords.size(); ++j) gain[f.coords[j]] = w / f.a[j];
      } else if (f.kind == SeparableForm::Kind::Max) {
        for (std::size_t j = 0; j < f.coords.size(); ++j)
          if (f.a[j] * v[f.coords[j]] == w) {
            gain[f.coords[j]] = v[f.coords[j]];
            break;
          }
      } else {
        gain = v;
      }
      best.gain = std::move(gain);
    }
  }
  return best;
}

Vector clamp_nonneg(const Vector& x, std::size_t n) {
  Vector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = std::max(0.0, x[j]);
  return v;
}

FormSolution solve_convex(const Technology& tech, const Vector& z, const SeparableForm& f) {
  const std::size_t d = tech.dim();
  const std::size_t n = f.coords.size();
  check_bounded(tech, z);
  Polyhedron poly = preimage(tech, z, coordinate_columns(d, f.coords));
  FormSolution out;
  out.gain.assign(d, 0.0);
  auto lp_or_throw = [](const Polyhedron& pl, const Vector& c) {
    LpSolution s = maximize(pl, c);
    if (s.status == LpStatus::Unbounded) fail(ErrorCode::Config, "dominating set is unbounded");
    if (s.status != LpStatus::Optimal) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
    return s;
  };
  switch (f.kind) {
    case SeparableForm::Kind::Min: {
      out.method = "lp-directional";
      const std::size_t s_idx = poly.add_vars(1);
      for (std::size_t j = 0; j < n; ++j) {
        Vector row(poly.num_vars, 0.0);
        row[s_idx] = 1.0;
        row[j] = -f.a[j];
        poly.add_row(std::move(row), RowSense::LessEqual, 0.0);
      }
      Vector c(poly.num_vars, 0.0);
      c[s_idx] = 1.0;
      LpSolution s = lp_or_throw(poly, c);
      out.value = std::max(0.0, s.x[s_idx]);
      for (std::size_t j = 0; j < n; ++j) out.gain[f.coords[j]] = out.value / f.a[j];
      return out;
    }
    case SeparableForm::Kind::Max: {
      out.method = "lp-asymmetric";
      bool found = false;
      for (std::size_t j = 0; j < n; ++j) {
        Vector c(d, 0.0);
        c[f.coords[j]] = f.a[j];
        ExtReal g = max_gain(tech, z, c, {f.coords[j]});
        if (!g.is_finite()) fail(ErrorCode::SolverFailure, "single-coordinate expansion failed");
        if (!found || g.value() > out.value) {
          found = true;
          out.value = g.value();
          out.gain.assign(d, 0.0);
          out.gain[f.coords[j]] = g.value() / f.a[j];
        }
      }
      return out;
    }
    case SeparableForm::Kind::Power:
      if (f.p == 1.0) {
        out.method = "lp";
        Vector c(poly.num_vars, 0.0);
        for (std::size_t j = 0; j < n; ++j) c[j] = f.weight * f.a[j];
        LpSolution s = lp_or_throw(poly, c);
        Vector v = clamp_nonneg(s.x, n);
        for (std::size_t j = 0; j < n; ++j) out.gain[f.coords[j]] = v[j];
        out.value = eval_finite(f, out.gain);
        return out;
      }
      if (f.p > 1.0) {
        out.method = "vertex";
        if (n > kMaxEnumerationDim)
          fail(ErrorCode::Unsupported, "p in (1, inf) on a convex technology needs at most 3 expanding coordinates");
        SeparableForm lf = local_form(f);
        bool found = false;
        for (const Vector& cand : projected_basic_points(poly, n)) {
          Vector v = clamp_nonneg(cand, n);
          double w = eval_finite(lf, v);
          if (!found || w > out.value) {
            found = true;
            out.value = w;
            for (std::size_t j = 0; j < n; ++j) out.gain[f.coords[j]] = v[j];
          }
        }
        if (!found) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
        return out;
      }
      [[fallthrough]];
    case SeparableForm::Kind::Geometric: {
      out.method = "concave-barrier";
      ConcaveProgram cp{poly, local_form(f), ConcaveProgram::Sense::Maximize};
      ConcaveResult r = solve_concave(cp);
      out.newton_steps = r.newton_steps;
      if (r.status == ConcaveStatus::Infeasible) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
      if (r.status == ConcaveStatus::NonConvergence)
        fail(ErrorCode::NonConvergence, "concave solver did not reach its tolerance");
      if (r.absorbed) {
        out.value = 0.0;
        return out;
      }
      Vector v = clamp_nonneg(r.x, n);
      for (std::size_t j = 0; j < n; ++j) out.gain[f.coords[j]] = v[j];
      out.value = eval_finite(f, out.gain);
      return out;
    }
  }
  return out;
}

FormSolution maximize_form(const Technology& tech, const Vector& z, const SeparableForm& f) {
  if (tech.kind() == Technology::Kind::Fdh) return scan_fdh(tech, z, f);
  return solve_convex(tech, z, f);
}

void require_netput(const Technology& tech, const Vector& z) {
  if (z.size() != tech.dim()) fail(ErrorCode::DimensionMismatch, "netput vector has the wrong dimension");
  for (double v : z)
    if (!std::isfinite(v)) fail(ErrorCode::Domain, "netput vector must be finite");
}

std::vector<std::size_t> all_coords(std::size_t d) {
  std::vector<std::size_t> k(d);
  std::iota(k.begin(), k.end(), std::size_t{0});
  return k;
}

EvalResult evaluate_form(const Technology& tech, const Vector& z, const SeparableForm& f,
                         const Direction* g) {
  EvalResult r;
  const std::size_t d = tech.dim();
  if (!contains(tech, z)) return r;
  if (g && g->is_zero()) {
    r.score = ExtReal::pos_infinity();
    r.status = classify(tech, z, all_coords(d));
    return r;
  }
  FormSolution s = maximize_form(tech, z, f);
  r.score = ExtReal(s.value);
  r.method = s.method;
  r.newton_steps = s.newton_steps;
  r.projection = z;
  r.delta_star.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    r.projection[k] += s.gain[k];
    if (!g) r.delta_star[k] = s.gain[k];
    else if (g->in_support(k)) r.delta_star[k] = s.gain[k] / (*g)[k];
  }
  r.status = classify(tech, z, g ? g->support() : f.coords);
  return r;
}

}  // namespace

EvalResult evaluate_p(const Technology& tech, const Vector& z, const Direction& g, PParam p) {
  require_netput(tech, z);
  if (g.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
  if (g.is_zero()) {
    EvalResult r;
    if (!contains(tech, z)) return r;
    r.score = ExtReal::pos_infinity();
    r.status = classify(tech, z, all_coords(tech.dim()));
    return r;
  }
  return evaluate_form(tech, z, separable_form(UtilitySpec::pmean_directional(p, g, true)), &g);
}

EvalResult directional_distance(const Technology& tech, const Vector& z, const Direction& g) {
  return evaluate_p(tech, z, g, PParam::neg_infinity());
}

EvalResult asymmetric_distance(const Technology& tech, const Vector& z, const Direction& g) {
  return evaluate_p(tech, z, g, PParam::pos_infinity());
}

EvalResult evaluate_utility(const Technology& tech, const Vector& z, const UtilitySpec& spec) {
  require_netput(tech, z);
  if (spec.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "utility has the wrong dimension");
  if (const auto* dir = std::get_if<PMeanDirectional>(&spec.variant())) {
    if (dir->direction.dim() != tech.dim())
      fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
    return evaluate_form(tech, z, separable_form(spec), &dir->direction);
  }
  return evaluate_form(tech, z, separable_form(spec), nullptr);
}

// ------------------------------------------------------------ input side

namespace {

struct InputProblem {
  Vector z;                       // (x, y)
  std::vector<std::size_t> used;  // I_x
};

InputProblem input_problem(const Technology& tech, const Vector& x, const Vector& y) {
  if (x.size() + y.size() != tech.dim())
    fail(ErrorCode::DimensionMismatch, "input and output vectors do not match the technology");
  InputProblem ip;
  ip.z = x;
  ip.z.insert(ip.z.end(), y.begin(), y.end());
  require_netput(tech, ip.z);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > 0.0) fail(ErrorCode::Domain, "input netputs must be nonpositive");
    if (x[k] < 0.0) ip.used.push_back(k);
  }
  if (ip.used.empty()) fail(ErrorCode::Domain, "input vector must be nonzero");
  return ip;
}

// { beta in [0,1]^{I_x} : (beta * x, y) in T } with beta first.
Polyhedron input_polyhedron(const Technology& tech, const InputProblem& ip) {
  const std::size_t d = tech.dim();
  Vector base = ip.z;
  std::vector<Vector> cols;
  for (std::size_t k : ip.used) {
    base[k] = 0.0;
    Vector c(d, 0.0);
    c[k] = ip.z[k];
    cols.push_back(std::move(c));
  }
  check_bounded(tech, ip.z);
  Polyhedron poly = preimage(tech, base, cols);
  for (std::size_t j = 0; j < ip.used.size(); ++j) {
    Vector row(poly.num_vars, 0.0);
    row[j] = 1.0;
    poly.add_row(std::move(row), RowSense::LessEqual, 1.0);
  }
  return poly;
}

// Componentwise smallest feasible beta for each dominating data point.
std::vector<Vector> fdh_betas(const Technology& tech, const InputProblem& ip) {
  std::vector<Vector> out;
  for (std::size_t a : dominating_points(tech, ip.z)) {
    Vector b;
    for (std::size_t k : ip.used) b.push_back(std::clamp(tech.points()[a][k] / ip.z[k], 0.0, 1.0));
    out.push_back(std::move(b));
  }
  return out;
}

SeparableForm beta_form(std::size_t m, PParam p) {
  Vector ones(m, 1.0);
  UtilitySpec s = UtilitySpec::pmean_directional(p, Direction(ones), true);
  return separable_form(s);
}

}  // namespace

ExtReal generalized_input_measure(const Technology& tech, const Vector& x, const Vector& y, PParam p) {
  InputProblem ip = input_problem(tech, x, y);
  if (p.is_geometric()) fail(ErrorCode::Domain, "the input measure is defined for p != 0");
  if (!contains(tech, ip.z)) return ExtReal::pos_infinity();
  const std::size_t m = ip.used.size();
  const SeparableForm f = beta_form(m, p);
  if (tech.kind() == Technology::Kind::Fdh) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& b : fdh_betas(tech, ip)) best = std::min(best, eval_finite(f, b));
    return ExtReal(best);
  }
  Polyhedron poly = input_polyhedron(tech, ip);
  auto solve = [&](const Vector& c) {
    LpSolution s = maximize(poly, c);
    if (s.status != LpStatus::Optimal) fail(ErrorCode::SolverFailure, "input measure program failed");
    return s;
  };
  if (p.is_neg_infinity()) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      Vector c(poly.num_vars, 0.0);
      c[j] = -1.0;
      best = std::min(best, std::max(0.0, solve(c).x[j]));
    }
    return ExtReal(best);
  }
  if (p.is_pos_infinity()) {
    const std::size_t s_idx = poly.add_vars(1);
    for (std::size_t j = 0; j < m; ++j) {
      Vector row(poly.num_vars, 0.0);
      row[j] = 1.0;
      row[s_idx] = -1.0;
      poly.add_row(std::move(row), RowSense::LessEqual, 0.0);
    }
    Vector c(poly.num_vars, 0.0);
    c[s_idx] = -1.0;
    return ExtReal(std::max(0.0, solve(c).x[s_idx]));
  }
  const double pv = p.value();
  const SeparableForm lf = local_form(f);
  if (pv == 1.0) {
    Vector c(poly.num_vars, 0.0);
    for (std::size_t j = 0; j < m; ++j) c[j] = -1.0;
    return ExtReal(eval_finite(lf, clamp_nonneg(solve(c).x, m)));
  }
  if (pv > 1.0) {
    ConcaveResult r = solve_concave(ConcaveProgram{poly, lf, ConcaveProgram::Sense::Minimize});
    if (r.status == ConcaveStatus::NonConvergence)
      fail(ErrorCode::NonConvergence, "convex solver did not reach its tolerance");
    if (r.status != ConcaveStatus::Optimal) fail(ErrorCode::SolverFailure, "input measure program failed");
    return ExtReal(eval_finite(lf, clamp_nonneg(r.x, m)));
  }
  if (m > kMaxEnumerationDim)
    fail(ErrorCode::Unsupported, "input measure with p < 1 needs at most 3 used inputs");
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& cand : projected_basic_points(poly, m))
    best = std::min(best, eval_finite(lf, clamp_nonneg(cand, m)));
  if (!std::isfinite(best)) fail(ErrorCode::SolverFailure, "input measure program failed");
  return ExtReal(best);
}

ExtReal fare_lovell_input(const Technology& tech, const Vector& x, const Vector& y) {
  return generalized_input_measure(tech, x, y, PParam::finite(1.0));
}

ExtReal debreu_farrell(const Technology& tech, const Vector& x, const Vector& y) {
  InputProblem ip = input_problem(tech, x, y);
  if (!contains(tech, ip.z)) return ExtReal::pos_infinity();
  if (tech.kind() == Technology::Kind::Fdh) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& b : fdh_betas(tech, ip)) best = std::min(best, *std::max_element(b.begin(), b.end()));
    return ExtReal(best);
  }
  const std::size_t d = tech.dim();
  Vector base = ip.z, col(d, 0.0);
  for (std::size_t k : ip.used) {
    base[k] = 0.0;
    col[k] = ip.z[k];
  }
  check_bounded(tech, ip.z);
  Polyhedron poly = preimage(tech, base, {col});
  Vector c(poly.num_vars, 0.0);
  c[0] = -1.0;
  LpSolution s = maximize(poly, c);
  if (s.status != LpStatus::Optimal) fail(ErrorCode::SolverFailure, "radial input program failed");
  return ExtReal(std::max(0.0, s.x[0]));
}

}  // namespace netput
