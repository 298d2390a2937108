#include "netput/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "netput/error.hpp"

namespace netput {

NormalizationRule NormalizationRule::for_order(PParam p) {
  NormalizationRule r;
  r.kind = dual_regime(p).normalization;
  if (p.is_finite() && !p.is_geometric() && p.value() != 1.0) r.q = p.value() / (p.value() - 1.0);
  return r;
}

const char* normalization_rule_name(NormalizationRule::Kind k) {
  switch (k) {
    case NormalizationRule::Kind::DotG: return "dot_g";
    case NormalizationRule::Kind::MaxWeighted: return "max_weighted";
    case NormalizationRule::Kind::LqNorm: return "lq_norm";
    case NormalizationRule::Kind::PhiQ: return "phi_q";
    case NormalizationRule::Kind::GeoMean: return "geo_mean";
  }
  return "unknown";
}

const char* dual_criterion_name(DualCriterion c) {
  return c == DualCriterion::Minimization ? "minimization" : "maximization";
}

DualRegime dual_regime(PParam p) {
  using K = NormalizationRule::Kind;
  if (p.is_neg_infinity()) return {DualCriterion::Minimization, K::DotG, true};
  if (p.is_pos_infinity()) return {DualCriterion::Maximization, K::DotG, false};
  if (p.is_geometric()) return {DualCriterion::Minimization, K::GeoMean, true};
  const double v = p.value();
  if (v < 1.0) return {DualCriterion::Minimization, K::PhiQ, true};
  if (v == 1.0) return {DualCriterion::Maximization, K::MaxWeighted, false};
  return {DualCriterion::Maximization, K::LqNorm, false};
}

ExtReal normalization_value(const NormalizationRule& rule, const Direction& g, const Vector& w) {
  if (w.size() != g.dim()) fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  for (double x : w)
    if (!(x >= 0.0)) fail(ErrorCode::Domain, "prices must be nonnegative");
  if (g.is_zero()) fail(ErrorCode::Domain, "direction must have a nonempty support");
  Vector om;
  for (std::size_t k : g.support()) om.push_back(g[k] * w[k]);
  const double d = static_cast<double>(om.size());
  switch (rule.kind) {
    case NormalizationRule::Kind::DotG: return ExtReal(std::accumulate(om.begin(), om.end(), 0.0));
    case NormalizationRule::Kind::MaxWeighted: return ExtReal(d * *std::max_element(om.begin(), om.end()));
    case NormalizationRule::Kind::GeoMean: {
      double l = 0.0;
      for (double x : om) {
        if (x <= 0.0) return ExtReal(0.0);
        l += std::log(x) / d;
      }
      return ExtReal::from_double(d * std::exp(l));
    }
    case NormalizationRule::Kind::LqNorm:
    case NormalizationRule::Kind::PhiQ: {
      ExtReal s = phi_sum(PParam::finite(rule.q), om);
      if (!s.is_finite()) return s;
      return ExtReal::from_double(std::pow(d, (rule.q - 1.0) / rule.q) * s.value());
    }
  }
  return ExtReal(0.0);
}

namespace {

constexpr double kBlockTol = 1e-9;
constexpr double kSequenceRatio = 1e8;

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<std::size_t> all_coords(std::size_t d) {
  std::vector<std::size_t> k(d);
  std::iota(k.begin(), k.end(), std::size_t{0});
  return k;
}

std::vector<bool> blocked_coords(const Technology& tech, const Vector& z, const std::vector<std::size_t>& coords) {
  std::vector<bool> out;
  const std::size_t d = tech.dim();
  for (std::size_t k : coords) {
    Vector e(d, 0.0);
    e[k] = 1.0;
    ExtReal g = max_gain(tech, z, e, all_coords(d));
    out.push_back(g.is_finite() && g.value() <= kBlockTol * (1.0 + std::abs(z[k])));
  }
  return out;
}

using NormFn = std::function<ExtReal(const Vector&)>;

void rescale(Vector& w, const NormFn& norm) {
  ExtReal n = norm(w);
  if (n.is_finite() && n.value() > 0.0)
    for (double& x : w) x /= n.value();
}

// Prices for the minimization regimes: the gradient of the utility at the
// primal optimum, or a price sequence when the optimum sits on coordinates
// that cannot expand.
Vector minimization_prices(const SeparableForm& f, const Vector& v, const std::vector<bool>& blocked,
                           const NormFn& norm, bool& attained) {
  const std::size_t d = v.size();
  const std::size_t n = f.coords.size();
  Vector w(d, 0.0);
  attained = true;
  std::size_t nb = static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), true));
  if (nb == n) {
    for (std::size_t j = 0; j < n; ++j) w[f.coords[j]] = 1.0;
    rescale(w, norm);
    return w;
  }
  const double value = f.evaluate(v).value();
  if (nb > 0 && f.kind == SeparableForm::Kind::Power && f.p < 0.0) {
    for (std::size_t j = 0; j < n; ++j)
      if (blocked[j]) {
        w[f.coords[j]] = 1.0;
        break;
      }
    rescale(w, norm);
    return w;
  }
  double wmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (blocked[j]) continue;
    const double x = v[f.coords[j]];
    if (!(x > 0.0)) fail(ErrorCode::SolverFailure, "primal optimum has a vanishing expandable coordinate");
    double g;
    if (f.kind == SeparableForm::Kind::Geometric) {
      g = nb > 0 ? 1.0 : value * f.t[j] / x;
    } else {
      const double p = f.p;
      g = std::exp((1.0 - p) * std::log(value) + std::log(f.weight) + p * std::log(f.a[j]) + (p - 1.0) * std::log(x));
    }
    w[f.coords[j]] = g;
    wmax = std::max(wmax, g);
  }
  if (nb > 0) {
    attained = false;
    const double big = f.kind == SeparableForm::Kind::Geometric ? 1e16 : kSequenceRatio * std::max(1.0, wmax);
    for (std::size_t j = 0; j < n; ++j)
      if (blocked[j]) w[f.coords[j]] = big;
  }
  rescale(w, norm);
  return w;
}

double residual_of(const ExtReal& n) {
  return n.is_finite() ? std::abs(n.value() - 1.0) : std::numeric_limits<double>::infinity();
}

Vector gain_of(const EvalResult& r, const Vector& z) {
  Vector v(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) v[k] = std::max(0.0, r.projection[k] - z[k]);
  return v;
}

void finish(DualResult& out, const ExtReal& primal, double objective) {
  out.primal_value = primal;
  out.dual_value = ExtReal(objective);
  out.gap = primal.is_finite() ? std::abs(objective - primal.value()) : std::numeric_limits<double>::infinity();
}

void require_inside(const Technology& tech, const Vector& z) {
  if (z.size() != tech.dim()) fail(ErrorCode::DimensionMismatch, "netput vector has the wrong dimension");
  if (!contains(tech, z)) fail(ErrorCode::Infeasible, "netput vector lies outside the technology");
}

// Hoelder dual of v in the l_p / l_q pairing, unit q-norm.
Vector hoelder_dual(const Vector& v, double p) {
  const double q = p / (p - 1.0);
  double norm = 0.0, vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, x);
  Vector y(v.size());
  if (vmax <= 0.0) {
    for (double& x : y) x = std::pow(static_cast<double>(v.size()), -1.0 / q);
    return y;
  }
  for (double x : v) norm += std::pow(x / vmax, p);
  norm = vmax * std::pow(norm, 1.0 / p);
  for (std::size_t i = 0; i < v.size(); ++i) y[i] = std::pow(v[i] / norm, p - 1.0);
  return y;
}

}  // namespace

DualResult dual_value(const Technology& tech, const Vector& z, const Direction& g, PParam p) {
  if (g.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
  if (g.is_zero()) fail(ErrorCode::Domain, "direction must have a nonempty support");
  const DualRegime regime = dual_regime(p);
  if (regime.convexity_required && !tech.convex())
    fail(ErrorCode::ConvexityRequired, "this dual regime needs a convex technology");
  require_inside(tech, z);
  const EvalResult pr = evaluate_p(tech, z, g, p);
  const std::size_t d = tech.dim();
  const auto& support = g.support();
  const double dg = static_cast<double>(support.size());
  const NormalizationRule rule = NormalizationRule::for_order(p);
  NormFn norm = [&](const Vector& w) { return normalization_value(rule, g, w); };

  DualResult out;
  out.w.assign(d, 0.0);
  if (p.is_neg_infinity()) {
    check_bounded(tech, z);
    Polyhedron poly = preimage(tech, z, {g.values()});
    Vector c(poly.num_vars, 0.0);
    c[0] = 1.0;
    LpSolution s = maximize(poly, c);
    if (s.status != LpStatus::Optimal) fail(ErrorCode::SolverFailure, "directional program failed");
    out.w = prices_from_duals(tech, s.duals);
    double wg = dot(out.w, g.values());
    if (wg > 0.0)
      for (double& x : out.w) x /= wg;
  } else if (p.is_pos_infinity()) {
    std::size_t best = support.front();
    for (std::size_t k : support)
      if (pr.delta_star[k] > pr.delta_star[best]) best = k;
    out.w[best] = 1.0 / g[best];
  } else if (!p.is_geometric() && p.value() == 1.0) {
    for (std::size_t k : support) out.w[k] = 1.0 / (dg * g[k]);
  } else if (!p.is_geometric() && p.value() > 1.0) {
    Vector v;
    for (std::size_t k : support) v.push_back(pr.delta_star[k]);
    Vector y = hoelder_dual(v, p.value());
    const double c = std::pow(dg, -1.0 / p.value());
    for (std::size_t j = 0; j < support.size(); ++j) out.w[support[j]] = c * y[j] / g[support[j]];
  } else {
    const SeparableForm f = separable_form(UtilitySpec::pmean_directional(p, g, true));
    out.w = minimization_prices(f, gain_of(pr, z), blocked_coords(tech, z, f.coords), norm, out.attained);
  }
  double objective;
  if (regime.criterion == DualCriterion::Maximization)
    objective = restricted_profit(tech, z, g, out.w).value() - dot(out.w, z);
  else
    objective = dominating_profit(tech, z, out.w).value() - dot(out.w, z);
  out.normalization_residual = residual_of(norm(out.w));
  finish(out, pr.score, objective);
  return out;
}

DualResult dual_value_utility(const Technology& tech, const Vector& z, const UtilitySpec& spec) {
  if (spec.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "utility has the wrong dimension");
  const SeparableForm f = separable_form(spec);
  if (f.kind == SeparableForm::Kind::Max || f.kind == SeparableForm::Kind::Min ||
      (f.kind == SeparableForm::Kind::Power && f.p >= 1.0))
    fail(ErrorCode::Unsupported, "utility duality needs a smooth quasi-concave utility; use norm duality for p >= 1");
  if (!tech.convex()) fail(ErrorCode::ConvexityRequired, "utility duality needs a convex technology");
  require_inside(tech, z);
  const EvalResult pr = evaluate_utility(tech, z, spec);
  NormFn norm = [&](const Vector& w) {
    ExtReal ws = indirect_utility(spec, w);
    if (ws.is_pos_infinity()) return ExtReal(0.0);
    if (ws.value() <= 0.0) return ExtReal::pos_infinity();
    return ExtReal(1.0 / ws.value());
  };
  DualResult out;
  out.w = minimization_prices(f, gain_of(pr, z), blocked_coords(tech, z, f.coords), norm, out.attained);
  const double objective = dominating_profit(tech, z, out.w).value() - dot(out.w, z);
  out.normalization_residual = residual_of(norm(out.w));
  finish(out, pr.score, objective);
  return out;
}

DualResult norm_dual_value(const Technology& tech, const Vector& z, PParam p_norm, const Direction& weights) {
  if (p_norm.is_neg_infinity() || (p_norm.is_finite() && !(p_norm.value() >= 1.0)))
    fail(ErrorCode::Domain, "norm order must be at least 1");
  if (weights.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "weights have the wrong dimension");
  if (weights.is_zero()) fail(ErrorCode::Domain, "weights must have a nonempty support");
  require_inside(tech, z);
  const EvalResult pr = evaluate_utility(tech, z, UtilitySpec::pmean_directional(p_norm, weights, false));
  const auto& support = weights.support();
  Vector v;
  for (std::size_t k : support) v.push_back(pr.delta_star[k]);
  Vector om(support.size(), 0.0);
  double qnorm = 0.0;
  if (p_norm.is_pos_infinity()) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] > v[best]) best = j;
    om[best] = 1.0;
    qnorm = 1.0;
  } else if (p_norm.value() == 1.0) {
    om.assign(support.size(), 1.0);
    qnorm = 1.0;
  } else {
    om = hoelder_dual(v, p_norm.value());
    qnorm = phi_sum(PParam::finite(p_norm.value() / (p_norm.value() - 1.0)), om).value();
  }
  DualResult out;
  out.w.assign(tech.dim(), 0.0);
  for (std::size_t j = 0; j < support.size(); ++j) out.w[support[j]] = om[j] / weights[support[j]];
  const double objective = dominating_profit(tech, z, out.w).value() - dot(out.w, z);
  out.normalization_residual = std::abs(qnorm - 1.0);
  finish(out, pr.score, objective);
  return out;
}

AuditReport weak_duality_audit(const Technology& tech, const Vector& z, const Direction& g, PParam p,
                               int samples, std::uint64_t seed) {
  if (g.dim() != tech.dim()) fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
  if (g.is_zero()) fail(ErrorCode::Domain, "direction must have a nonempty support");
  if (samples < 0) fail(ErrorCode::Domain, "sample count must be nonnegative");
  const DualRegime regime = dual_regime(p);
  if (regime.convexity_required && !tech.convex())
    fail(ErrorCode::ConvexityRequired, "this dual regime needs a convex technology");
  require_inside(tech, z);
  AuditReport rep;
  rep.primal_value = evaluate_p(tech, z, g, p).score;
  const double primal = rep.primal_value.value();
  const NormalizationRule rule = NormalizationRule::for_order(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (int s = 0; s < samples; ++s) {
    Vector w(tech.dim(), 0.0);
    for (std::size_t k : g.support()) w[k] = unif(rng) / g[k];
    ExtReal n = normalization_value(rule, g, w);
    if (!n.is_finite() || !(n.value() > 0.0)) continue;
    for (double& x : w) x /= n.value();
    double violation;
    if (regime.criterion == DualCriterion::Maximization)
      violation = restricted_profit(tech, z, g, w).value() - dot(w, z) - primal;
    else
      violation = primal - (dominating_profit(tech, z, w).value() - dot(w, z));
    rep.worst_violation = std::max(rep.worst_violation, violation);
    ++rep.samples;
  }
  return rep;
}

}  // namespace netput
