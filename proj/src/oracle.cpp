#include "netput/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "netput/error.hpp"

namespace netput {

GridResult grid_search(const Technology& tech, const Vector& z, const Direction& g, const UtilitySpec& spec,
                       const GridSpec& grid) {
  const std::size_t d = tech.dim();
  if (z.size() != d || g.dim() != d || spec.dim() != d)
    fail(ErrorCode::DimensionMismatch, "grid search arguments differ in dimension");
  if (grid.resolution < 2) fail(ErrorCode::Domain, "grid resolution must be at least 2");
  if (g.is_zero()) fail(ErrorCode::Domain, "direction must have a nonempty support");
  const auto& ks = g.support();
  const std::size_t dg = ks.size();
  if (dg > 3) fail(ErrorCode::Unsupported, "grid search is limited to three expanding coordinates");
  GridResult out;
  if (!contains(tech, z)) return out;

  Vector dmax = grid.delta_max;
  if (dmax.empty()) {
    for (std::size_t k : ks) {
      Vector e(d, 0.0);
      e[k] = 1.0;
      dmax.push_back(max_gain(tech, z, e, {k}).value() / g[k]);
    }
  }
  if (dmax.size() != dg) fail(ErrorCode::DimensionMismatch, "grid bounds do not match the support");
  for (double x : dmax)
    if (!(x >= 0.0)) fail(ErrorCode::Domain, "grid bounds must be nonnegative");

  const std::size_t free_axes = dg - 1;
  std::vector<std::size_t> steps(free_axes), idx(free_axes, 0);
  Vector mesh(free_axes);
  for (std::size_t j = 0; j < free_axes; ++j) {
    steps[j] = dmax[j] > 0.0 ? grid.resolution : 1;
    mesh[j] = dmax[j] > 0.0 ? dmax[j] / static_cast<double>(grid.resolution - 1) : 0.0;
  }
  const std::size_t last = ks.back();
  Vector e_last(d, 0.0);
  e_last[last] = 1.0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  for (;;) {
    Vector base = z;
    Vector delta(d, 0.0);
    for (std::size_t j = 0; j < free_axes; ++j) {
      delta[ks[j]] = static_cast<double>(idx[j]) * mesh[j];
      base[ks[j]] += delta[ks[j]] * g[ks[j]];
    }
    ExtReal gain = max_gain(tech, base, e_last, {last});
    if (gain.is_finite()) {
      ++out.feasible_points;
      delta[last] = std::max(0.0, gain.value()) / g[last];
      Vector v(d, 0.0), vu(d, 0.0);
      for (std::size_t k : ks) v[k] = delta[k] * g[k];
      vu = v;
      for (std::size_t j = 0; j < free_axes; ++j) vu[ks[j]] += mesh[j] * g[ks[j]];
      double w = p_mean_utility(spec, v).to_double();
      if (w > lower) {
        lower = w;
        out.argmax = delta;
      }
      upper = std::max(upper, p_mean_utility(spec, vu).to_double());
    }
    std::size_t j = 0;
    while (j < free_axes && ++idx[j] == steps[j]) idx[j++] = 0;
    if (j == free_axes) break;
  }
  if (out.feasible_points > 0) {
    out.lower_bound = ExtReal::from_double(lower);
    out.upper_envelope = ExtReal::from_double(upper);
  }
  return out;
}

ExtReal fdh_closed_form(const std::vector<Vector>& points, const Vector& z, const Direction& g, PParam p) {
  if (g.dim() != z.size()) fail(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
  bool any = false;
  double best = 0.0;
  for (const auto& a : points) {
    if (a.size() != z.size()) fail(ErrorCode::DimensionMismatch, "data points differ in dimension");
    bool dominates = true;
    for (std::size_t k = 0; k < z.size(); ++k)
      if (a[k] < z[k] - kMembershipTol * (1.0 + std::abs(z[k]))) dominates = false;
    if (!dominates) continue;
    if (g.is_zero()) return ExtReal::pos_infinity();
    Vector delta;
    for (std::size_t k : g.support()) delta.push_back(std::max(0.0, a[k] - z[k]) / g[k]);
    const double n = static_cast<double>(delta.size());
    double w;
    if (p.is_neg_infinity()) {
      w = *std::min_element(delta.begin(), delta.end());
    } else if (p.is_pos_infinity()) {
      w = *std::max_element(delta.begin(), delta.end());
    } else if (p.is_geometric()) {
      double l = 0.0;
      bool zero = false;
      for (double x : delta) {
        if (x <= 0.0) zero = true;
        else l += std::log(x) / n;
      }
      w = zero ? 0.0 : std::exp(l);
    } else {
      const double pv = p.value();
      bool zero = false;
      double s = 0.0;
      for (double x : delta) {
        if (x <= 0.0) zero = true;
        else s += std::pow(x, pv);
      }
      w = (zero && pv < 0.0) ? 0.0 : std::pow(s / n, 1.0 / pv);
    }
    if (!any || w > best) best = w;
    any = true;
  }
  return any ? ExtReal(best) : ExtReal::neg_infinity();
}

double budget_line_max(const UtilitySpec& spec, const Vector& w, double c, std::size_t resolution) {
  const std::size_t d = spec.dim();
  if (w.size() != d) fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  if (!(c > 0.0)) fail(ErrorCode::Domain, "budget must be positive");
  for (double x : w)
    if (!(x > 0.0)) fail(ErrorCode::Domain, "prices must be positive");
  if (resolution < 2) fail(ErrorCode::Domain, "grid resolution must be at least 2");
  const std::size_t steps = resolution - 1;
  Vector share(d, 0.0), v(d, 0.0);
  double best = 0.0;
  // compositions of `steps` into d budget shares
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t k, std::size_t left) {
    if (k + 1 == d) {
      share[k] = static_cast<double>(left) / static_cast<double>(steps);
      for (std::size_t i = 0; i < d; ++i) v[i] = c * share[i] / w[i];
      best = std::max(best, p_mean_utility(spec, v).to_double());
      return;
    }
    for (std::size_t s = 0; s <= left; ++s) {
      share[k] = static_cast<double>(s) / static_cast<double>(steps);
      walk(k + 1, left - s);
    }
  };
  walk(0, steps);
  return best;
}

}  // namespace netput
