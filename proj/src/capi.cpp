#include "netput/netput.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <algorithm>
#include <stdexcept>
#include <string>

#include "netput/dual.hpp"
#include "netput/error.hpp"
#include "netput/oracle.hpp"
#include "netput/primal.hpp"

using namespace netput;

struct netput_technology {
  Technology tech;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
netput_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return NETPUT_OK;
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return NETPUT_ERR_NULL_ARGUMENT;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<netput_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NETPUT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return NETPUT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw NullArgument(std::string(what) + " must not be null");
}

Vector vec(const double* p, std::size_t n, const char* what) {
  need(p, what);
  return Vector(p, p + n);
}

void put(const Vector& v, double* out) {
  if (out && !v.empty()) std::memcpy(out, v.data(), v.size() * sizeof(double));
}

PParam to_p(netput_p p) {
  switch (p.kind) {
    case NETPUT_P_NEG_INF: return PParam::neg_infinity();
    case NETPUT_P_POS_INF: return PParam::pos_infinity();
    case NETPUT_P_FINITE: return PParam::finite(p.value);
  }
  throw Error(ErrorCode::Domain, "unknown order kind");
}

netput_p from_p(PParam p) {
  if (p.is_neg_infinity()) return {NETPUT_P_NEG_INF, 0.0};
  if (p.is_pos_infinity()) return {NETPUT_P_POS_INF, 0.0};
  return {NETPUT_P_FINITE, p.value()};
}

const Technology& tech_of(const netput_technology* t) {
  need(t, "technology");
  return t->tech;
}

UtilitySpec to_spec(const netput_utility* u, std::size_t d) {
  need(u, "utility");
  switch (u->kind) {
    case NETPUT_UTILITY_PMEAN_PLAIN:
      return UtilitySpec::pmean_plain(to_p(u->p), vec(u->coefficients, d, "coefficients"));
    case NETPUT_UTILITY_PMEAN_DIRECTIONAL:
      return UtilitySpec::pmean_directional(to_p(u->p), Direction(vec(u->direction, d, "direction")),
                                            u->normalized != 0);
    case NETPUT_UTILITY_COBB_DOUGLAS:
      return UtilitySpec::cobb_douglas(vec(u->exponents, d, "exponents"), vec(u->coefficients, d, "coefficients"));
  }
  throw Error(ErrorCode::Domain, "unknown utility kind");
}

netput_efficiency to_c(EfficiencyStatus::Kind k) {
  switch (k) {
    case EfficiencyStatus::Kind::Infeasible: return NETPUT_INFEASIBLE;
    case EfficiencyStatus::Kind::Efficient: return NETPUT_EFFICIENT;
    case EfficiencyStatus::Kind::WeaklyEfficient: return NETPUT_WEAKLY_EFFICIENT;
    case EfficiencyStatus::Kind::Inefficient: return NETPUT_INEFFICIENT;
  }
  return NETPUT_INFEASIBLE;
}

void write_eval(const EvalResult& r, std::size_t d, netput_eval_info* info, double* delta, double* proj) {
  if (info) {
    info->score = r.score.to_double();
    info->status = to_c(r.status.kind);
    info->newton_steps = r.newton_steps;
    std::snprintf(info->method, sizeof info->method, "%s", r.method.c_str());
  }
  const double nan = std::nan("");
  if (delta) {
    if (r.delta_star.empty()) std::fill(delta, delta + d, nan);
    else put(r.delta_star, delta);
  }
  if (proj) {
    if (r.projection.empty()) std::fill(proj, proj + d, nan);
    else put(r.projection, proj);
  }
}

void write_dual(const DualResult& r, netput_dual_info* info, double* prices) {
  if (info) {
    info->dual_value = r.dual_value.to_double();
    info->primal_value = r.primal_value.to_double();
    info->gap = r.gap;
    info->normalization_residual = r.normalization_residual;
    info->attained = r.attained ? 1 : 0;
  }
  put(r.w, prices);
}

std::vector<Vector> rows(const double* data, std::size_t n, std::size_t d, const char* what) {
  need(data, what);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(data + i * d, data + (i + 1) * d);
  return out;
}

netput_status create(netput_technology** out, const std::function<Technology()>& make) {
  return guard([&] {
    need(out, "output handle");
    *out = nullptr;
    *out = new netput_technology{make()};
  });
}

template <class F>
netput_status input_measure(const netput_technology* tech, const double* x, size_t m, const double* y, double* out,
                            F&& f) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    need(out, "output");
    if (m > t.dim()) throw Error(ErrorCode::DimensionMismatch, "more inputs than coordinates");
    Vector xv = vec(x, m, "inputs");
    Vector yv = t.dim() > m ? vec(y, t.dim() - m, "outputs") : Vector{};
    *out = f(t, xv, yv).to_double();
  });
}

}  // namespace

extern "C" {

const char* netput_last_error(void) { return g_last_error.c_str(); }

const char* netput_status_name(netput_status status) {
  switch (status) {
    case NETPUT_OK: return "ok";
    case NETPUT_ERR_NULL_ARGUMENT: return "null-argument";
    case NETPUT_ERR_INTERNAL: return "internal";
    default: break;
  }
  int c = static_cast<int>(status);
  if (c >= 1 && c <= 9) return error_code_name(static_cast<ErrorCode>(c));
  return "unknown";
}

const char* netput_efficiency_name(netput_efficiency status) {
  switch (status) {
    case NETPUT_INFEASIBLE: return efficiency_status_name(EfficiencyStatus::Kind::Infeasible);
    case NETPUT_EFFICIENT: return efficiency_status_name(EfficiencyStatus::Kind::Efficient);
    case NETPUT_WEAKLY_EFFICIENT: return efficiency_status_name(EfficiencyStatus::Kind::WeaklyEfficient);
    case NETPUT_INEFFICIENT: return efficiency_status_name(EfficiencyStatus::Kind::Inefficient);
  }
  return "unknown";
}

netput_status netput_p_parse(const char* token, netput_p* out) {
  return guard([&] {
    need(token, "token");
    need(out, "output");
    *out = from_p(PParam::parse(token));
  });
}

netput_status netput_p_format(netput_p p, char* buf, size_t len) {
  return guard([&] {
    need(buf, "buffer");
    std::string s = to_p(p).to_string();
    if (s.size() + 1 > len) throw Error(ErrorCode::Domain, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

const char* netput_distance_family(netput_p p) {
  try {
    return distance_family_name(distance_family(to_p(p)));
  } catch (...) {
    return "invalid";
  }
}

const char* netput_primal_method(netput_p p) {
  try {
    return primal_method_name(primal_method(to_p(p)));
  } catch (...) {
    return "invalid";
  }
}

netput_status netput_dual_regime(netput_p p, netput_criterion* criterion, netput_normalization* normalization,
                                 int* convexity_required) {
  return guard([&] {
    DualRegime r = dual_regime(to_p(p));
    if (criterion)
      *criterion = r.criterion == DualCriterion::Minimization ? NETPUT_MINIMIZATION : NETPUT_MAXIMIZATION;
    if (normalization) *normalization = static_cast<netput_normalization>(static_cast<int>(r.normalization));
    if (convexity_required) *convexity_required = r.convexity_required ? 1 : 0;
  });
}

const char* netput_criterion_name(netput_criterion c) {
  return dual_criterion_name(c == NETPUT_MINIMIZATION ? DualCriterion::Minimization : DualCriterion::Maximization);
}

const char* netput_normalization_name(netput_normalization n) {
  if (n < NETPUT_NORM_DOT_G || n > NETPUT_NORM_GEO_MEAN) return "unknown";
  return normalization_rule_name(static_cast<NormalizationRule::Kind>(static_cast<int>(n)));
}

netput_status netput_phi_sum(netput_p p, const double* delta, size_t len, double* out) {
  return guard([&] {
    need(out, "output");
    *out = phi_sum(to_p(p), vec(delta, len, "delta")).to_double();
  });
}

netput_status netput_utility_value(const netput_utility* u, size_t d, const double* delta, double* out) {
  return guard([&] {
    need(out, "output");
    *out = p_mean_utility(to_spec(u, d), vec(delta, d, "delta")).to_double();
  });
}

netput_status netput_indirect_utility(const netput_utility* u, size_t d, const double* w, double* out) {
  return guard([&] {
    need(out, "output");
    *out = indirect_utility(to_spec(u, d), vec(w, d, "prices")).to_double();
  });
}

netput_status netput_budget_line_argmax(const netput_utility* u, size_t d, const double* b, double c,
                                        double* v_star, double* value) {
  return guard([&] {
    BudgetArgmax r = budget_line_argmax(to_spec(u, d), vec(b, d, "prices"), c);
    put(r.v_star, v_star);
    if (value) *value = r.value;
  });
}

netput_status netput_normalization_value(netput_p p, size_t d, const double* g, const double* w, double* out) {
  return guard([&] {
    need(out, "output");
    *out = normalization_value(NormalizationRule::for_order(to_p(p)), Direction(vec(g, d, "direction")),
                               vec(w, d, "prices"))
               .to_double();
  });
}

netput_status netput_technology_create_vrs(size_t d, size_t n_points, const double* points,
                                           netput_technology** out) {
  return create(out, [&] { return Technology::vrs_hull(rows(points, n_points, d, "points")); });
}

netput_status netput_technology_create_fdh(size_t d, size_t n_points, const double* points,
                                           netput_technology** out) {
  return create(out, [&] { return Technology::fdh(rows(points, n_points, d, "points")); });
}

netput_status netput_technology_create_hrep(size_t d, size_t n_rows, const double* normals, const double* rhs,
                                            netput_technology** out) {
  return create(out, [&] {
    need(rhs, "bounds");
    std::vector<Halfspace> hs;
    for (auto& r : rows(normals, n_rows, d, "normals")) hs.push_back({std::move(r), rhs[hs.size()]});
    return Technology::hrep(std::move(hs));
  });
}

void netput_technology_destroy(netput_technology* tech) { delete tech; }

size_t netput_technology_dim(const netput_technology* tech) { return tech ? tech->tech.dim() : 0; }

netput_status netput_contains(const netput_technology* tech, const double* z, int* out) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    need(out, "output");
    *out = contains(t, vec(z, t.dim(), "netput vector")) ? 1 : 0;
  });
}

netput_status netput_dominating_profit(const netput_technology* tech, const double* z, const double* w,
                                       double* out) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    need(out, "output");
    *out = dominating_profit(t, vec(z, t.dim(), "netput vector"), vec(w, t.dim(), "prices")).to_double();
  });
}

netput_status netput_restricted_profit(const netput_technology* tech, const double* z, const double* g,
                                       const double* w, double* out) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    need(out, "output");
    *out = restricted_profit(t, vec(z, t.dim(), "netput vector"), Direction(vec(g, t.dim(), "direction")),
                             vec(w, t.dim(), "prices"))
               .to_double();
  });
}

netput_status netput_classify(const netput_technology* tech, const double* z, const size_t* k_set, size_t k_len,
                              netput_efficiency* out, unsigned char* witness_mask) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    need(out, "output");
    need(k_set, "index set");
    EfficiencyStatus s = classify(t, vec(z, t.dim(), "netput vector"), std::vector<std::size_t>(k_set, k_set + k_len));
    *out = to_c(s.kind);
    if (witness_mask) {
      std::fill(witness_mask, witness_mask + t.dim(), 0);
      for (std::size_t k : s.witness) witness_mask[k] = 1;
    }
  });
}

netput_status netput_evaluate_p(const netput_technology* tech, const double* z, const double* g, netput_p p,
                                netput_eval_info* info, double* delta_star, double* projection) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    EvalResult r = evaluate_p(t, vec(z, t.dim(), "netput vector"), Direction(vec(g, t.dim(), "direction")), to_p(p));
    write_eval(r, t.dim(), info, delta_star, projection);
  });
}

netput_status netput_directional_distance(const netput_technology* tech, const double* z, const double* g,
                                          netput_eval_info* info, double* delta_star, double* projection) {
  return netput_evaluate_p(tech, z, g, netput_p{NETPUT_P_NEG_INF, 0.0}, info, delta_star, projection);
}

netput_status netput_asymmetric_distance(const netput_technology* tech, const double* z, const double* g,
                                         netput_eval_info* info, double* delta_star, double* projection) {
  return netput_evaluate_p(tech, z, g, netput_p{NETPUT_P_POS_INF, 0.0}, info, delta_star, projection);
}

netput_status netput_evaluate_utility(const netput_technology* tech, const double* z, const netput_utility* u,
                                      netput_eval_info* info, double* delta_star, double* projection) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    EvalResult r = evaluate_utility(t, vec(z, t.dim(), "netput vector"), to_spec(u, t.dim()));
    write_eval(r, t.dim(), info, delta_star, projection);
  });
}


netput_status netput_fare_lovell_input(const netput_technology* tech, const double* x, size_t m, const double* y,
                                       double* out) {
  return input_measure(tech, x, m, y, out, [](const Technology& t, const Vector& a, const Vector& b) {
    return fare_lovell_input(t, a, b);
  });
}

netput_status netput_generalized_input_measure(const netput_technology* tech, const double* x, size_t m,
                                               const double* y, netput_p p, double* out) {
  return input_measure(tech, x, m, y, out, [&](const Technology& t, const Vector& a, const Vector& b) {
    return generalized_input_measure(t, a, b, to_p(p));
  });
}

netput_status netput_debreu_farrell(const netput_technology* tech, const double* x, size_t m, const double* y,
                                    double* out) {
  return input_measure(tech, x, m, y, out, [](const Technology& t, const Vector& a, const Vector& b) {
    return debreu_farrell(t, a, b);
  });
}

netput_status netput_dual_value(const netput_technology* tech, const double* z, const double* g, netput_p p,
                                netput_dual_info* info, double* prices) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    DualResult r = dual_value(t, vec(z, t.dim(), "netput vector"), Direction(vec(g, t.dim(), "direction")), to_p(p));
    write_dual(r, info, prices);
  });
}

netput_status netput_dual_value_utility(const netput_technology* tech, const double* z, const netput_utility* u,
                                        netput_dual_info* info, double* prices) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    DualResult r = dual_value_utility(t, vec(z, t.dim(), "netput vector"), to_spec(u, t.dim()));
    write_dual(r, info, prices);
  });
}

netput_status netput_norm_dual_value(const netput_technology* tech, const double* z, netput_p p_norm,
                                     const double* weights, netput_dual_info* info, double* prices) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    DualResult r = norm_dual_value(t, vec(z, t.dim(), "netput vector"), to_p(p_norm),
                                   Direction(vec(weights, t.dim(), "weights")));
    write_dual(r, info, prices);
  });
}

netput_status netput_weak_duality_audit(const netput_technology* tech, const double* z, const double* g, netput_p p,
                                        int samples, uint64_t seed, double* worst_violation, double* primal_value) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    AuditReport r = weak_duality_audit(t, vec(z, t.dim(), "netput vector"), Direction(vec(g, t.dim(), "direction")),
                                       to_p(p), samples, seed);
    if (worst_violation) *worst_violation = r.worst_violation;
    if (primal_value) *primal_value = r.primal_value.to_double();
  });
}

netput_status netput_grid_search(const netput_technology* tech, const double* z, const double* g,
                                 const netput_utility* u, size_t resolution, double* lower_bound,
                                 double* upper_envelope, double* argmax) {
  return guard([&] {
    const Technology& t = tech_of(tech);
    GridSpec spec;
    spec.resolution = resolution;
    GridResult r = grid_search(t, vec(z, t.dim(), "netput vector"), Direction(vec(g, t.dim(), "direction")),
                               to_spec(u, t.dim()), spec);
    if (lower_bound) *lower_bound = r.lower_bound.to_double();
    if (upper_envelope) *upper_envelope = r.upper_envelope.to_double();
    if (argmax) {
      if (r.argmax.empty()) std::fill(argmax, argmax + t.dim(), std::nan(""));
      else put(r.argmax, argmax);
    }
  });
}

netput_status netput_fdh_closed_form(size_t d, size_t n_points, const double* points, const double* z,
                                     const double* g, netput_p p, double* out) {
  return guard([&] {
    need(out, "output");
    *out = fdh_closed_form(rows(points, n_points, d, "points"), vec(z, d, "netput vector"),
                           Direction(vec(g, d, "direction")), to_p(p))
               .to_double();
  });
}

netput_status netput_budget_line_max(const netput_utility* u, size_t d, const double* w, double c,
                                     size_t resolution, double* out) {
  return guard([&] {
    need(out, "output");
    *out = budget_line_max(to_spec(u, d), vec(w, d, "prices"), c, resolution);
  });
}

}  // extern "C"
