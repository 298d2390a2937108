#ifndef NETPUT_DUAL_HPP
#define NETPUT_DUAL_HPP

// Dual price programs for the generalized distance functions.

#include <cstdint>
#include <string>

#include "netput/primal.hpp"

namespace netput {

struct NormalizationRule {
  enum class Kind { DotG, MaxWeighted, LqNorm, PhiQ, GeoMean };
  Kind kind = Kind::DotG;
  double q = 1.0;  // LqNorm and PhiQ

  // Rule attached to the order p.
  static NormalizationRule for_order(PParam p);
};

const char* normalization_rule_name(NormalizationRule::Kind k);

// Left-hand side of the normalization constraint, over K_g:
//   DotG         sum g_k w_k
//   MaxWeighted  d_g max g_k w_k
//   LqNorm       d_g^((q-1)/q) (sum (g_k w_k)^q)^(1/q)
//   PhiQ         d_g^((q-1)/q) phi_q-sum of g_k w_k
//   GeoMean      d_g prod (g_k w_k)^(1/d_g)
ExtReal normalization_value(const NormalizationRule& rule, const Direction& g, const Vector& w);

enum class DualCriterion { Minimization, Maximization };

struct DualRegime {
  DualCriterion criterion;
  NormalizationRule::Kind normalization;
  bool convexity_required;
};

DualRegime dual_regime(PParam p);
const char* dual_criterion_name(DualCriterion c);

struct DualResult {
  Vector w;
  double normalization_residual = 0.0;
  ExtReal dual_value;
  ExtReal primal_value;
  double gap = 0.0;
  // False when the optimum is only approached along a price sequence; `w`
  // then holds a late element of that sequence.
  bool attained = true;
};

DualResult dual_value(const Technology& tech, const Vector& z, const Direction& g, PParam p);

// inf { Pi_z(w) - w.z : W_*(w) = 1 } for a quasi-concave homogeneous utility.
DualResult dual_value_utility(const Technology& tech, const Vector& z, const UtilitySpec& spec);

// Max-norm duality: sup over u in T_z of ||(u - z) / g||_p on K_g against
// sup { Pi_z(w) - w.z : ||g w||_q = 1 }.
DualResult norm_dual_value(const Technology& tech, const Vector& z, PParam p_norm, const Direction& weights);

struct AuditReport {
  double worst_violation = 0.0;
  int samples = 0;
  ExtReal primal_value;
};

// Samples random normalized prices and measures how far any of them crosses
// the primal value on the wrong side.
AuditReport weak_duality_audit(const Technology& tech, const Vector& z, const Direction& g, PParam p,
                               int samples, std::uint64_t seed = 0x5eed);

}  // namespace netput

#endif
