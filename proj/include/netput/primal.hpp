#ifndef NETPUT_PRIMAL_HPP
#define NETPUT_PRIMAL_HPP

// Distance functions and efficiency measures over a technology.

#include <string>

#include "netput/gmean.hpp"
#include "netput/technology.hpp"

namespace netput {

struct EvalResult {
  // -inf when z lies outside T, +inf when g = 0 and z lies in T.
  ExtReal score = ExtReal::neg_infinity();
  // Expansion per coordinate: (u*_k - z_k) / g_k on K_g and 0 elsewhere for
  // directional measures; u* - z for plain utilities. Empty for infinite scores.
  Vector delta_star;
  Vector projection;  // u*
  EfficiencyStatus status;
  std::string method;
  int newton_steps = 0;
};

// Distance family named by the order p.
enum class DistanceFamily { Directional, MultiplicativeFareLovell, FareLovell, Asymmetric, Generalized };
DistanceFamily distance_family(PParam p);
const char* distance_family_name(DistanceFamily f);

// Primal algorithm selected for a finite order p on a convex technology.
enum class PrimalMethod { DirectionalLp, AsymmetricLp, LinearLp, ConcaveBarrier, VertexRoute };
PrimalMethod primal_method(PParam p);
const char* primal_method_name(PrimalMethod m);

EvalResult directional_distance(const Technology& tech, const Vector& z, const Direction& g);
EvalResult asymmetric_distance(const Technology& tech, const Vector& z, const Direction& g);
EvalResult evaluate_p(const Technology& tech, const Vector& z, const Direction& g, PParam p);
// sup { W(u - z) : u in T_z }.
EvalResult evaluate_utility(const Technology& tech, const Vector& z, const UtilitySpec& spec);

// Input measures. x holds the (nonpositive) input netputs, y the outputs;
// the technology orders inputs first. Points outside T give +inf.
ExtReal fare_lovell_input(const Technology& tech, const Vector& x, const Vector& y);
ExtReal generalized_input_measure(const Technology& tech, const Vector& x, const Vector& y, PParam p);
ExtReal debreu_farrell(const Technology& tech, const Vector& x, const Vector& y);

}  // namespace netput

#endif
