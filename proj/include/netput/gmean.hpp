#ifndef NETPUT_GMEAN_HPP
#define NETPUT_GMEAN_HPP

// Generalized (phi_p) sums, p-mean utilities and their indirect utilities.

#include <compare>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "netput/extended_real.hpp"

namespace netput {

using Vector = std::vector<double>;

// Mean order p on the extended real line. Finite(0) is the multiplicative
// (geometric) case.
class PParam {
 public:
  enum class Kind { NegInfinity, Finite, PosInfinity };

  static PParam neg_infinity() { return PParam(Kind::NegInfinity, 0.0); }
  static PParam pos_infinity() { return PParam(Kind::PosInfinity, 0.0); }
  static PParam finite(double p);
  // "-inf", "inf"/"+inf" or a real literal.
  static PParam parse(const std::string& token);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_infinity() const { return kind_ == Kind::NegInfinity; }
  bool is_pos_infinity() const { return kind_ == Kind::PosInfinity; }
  double value() const;  // finite p only
  // |p| below this threshold is evaluated on the geometric-mean branch.
  static constexpr double kGeometricThreshold = 1e-6;
  bool is_geometric() const;

  // Conjugate order q with 1/p + 1/q = 1 (q = p/(p-1)). p = 1 maps to +inf,
  // p = +-inf maps to 1 and the geometric case maps to 0.
  PParam conjugate() const;

  std::string to_string() const;

  friend std::partial_ordering operator<=>(const PParam& a, const PParam& b);
  friend bool operator==(const PParam& a, const PParam& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  PParam(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

// Nonnegative direction vector with its support K_g = {k : g_k > 0}.
class Direction {
 public:
  Direction() = default;
  explicit Direction(Vector g);

  const Vector& values() const { return g_; }
  double operator[](std::size_t k) const { return g_[k]; }
  std::size_t dim() const { return g_.size(); }
  const std::vector<std::size_t>& support() const { return support_; }
  std::size_t support_size() const { return support_.size(); }
  bool in_support(std::size_t k) const { return g_[k] > 0.0; }
  bool is_zero() const { return support_.empty(); }

  static Direction unit(std::size_t d) { return Direction(Vector(d, 1.0)); }

 private:
  Vector g_;
  std::vector<std::size_t> support_;
};

// W(v) = phi_p-sum of a_k v_k over all coordinates. p = 0 is read as the
// degree-one geometric mean prod (a_k v_k)^(1/d).
struct PMeanPlain {
  PParam p;
  Vector coefficients;
};

// W_(p),g(delta): mean of delta_k / g_k over K_g; `normalized` applies the
// 1/d_g^(1/p) factor (exponent 1/d_g in the geometric case).
struct PMeanDirectional {
  PParam p;
  Direction direction;
  bool normalized = true;
};

// W(v) = prod (a_k v_k)^(t_k) with sum t_k = 1.
struct CobbDouglas {
  Vector exponents;
  Vector coefficients;
};

class UtilitySpec {
 public:
  using Variant = std::variant<PMeanPlain, PMeanDirectional, CobbDouglas>;

  static UtilitySpec pmean_plain(PParam p, Vector coefficients);
  static UtilitySpec pmean_directional(PParam p, Direction g, bool normalized = true);
  static UtilitySpec cobb_douglas(Vector exponents, Vector coefficients);

  const Variant& variant() const { return v_; }
  std::size_t dim() const;

 private:
  explicit UtilitySpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// phi_p-generalized sum. p < 0 with a zero component yields exactly 0.
ExtReal phi_sum(PParam p, std::span<const double> delta);

ExtReal p_mean_utility(const UtilitySpec& spec, std::span<const double> delta);

// Partial derivatives of the utility at a point where it is differentiable
// (all arguments on the support strictly positive, finite p). Off-support
// entries are zero.
Vector p_mean_gradient(const UtilitySpec& spec, std::span<const double> delta);

// W_*(w) = sup { W(v) : v >= 0, w.v = 1 } in closed form. Only quasi-concave
// utilities (p < 1, or Cobb-Douglas) are accepted.
ExtReal indirect_utility(const UtilitySpec& spec, std::span<const double> w);

struct BudgetArgmax {
  Vector v_star;
  double value;
};

// Closed-form maximizer of W on the budget line b.v = c.
BudgetArgmax budget_line_argmax(const UtilitySpec& spec, std::span<const double> b, double c);

// Any utility spec rewritten over an explicit coordinate set:
//   Power:     (weight * sum (a_k v_k)^p)^(1/p)
//   Geometric: prod (a_k v_k)^(t_k)
//   Min / Max: min / max a_k v_k
struct SeparableForm {
  enum class Kind { Power, Geometric, Min, Max };
  Kind kind = Kind::Power;
  double p = 1.0;                   // Power only
  double weight = 1.0;              // Power only
  std::vector<std::size_t> coords;  // coordinates of the argument vector
  Vector a;                         // coefficients, one per coordinate
  Vector t;                         // Geometric exponents

  // Evaluates the form on the full argument vector.
  ExtReal evaluate(std::span<const double> v) const;
  // True when the form is quasi-concave on the nonnegative orthant.
  bool quasi_concave() const;
  // True when the form vanishes whenever one of its arguments does.
  bool absorbing() const;
};

// Canonical separable form of any utility spec.
SeparableForm separable_form(const UtilitySpec& spec);

}  // namespace netput

#endif
