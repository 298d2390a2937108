#include "netput/gmean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netput/error.hpp"

namespace netput {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (weight * sum x_k^p)^(1/p) for x >= 0, p finite nonzero. Works on the
// ratios x_k / m (m = max for p > 0, min for p < 0) in log space so that
// neither large |p| nor tiny |p| overflows.
ExtReal power_mean(double weight, double p, std::span<const double> x) {
  if (x.empty()) return ExtReal(0.0);
  if (p < 0) {
    double m = *std::min_element(x.begin(), x.end());
    if (m <= 0.0) return ExtReal(0.0);
    double acc = 0.0;
    for (double xk : x) acc += std::expm1(p * std::log(xk / m));
    double log_sum = std::log(static_cast<double>(x.size())) + std::log1p(acc / x.size());
    double l = (std::log(weight) + log_sum) / p;
    double r = m * std::exp(l);
    return std::isinf(r) ? ExtReal::pos_infinity() : ExtReal(r);
  }
  double m = *std::max_element(x.begin(), x.end());
  if (m <= 0.0) return ExtReal(0.0);
  double acc = 0.0;
  for (double xk : x) acc += xk > 0.0 ? std::expm1(p * std::log(xk / m)) : -1.0;
  double log_sum = std::log(static_cast<double>(x.size())) + std::log1p(acc / x.size());
  double l = (std::log(weight) + log_sum) / p;
  double r = m * std::exp(l);
  return std::isinf(r) ? ExtReal::pos_infinity() : ExtReal(r);
}

void require_positive(const Vector& v, const char* what) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x))
      fail(ErrorCode::Domain, std::string(what) + " must be strictly positive and finite");
}

void require_nonnegative(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!(x >= 0.0) || std::isnan(x))
      fail(ErrorCode::Domain, std::string(what) + " must be nonnegative");
}

// Terms a_k v_k of a separable form, in coordinate order.
Vector scaled_terms(const SeparableForm& f, std::span<const double> v) {
  Vector out(f.coords.size());
  for (std::size_t i = 0; i < f.coords.size(); ++i) out[i] = f.a[i] * v[f.coords[i]];
  return out;
}

}  // namespace

// ---------------------------------------------------------------- PParam

PParam PParam::finite(double p) {
  if (!std::isfinite(p)) fail(ErrorCode::Domain, "finite mean order must be a finite real");
  return PParam(Kind::Finite, p);
}

PParam PParam::parse(const std::string& token) {
  ExtReal v = ExtReal::parse(token);
  if (v.is_neg_infinity()) return neg_infinity();
  if (v.is_pos_infinity()) return pos_infinity();
  return finite(v.value());
}

double PParam::value() const {
  if (kind_ != Kind::Finite) fail(ErrorCode::Domain, "value() on infinite mean order");
  return p_;
}

bool PParam::is_geometric() const {
  return kind_ == Kind::Finite && std::abs(p_) < kGeometricThreshold;
}

PParam PParam::conjugate() const {
  if (kind_ != Kind::Finite) return finite(1.0);
  if (is_geometric()) return finite(0.0);
  if (p_ == 1.0) return pos_infinity();
  return finite(p_ / (p_ - 1.0));
}

std::string PParam::to_string() const {
  if (kind_ == Kind::NegInfinity) return "-inf";
  if (kind_ == Kind::PosInfinity) return "inf";
  return ExtReal(p_).to_string();
}

std::partial_ordering operator<=>(const PParam& a, const PParam& b) {
  auto as_ext = [](const PParam& x) {
    if (x.is_neg_infinity()) return ExtReal::neg_infinity();
    if (x.is_pos_infinity()) return ExtReal::pos_infinity();
    return ExtReal(x.p_);
  };
  return as_ext(a) <=> as_ext(b);
}

// ------------------------------------------------------------- Direction

Direction::Direction(Vector g) : g_(std::move(g)) {
  for (std::size_t k = 0; k < g_.size(); ++k) {
    if (!(g_[k] >= 0.0) || !std::isfinite(g_[k]))
      fail(ErrorCode::Domain, "direction components must be finite and nonnegative");
    if (g_[k] > 0.0) support_.push_back(k);
  }
}

// ----------------------------------------------------------- UtilitySpec

UtilitySpec UtilitySpec::pmean_plain(PParam p, Vector coefficients) {
  if (coefficients.empty()) fail(ErrorCode::Domain, "utility needs at least one coordinate");
  require_positive(coefficients, "p-mean coefficients");
  return UtilitySpec(PMeanPlain{p, std::move(coefficients)});
}

UtilitySpec UtilitySpec::pmean_directional(PParam p, Direction g, bool normalized) {
  if (g.is_zero()) fail(ErrorCode::Domain, "directional p-mean needs a nonzero direction");
  return UtilitySpec(PMeanDirectional{p, std::move(g), normalized});
}

UtilitySpec UtilitySpec::cobb_douglas(Vector exponents, Vector coefficients) {
  if (exponents.empty() || exponents.size() != coefficients.size())
    fail(ErrorCode::DimensionMismatch, "Cobb-Douglas exponents and coefficients differ in length");
  require_positive(exponents, "Cobb-Douglas exponents");
  require_positive(coefficients, "Cobb-Douglas coefficients");
  double s = std::accumulate(exponents.begin(), exponents.end(), 0.0);
  if (std::abs(s - 1.0) > 1e-12) fail(ErrorCode::Domain, "Cobb-Douglas exponents must sum to 1");
  return UtilitySpec(CobbDouglas{std::move(exponents), std::move(coefficients)});
}

std::size_t UtilitySpec::dim() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PMeanPlain>) return s.coefficients.size();
        else if constexpr (std::is_same_v<T, PMeanDirectional>) return s.direction.dim();
        else return s.exponents.size();
      },
      v_);
}

// --------------------------------------------------------- SeparableForm

SeparableForm separable_form(const UtilitySpec& spec) {
  SeparableForm f;
  auto set_mean = [&f](PParam p, bool normalized) {
    const double n = static_cast<double>(f.coords.size());
    if (p.is_neg_infinity()) {
      f.kind = SeparableForm::Kind::Min;
    } else if (p.is_pos_infinity()) {
      f.kind = SeparableForm::Kind::Max;
    } else if (p.is_geometric()) {
      f.kind = SeparableForm::Kind::Geometric;
      f.t.assign(f.coords.size(), normalized ? 1.0 / n : 1.0);
    } else {
      f.kind = SeparableForm::Kind::Power;
      f.p = p.value();
      f.weight = normalized ? 1.0 / n : 1.0;
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PMeanPlain>) {
          f.coords.resize(s.coefficients.size());
          std::iota(f.coords.begin(), f.coords.end(), std::size_t{0});
          f.a = s.coefficients;
          // the plain geometric case keeps degree-one homogeneity
          set_mean(s.p, s.p.is_geometric());
        } else if constexpr (std::is_same_v<T, PMeanDirectional>) {
          f.coords = s.direction.support();
          for (std::size_t k : f.coords) f.a.push_back(1.0 / s.direction[k]);
          set_mean(s.p, s.normalized);
        } else {
          f.kind = SeparableForm::Kind::Geometric;
          f.coords.resize(s.exponents.size());
          std::iota(f.coords.begin(), f.coords.end(), std::size_t{0});
          f.a = s.coefficients;
          f.t = s.exponents;
        }
      },
      spec.variant());
  return f;
}

ExtReal SeparableForm::evaluate(std::span<const double> v) const {
  Vector x = scaled_terms(*this, v);
  require_nonnegative(x, "utility arguments");
  switch (kind) {
    case Kind::Min: return ExtReal(*std::min_element(x.begin(), x.end()));
    case Kind::Max: return ExtReal(*std::max_element(x.begin(), x.end()));
    case Kind::Geometric: {
      double l = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0) return ExtReal(0.0);
        l += t[i] * std::log(x[i]);
      }
      double r = std::exp(l);
      return std::isinf(r) ? ExtReal::pos_infinity() : ExtReal(r);
    }
    case Kind::Power: return power_mean(weight, p, x);
  }
  return ExtReal(0.0);
}

bool SeparableForm::quasi_concave() const {
  return kind == Kind::Min || kind == Kind::Geometric || (kind == Kind::Power && p <= 1.0);
}

bool SeparableForm::absorbing() const {
  return kind == Kind::Min || kind == Kind::Geometric || (kind == Kind::Power && p < 0.0);
}

// ------------------------------------------------------------ operations

ExtReal phi_sum(PParam p, std::span<const double> delta) {
  require_nonnegative(delta, "phi_p-sum arguments");
  if (delta.empty()) return ExtReal(0.0);
  if (p.is_pos_infinity()) return ExtReal(*std::max_element(delta.begin(), delta.end()));
  if (p.is_neg_infinity()) return ExtReal(*std::min_element(delta.begin(), delta.end()));
  if (p.value() == 0.0)
    fail(ErrorCode::Domain, "phi_p-sum is undefined at p = 0; use the geometric mean");
  return power_mean(1.0, p.value(), delta);
}

ExtReal p_mean_utility(const UtilitySpec& spec, std::span<const double> delta) {
  if (delta.size() != spec.dim())
    fail(ErrorCode::DimensionMismatch, "utility argument has the wrong dimension");
  return separable_form(spec).evaluate(delta);
}

Vector p_mean_gradient(const UtilitySpec& spec, std::span<const double> delta) {
  if (delta.size() != spec.dim())
    fail(ErrorCode::DimensionMismatch, "utility argument has the wrong dimension");
  const SeparableForm f = separable_form(spec);
  Vector grad(delta.size(), 0.0);
  Vector x = scaled_terms(f, delta);
  switch (f.kind) {
    case SeparableForm::Kind::Min:
    case SeparableForm::Kind::Max: {
      auto it = f.kind == SeparableForm::Kind::Min ? std::min_element(x.begin(), x.end())
                                                   : std::max_element(x.begin(), x.end());
      std::size_t i = static_cast<std::size_t>(it - x.begin());
      grad[f.coords[i]] = f.a[i];
      return grad;
    }
    case SeparableForm::Kind::Geometric: {
      double w = f.evaluate(delta).value();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(delta[f.coords[i]] > 0.0)) fail(ErrorCode::Domain, "gradient needs positive arguments");
        grad[f.coords[i]] = w * f.t[i] / delta[f.coords[i]];
      }
      return grad;
    }
    case SeparableForm::Kind::Power: {
      double w = f.evaluate(delta).value();
      // shares r_i = x_i^p / sum x_j^p, computed as a softmax of p log x
      Vector lx(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) fail(ErrorCode::Domain, "gradient needs positive arguments");
        lx[i] = f.p * std::log(x[i]);
      }
      double mx = *std::max_element(lx.begin(), lx.end());
      double s = 0.0;
      for (double l : lx) s += std::exp(l - mx);
      for (std::size_t i = 0; i < x.size(); ++i)
        grad[f.coords[i]] = w * (std::exp(lx[i] - mx) / s) / delta[f.coords[i]];
      return grad;
    }
  }
  return grad;
}

ExtReal indirect_utility(const UtilitySpec& spec, std::span<const double> w) {
  if (w.size() != spec.dim())
    fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  require_nonnegative(w, "prices");
  const SeparableForm f = separable_form(spec);
  if (!f.quasi_concave() || (f.kind == SeparableForm::Kind::Power && f.p == 1.0))
    fail(ErrorCode::Unsupported,
         "indirect utility in closed form needs p < 1; use norm duality for p >= 1");
  Vector r(f.coords.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = w[f.coords[i]] / f.a[i];
  switch (f.kind) {
    case SeparableForm::Kind::Min: {
      double s = std::accumulate(r.begin(), r.end(), 0.0);
      return s > 0.0 ? ExtReal(1.0 / s) : ExtReal::pos_infinity();
    }
    case SeparableForm::Kind::Geometric: {
      double total = std::accumulate(f.t.begin(), f.t.end(), 0.0);
      double l = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] <= 0.0) return ExtReal::pos_infinity();
        l += f.t[i] * std::log(f.t[i] / (total * r[i]));
      }
      double v = std::exp(l);
      return std::isinf(v) ? ExtReal::pos_infinity() : ExtReal(v);
    }
    case SeparableForm::Kind::Power: {
      const double q = f.p / (f.p - 1.0);
      ExtReal s = power_mean(1.0, q, r);
      if (!s.is_finite() || s.value() <= 0.0) return ExtReal::pos_infinity();
      double v = std::exp(std::log(f.weight) / f.p - std::log(s.value()));
      return std::isinf(v) ? ExtReal::pos_infinity() : ExtReal(v);
    }
    case SeparableForm::Kind::Max: break;
  }
  fail(ErrorCode::Unsupported, "indirect utility unavailable for this utility");
}

BudgetArgmax budget_line_argmax(const UtilitySpec& spec, std::span<const double> b, double c) {
  if (b.size() != spec.dim())
    fail(ErrorCode::DimensionMismatch, "price vector has the wrong dimension");
  if (!(c > 0.0)) fail(ErrorCode::Domain, "budget must be positive");
  for (double x : b)
    if (!(x > 0.0)) fail(ErrorCode::Domain, "budget-line prices must be positive");
  const SeparableForm f = separable_form(spec);
  if (!f.quasi_concave() || (f.kind == SeparableForm::Kind::Power && f.p == 1.0))
    fail(ErrorCode::Unsupported, "closed-form budget maximizer needs p < 1");

  BudgetArgmax out{Vector(b.size(), 0.0), 0.0};
  const std::size_t n = f.coords.size();
  switch (f.kind) {
    case SeparableForm::Kind::Min: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += b[f.coords[i]] / f.a[i];
      double level = c / s;
      for (std::size_t i = 0; i < n; ++i) out.v_star[f.coords[i]] = level / f.a[i];
      out.value = level;
      return out;
    }
    case SeparableForm::Kind::Geometric: {
      double total = std::accumulate(f.t.begin(), f.t.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        out.v_star[f.coords[i]] = c * f.t[i] / (total * b[f.coords[i]]);
      out.value = f.evaluate(out.v_star).value();
      return out;
    }
    case SeparableForm::Kind::Power: {
      const double p = f.p, q = p / (p - 1.0);
      // v_k = c [sum (b_k/a_k)^q]^-1 (a_k^-p b_k)^(1/(p-1))
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::pow(b[f.coords[i]] / f.a[i], q);
      for (std::size_t i = 0; i < n; ++i) {
        double bk = b[f.coords[i]];
        out.v_star[f.coords[i]] = c / s * std::pow(std::pow(f.a[i], -p) * bk, 1.0 / (p - 1.0));
      }
      out.value = std::pow(f.weight, 1.0 / p) * c * std::pow(s, -1.0 / q);
      return out;
    }
    case SeparableForm::Kind::Max: break;
  }
  fail(ErrorCode::Unsupported, "closed-form budget maximizer unavailable for this utility");
}

}  // namespace netput
