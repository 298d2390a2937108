#include "netput/extended_real.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "netput/error.hpp"

namespace netput {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::ConvexityRequired: return "convexity-required";
    case ErrorCode::Config: return "config";
    case ErrorCode::SolverFailure: return "solver-failure";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

ExtReal ExtReal::from_double(double v) {
  if (std::isnan(v)) fail(ErrorCode::Domain, "NaN is not an extended real");
  if (std::isinf(v)) return v > 0 ? pos_infinity() : neg_infinity();
  return ExtReal(v);
}

double ExtReal::value() const {
  if (kind_ != Kind::Finite) fail(ErrorCode::Domain, "value() on infinite extended real");
  return value_;
}

double ExtReal::to_double() const {
  switch (kind_) {
    case Kind::NegInfinity: return -std::numeric_limits<double>::infinity();
    case Kind::PosInfinity: return std::numeric_limits<double>::infinity();
    case Kind::Finite: break;
  }
  return value_;
}

std::string ExtReal::to_string() const {
  if (kind_ == Kind::PosInfinity) return "inf";
  if (kind_ == Kind::NegInfinity) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

ExtReal ExtReal::parse(const std::string& token) {
  if (token == "inf" || token == "+inf" || token == "Infinity") return pos_infinity();
  if (token == "-inf" || token == "-Infinity") return neg_infinity();
  if (token.empty()) fail(ErrorCode::Parse, "empty numeric token");
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE)
    fail(ErrorCode::Parse, "invalid numeric token '" + token + "'");
  return from_double(v);
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  auto rank = [](ExtReal::Kind k) {
    return k == ExtReal::Kind::NegInfinity ? 0 : (k == ExtReal::Kind::Finite ? 1 : 2);
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != ExtReal::Kind::Finite) return std::partial_ordering::equivalent;
  return a.value_ <=> b.value_;
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  return (a <=> b) == std::partial_ordering::equivalent;
}

}  // namespace netput
