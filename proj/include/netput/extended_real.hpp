#ifndef NETPUT_EXTENDED_REAL_HPP
#define NETPUT_EXTENDED_REAL_HPP

#include <compare>
#include <string>

namespace netput {

// A value of the extended real line [-inf, +inf]. Infinite values are carried
// as a tag rather than as IEEE infinities so that arithmetic on the finite part
// never meets 0*inf or inf-inf.
class ExtReal {
 public:
  enum class Kind { NegInfinity, Finite, PosInfinity };

  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static constexpr ExtReal pos_infinity() { return ExtReal(Kind::PosInfinity); }
  static constexpr ExtReal neg_infinity() { return ExtReal(Kind::NegInfinity); }
  // Maps IEEE infinities onto the tagged representation; NaN is rejected.
  static ExtReal from_double(double v);

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_infinity() const { return kind_ == Kind::PosInfinity; }
  constexpr bool is_neg_infinity() const { return kind_ == Kind::NegInfinity; }

  // Finite value; throws Domain error for infinite values.
  double value() const;
  // IEEE view, for reporting only.
  double to_double() const;

  std::string to_string() const;
  // Accepts "inf", "+inf", "-inf" and real literals.
  static ExtReal parse(const std::string& token);

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b);

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k), value_(0.0) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

}  // namespace netput

#endif
