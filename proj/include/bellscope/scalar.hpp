#pragma once

// Numbers that are either exact rationals or doubles. The two modes never mix:
// any binary operation across modes throws ErrorCode::mode_mismatch.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bellscope/error.hpp"

namespace bellscope {

using Rational = mpq_class;

enum class ArithmeticMode { exact, floating };

std::string_view to_string(ArithmeticMode mode);
ArithmeticMode parse_mode(std::string_view text);

/// Parses "a/b", an integer, or a plain decimal ("0.125") into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
  explicit Scalar(double d) : value_(d) {}

  static Scalar exact(long num, long den = 1) { return Scalar(Rational(num, den)); }
  static Scalar zero(ArithmeticMode mode);
  static Scalar one(ArithmeticMode mode);
  /// Parses text in the given mode; float mode rounds the exact decimal once.
  static Scalar parse(std::string_view text, ArithmeticMode mode);

  ArithmeticMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ArithmeticMode::exact
                                                    : ArithmeticMode::floating;
  }
  bool is_exact() const { return mode() == ArithmeticMode::exact; }

  const Rational& rational() const;
  double to_double() const;
  Scalar in_mode(ArithmeticMode mode) const;

  bool is_zero() const;
  bool is_one() const;
  int sign() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  /// "a/b" for rationals, shortest round-trip decimal for doubles.
  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);

/// |a - b| <= tol for doubles; exact equality for rationals (tol ignored).
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

/// Throws mode_mismatch unless every entry uses `mode`.
void require_mode(const std::vector<Scalar>& values, ArithmeticMode mode);

}  // namespace bellscope
