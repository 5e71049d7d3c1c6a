#include "bellscope/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <type_traits>

namespace bellscope {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_scenario: return "invalid-scenario";
    case ErrorCode::invalid_pair: return "invalid-pair";
    case ErrorCode::invalid_vector: return "invalid-vector";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::mode_mismatch: return "mode-mismatch";
    case ErrorCode::non_binary: return "non-binary";
    case ErrorCode::not_independence_vector: return "not-an-independence-vector";
    case ErrorCode::outside_polytope: return "outside-polytope";
    case ErrorCode::unsupported_scenario: return "unsupported-scenario";
    case ErrorCode::not_convex: return "not-convex";
    case ErrorCode::reconstruction_mismatch: return "reconstruction-mismatch";
    case ErrorCode::inadmissible: return "inadmissible";
    case ErrorCode::lp_infeasible: return "lp-infeasible";
    case ErrorCode::zero_probability: return "zero-probability";
    case ErrorCode::not_a_partition: return "not-a-partition";
    case ErrorCode::signaling_rejected: return "signaling-rejected";
    case ErrorCode::coefficient_mismatch: return "coefficient-mismatch";
    case ErrorCode::non_deterministic: return "non-deterministic";
    case ErrorCode::screening_failed: return "screening-failed";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::not_unit: return "non-unit-direction";
    case ErrorCode::not_density_operator: return "not-a-density-operator";
    case ErrorCode::not_projection: return "not-a-projection";
    case ErrorCode::norm_violation: return "norm-violation";
    case ErrorCode::commutation_violation: return "commutation-violation";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::internal: return "internal-error";
  }
  return "unknown-error";
}

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? "exact" : "float";
}

ArithmeticMode parse_mode(std::string_view text) {
  if (text == "exact") return ArithmeticMode::exact;
  if (text == "float") return ArithmeticMode::floating;
  throw Error(ErrorCode::parse_error, "unknown arithmetic mode '" + std::string(text) + "'");
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorCode::parse_error, "bad integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  if (negative) z = -z;
  return Rational(z);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash));
    Rational den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto dot = body.find('.');
  std::string_view whole = dot == std::string_view::npos ? body : body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw Error(ErrorCode::parse_error, "bad number '" + std::string(text) + "'");
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
    throw Error(ErrorCode::parse_error, "bad number '" + std::string(text) + "'");

  mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  Rational q(digits, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

/// mpq get_d truncates; pick the nearer of the two neighbouring doubles.
double nearest_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return d;
  const double up = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(up)) return d;
  const Rational gap_d = abs(q - Rational(d)), gap_up = abs(Rational(up) - q);
  return gap_up < gap_d ? up : d;
}

}  // namespace

Scalar Scalar::zero(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? Scalar(Rational(0)) : Scalar(0.0);
}

Scalar Scalar::one(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? Scalar(Rational(1)) : Scalar(1.0);
}

Scalar Scalar::parse(std::string_view text, ArithmeticMode mode) {
  Rational q = parse_rational(text);
  return mode == ArithmeticMode::exact ? Scalar(std::move(q)) : Scalar(nearest_double(q));
}

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error(ErrorCode::mode_mismatch, "exact value requested from a float scalar");
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return nearest_double(*q);
  return std::get<double>(value_);
}

Scalar Scalar::in_mode(ArithmeticMode mode) const {
  if (mode == this->mode()) return *this;
  if (mode == ArithmeticMode::floating) return Scalar(to_double());
  return Scalar(Rational(std::get<double>(value_)));
}

bool Scalar::is_zero() const { return sign() == 0; }

bool Scalar::is_one() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q == 1;
  return std::get<double>(value_) == 1.0;
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

namespace {

template <class Op>
void apply_same_mode(std::variant<Rational, double>& lhs, const std::variant<Rational, double>& rhs, Op op) {
  if (lhs.index() != rhs.index())
    throw Error(ErrorCode::mode_mismatch, "arithmetic between exact and float values");
  if (auto* q = std::get_if<Rational>(&lhs)) {
    op(*q, std::get<Rational>(rhs));
  } else {
    op(std::get<double>(lhs), std::get<double>(rhs));
  }
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  apply_same_mode(value_, rhs.value_, [](auto& a, const auto& b) { a += b; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  apply_same_mode(value_, rhs.value_, [](auto& a, const auto& b) { a -= b; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  apply_same_mode(value_, rhs.value_, [](auto& a, const auto& b) { a *= b; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::zero_probability, "division by zero");
  apply_same_mode(value_, rhs.value_, [](auto& a, const auto& b) { a /= b; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.value_.index() != rhs.value_.index())
    throw Error(ErrorCode::mode_mismatch, "comparison between exact and float values");
  if (const auto* q = std::get_if<Rational>(&lhs.value_)) return *q == std::get<Rational>(rhs.value_);
  return std::get<double>(lhs.value_) == std::get<double>(rhs.value_);
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.value_.index() != rhs.value_.index())
    throw Error(ErrorCode::mode_mismatch, "comparison between exact and float values");
  if (const auto* q = std::get_if<Rational>(&lhs.value_)) {
    int c = cmp(*q, std::get<Rational>(rhs.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return std::get<double>(lhs.value_) <=> std::get<double>(rhs.value_);
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return bellscope::to_string(*q);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, res.ptr);
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  if (a.mode() != b.mode()) throw Error(ErrorCode::mode_mismatch, "comparison between exact and float values");
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

void require_mode(const std::vector<Scalar>& values, ArithmeticMode mode) {
  for (const auto& v : values)
    if (v.mode() != mode) throw Error(ErrorCode::mode_mismatch, "mixed arithmetic modes");
}

}  // namespace bellscope
