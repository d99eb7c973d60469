#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "flatgap/errors.hpp"

namespace flatgap {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar for the exact arithmetic model. Plain wrapper over
// cpp_int numerator/denominator, always normalized with denominator > 0.
// Implicit construction is limited to built-in integers so that Eigen's
// scalar-promotion machinery never probes cpp_int's converting constructors.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}

  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  Rational(I n) : num_(n), den_(1) {}

  explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0)
      throw Error(ErrorCode::ParseError, "numeric", "zero denominator");
    normalize();
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0)
      throw Error(ErrorCode::ZeroDenominator, "numeric", "division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  double to_double() const {
    if (num_ == 0) return 0.0;
    // Scale so both operands convert without intermediate overflow.
    const long nb = static_cast<long>(boost::multiprecision::msb(
        num_ < 0 ? BigInt(-num_) : num_));
    const long db = static_cast<long>(boost::multiprecision::msb(den_));
    const long shift = std::max(nb, db) - 500;
    if (shift > 0) {
      return static_cast<double>(BigInt(num_ >> shift)) /
             static_cast<double>(BigInt(den_ >> shift));
    }
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string to_string() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Parses "p/q", "-3", or a plain decimal like "1.25" / "2.5e-1" into an exact
// rational. Returns nullopt on malformed input. `saw_decimal` reports whether
// the literal used decimal-point/exponent notation (drives model selection).
std::optional<Rational> parse_rational(std::string_view text,
                                       bool* saw_decimal = nullptr);

// ---------------------------------------------------------------------------
// Scalar model: shared predicates for the exact and floating models.
//
// The floating model compares with a relative tolerance eps_exact = 1e-12;
// the exact model compares exactly.
// ---------------------------------------------------------------------------

inline constexpr double kEpsExact = 1e-12;

template <typename S>
struct ScalarModel;

template <>
struct ScalarModel<Rational> {
  static constexpr bool is_exact = true;
  static const char* name() { return "exact"; }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational from_int(long v) { return Rational(v); }
  // sign of `value`, where `scale` bounds the magnitude of the inputs that
  // produced it (ignored in the exact model)
  static int sign(const Rational& value, const Rational& /*scale*/) {
    return value.sign();
  }
  static bool eq(const Rational& a, const Rational& b,
                 const Rational& /*scale*/) {
    return a == b;
  }
  static std::string to_string(const Rational& x) { return x.to_string(); }
};

template <>
struct ScalarModel<double> {
  static constexpr bool is_exact = false;
  static const char* name() { return "float"; }
  static double to_double(double x) { return x; }
  static double from_int(long v) { return static_cast<double>(v); }
  static int sign(double value, double scale) {
    const double tol = kEpsExact * std::abs(scale);
    if (value > tol) return 1;
    if (value < -tol) return -1;
    return 0;
  }
  static bool eq(double a, double b, double scale) {
    return std::abs(a - b) <= kEpsExact * std::max(1.0, std::abs(scale));
  }
  static std::string to_string(double x);
};

// printf %.17g — shortest representation that round-trips, used everywhere a
// double is written to text so outputs are byte-stable
std::string format_double(double x);

inline std::string ScalarModel<double>::to_string(double x) {
  return format_double(x);
}

std::optional<double> parse_double(std::string_view text);

// FNV-1a, used for cache keys and manifests (stable across runs/platforms).
class Fnv1a {
 public:
  void update(const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void update(std::string_view s) { update(s.data(), s.size()); }
  uint64_t digest() const { return state_; }
  std::string hex() const;

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace flatgap

namespace Eigen {

template <>
struct NumTraits<flatgap::Rational> {
  using Real = flatgap::Rational;
  using NonInteger = flatgap::Rational;
  using Literal = flatgap::Rational;
  using Nested = flatgap::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline Real epsilon() { return flatgap::Rational(0); }
  static inline Real dummy_precision() { return flatgap::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
