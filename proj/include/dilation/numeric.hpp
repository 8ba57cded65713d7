#pragma once
// Exact arithmetic used by the rational and quadratic-surd tracks.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "dilation/error.hpp"

namespace dilation {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Parses "p/q", integers and plain decimals ("0.5", "-1.25e-3") exactly.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(ErrorCode::InvalidArgument, "not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) return bad();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) return bad();
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  long scale = 0;
  bool digits = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_point) --scale;
      digits = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!digits) return bad();
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return bad();
    std::string exponent(text.substr(i + 1));
    if (exponent.empty()) return bad();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exponent, &used);
    } catch (const std::exception&) {
      return bad();
    }
    if (used != exponent.size()) return bad();
    scale += e;
  }
  Rational value(mantissa);
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(scale)));
  value = scale >= 0 ? value * Rational(ten_pow) : value / Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& q) { return q.str(); }

/// Number of the form a + b*sqrt(d) with a, b rational and d a square-free
/// positive integer. d == 1 is folded into the rational part.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(implicit)
  QuadraticSurd(int a) : a_(a) {}                  // NOLINT(implicit)
  QuadraticSurd(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)) {
    if (d <= 0) fail(ErrorCode::InvalidArgument, "radicand must be positive");
    auto [square, free] = split_square(d);
    b_ *= square;
    d_ = free;
    normalize();
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * d_;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  double to_double() const {
    double root = std::sqrt(static_cast<double>(d_));
    if (a_.sign() * b_.sign() >= 0) {
      return dilation::to_double(a_) + dilation::to_double(b_) * root;
    }
    // conjugate form avoids cancellation
    Rational norm = a_ * a_ - b_ * b_ * d_;
    return dilation::to_double(norm) / (dilation::to_double(a_) - dilation::to_double(b_) * root);
  }

  friend QuadraticSurd operator-(const QuadraticSurd& x) {
    QuadraticSurd r = x;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }
  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    QuadraticSurd r;
    r.d_ = common_radicand(x, y);
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ + y.b_;
    r.normalize();
    return r;
  }
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    QuadraticSurd r;
    r.d_ = common_radicand(x, y);
    r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * r.d_;
    r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    r.normalize();
    return r;
  }
  QuadraticSurd& operator+=(const QuadraticSurd& y) { return *this = *this + y; }
  QuadraticSurd& operator-=(const QuadraticSurd& y) { return *this = *this - y; }

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).is_zero(); }
  friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticSurd& x, const QuadraticSurd& y) { return y < x; }
  friend bool operator<=(const QuadraticSurd& x, const QuadraticSurd& y) { return !(y < x); }
  friend bool operator>=(const QuadraticSurd& x, const QuadraticSurd& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticSurd& x) {
    os << x.a_;
    if (x.b_ != 0) os << (x.b_ > 0 ? "+" : "-") << abs(x.b_) << "*sqrt(" << x.d_ << ")";
    return os;
  }

 private:
  static std::pair<std::int64_t, std::int64_t> split_square(std::int64_t d) {
    std::int64_t square = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
      while (d % (p * p) == 0) {
        d /= p * p;
        square *= p;
      }
    }
    return {square, d};
  }
  static std::int64_t common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) fail(ErrorCode::InvalidArgument, "arithmetic across different radicands");
    return x.d_;
  }
  void normalize() {
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (b_ == 0) d_ = 1;
  }

  Rational a_{0};
  Rational b_{0};
  std::int64_t d_{1};
};

/// Largest integer k with x - k*y > 0, for x, y > 0 (exact).
inline BigInt largest_positive_multiple(const QuadraticSurd& x, const QuadraticSurd& y) {
  double guess = std::ceil(x.to_double() / y.to_double()) - 1.0;
  BigInt k = guess > 0 ? BigInt(static_cast<long long>(guess)) : BigInt(0);
  auto remainder = [&](const BigInt& m) { return x - y * QuadraticSurd(Rational(m)); };
  while (remainder(k + 1).sign() > 0) ++k;
  while (k > 0 && remainder(k).sign() <= 0) --k;
  return k;
}

}  // namespace dilation
