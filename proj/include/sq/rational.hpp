#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sq {

/// Error type used throughout the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational number over 64-bit integers.
///
/// Always stored reduced with a positive denominator. Arithmetic goes
/// through 128-bit intermediates and throws sq::Error on overflow instead
/// of wrapping silently.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Nonnegative integer power.
  Rational pow(int e) const;

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const { return double(num_) / double(den_); }

  /// "3", "-3/4"
  std::string str() const;

  /// Parses "n" or "n/d"; throws on malformed input.
  static Rational parse(const std::string& s);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Splits n >= 1 into s*s*r with r square-free; returns {s, r}.
std::pair<std::int64_t, std::int64_t> extract_square(std::int64_t n);

}  // namespace sq
