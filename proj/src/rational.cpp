#include "sq/rational.hpp"

#include <numeric>

namespace sq {

namespace {

using i128 = __int128;

constexpr std::int64_t kMax = INT64_MAX;
constexpr std::int64_t kMin = INT64_MIN;

std::int64_t narrow(i128 v, const char* what) {
  if (v > i128(kMax) || v < i128(kMin) || v == i128(kMin)) {
    throw Error(std::string("rational overflow in ") + what);
  }
  return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = narrow(nn, "construction");
  den_ = narrow(dd, "construction");
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-i128(num_), "negation");
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n, "addition");
  den_ = narrow(d, "addition");
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  i128 n = i128(num_) * o.num_;
  i128 d = i128(den_) * o.den_;
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n, "multiplication");
  den_ = narrow(d, "multiplication");
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw Error("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

Rational Rational::pow(int e) const {
  if (e < 0) {
    if (num_ == 0) throw Error("rational 0 to negative power");
    return Rational(den_, num_).pow(-e);
  }
  Rational r(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base = (e > 1) ? base * base : base;
    e >>= 1;
  }
  return r;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(s));
    }
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error("malformed rational literal: " + s);
  }
}

std::pair<std::int64_t, std::int64_t> extract_square(std::int64_t n) {
  if (n < 1) throw Error("extract_square requires a positive integer");
  std::int64_t s = 1, r = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int k = 0; k + 1 < e; k += 2) s = narrow(i128(s) * p, "extract_square");
    if (e & 1) r = narrow(i128(r) * p, "extract_square");
  }
  r = narrow(i128(r) * n, "extract_square");
  return {s, r};
}

}  // namespace sq
