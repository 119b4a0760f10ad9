#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "centroaffine/errors.hpp"

namespace centroaffine {

// Arbitrary-precision rational scalar. Thin eager wrapper around mpq_class so
// that templated geometry code sees a plain value type (no gmpxx expression
// templates leaking through `auto` or template deduction).
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}
  Rat(long n) : v_(static_cast<long int>(n)) {}
  Rat(long num, long den) : v_(num, den) {
    if (den == 0) fail("scalar/DivisionByZero", "rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) {}
  // Parses "p/q" or a plain integer string.
  explicit Rat(const std::string& str) : v_(0) {
    if (v_.set_str(str, 10) != 0)
      fail("scalar/ParseError", "cannot parse rational '" + str + "'");
    if (v_.get_den() == 0)
      fail("scalar/DivisionByZero", "rational with zero denominator: '" + str + "'");
    v_.canonicalize();
  }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.v_ == 0) fail("scalar/DivisionByZero", "rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }
  int sign() const { return sgn(v_); }
  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static std::string name() { return "float"; }
  // 17 significant digits: round-trips any IEEE double.
  static std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }
  static double from_string(const std::string& s) {
    // accept "p/q" too, so float runs can read rational files
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return std::strtod(s.substr(0, slash).c_str(), nullptr) /
             std::strtod(s.substr(slash + 1).c_str(), nullptr);
    return std::strtod(s.c_str(), nullptr);
  }
  static double magnitude(double x) { return std::abs(x); }
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static std::string name() { return "rational"; }
  static std::string to_string(const Rat& x) { return x.str(); }
  static Rat from_string(const std::string& s) { return Rat(s); }
  static double magnitude(const Rat& x) { return std::abs(x.to_double()); }
};

// Zero test: exact for rationals, |x| <= tol for floats.
template <class S>
bool near_zero(const S& x, double tol) {
  if constexpr (scalar_traits<S>::exact)
    return x == S(0);
  else
    return scalar_traits<S>::magnitude(x) <= tol;
}

template <class S>
bool near(const S& a, const S& b, double tol) {
  return near_zero<S>(a - b, tol);
}

}  // namespace centroaffine
