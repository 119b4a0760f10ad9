#pragma once

#include "centroaffine/scalar.hpp"

namespace centroaffine {

template <class S>
struct Vec2 {
  S x{};
  S y{};

  Vec2() = default;
  Vec2(S xx, S yy) : x(std::move(xx)), y(std::move(yy)) {}

  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  friend Vec2 operator*(const S& c, const Vec2& v) { return {c * v.x, c * v.y}; }
  Vec2 operator/(const S& c) const { return {x / c, y / c}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

// The centroaffine area pairing: det of the 2x2 matrix with columns a, b.
template <class S>
S bracket(const Vec2<S>& a, const Vec2<S>& b) {
  return a.x * b.y - b.x * a.y;
}

// Row-major 2x2 matrix.
template <class S>
struct Mat2 {
  S a{}, b{}, c{}, d{};

  Mat2() = default;
  Mat2(S aa, S bb, S cc, S dd)
      : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {}

  static Mat2 identity() { return {S(1), S(0), S(0), S(1)}; }

  S det() const { return a * d - b * c; }
  S trace() const { return a + d; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  friend Mat2 operator*(const S& k, const Mat2& m) {
    return {k * m.a, k * m.b, k * m.c, k * m.d};
  }
  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }

  Vec2<S> apply(const Vec2<S>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

  Mat2 inverse() const {
    S dt = det();
    if (near_zero(dt, 0.0)) fail("core_polygon/SingularMatrix", "2x2 inverse of singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
};

template <class S>
bool near_identity(const Mat2<S>& m, double tol) {
  return near(m.a, S(1), tol) && near_zero(m.b, tol) && near_zero(m.c, tol) &&
         near(m.d, S(1), tol);
}

// Largest entry magnitude; scale reference for relative tolerances.
template <class S>
double mat_scale(const Mat2<S>& m) {
  double r = 0;
  for (const S* p : {&m.a, &m.b, &m.c, &m.d})
    r = std::max(r, scalar_traits<S>::magnitude(*p));
  return r;
}

}  // namespace centroaffine
