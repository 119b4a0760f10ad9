#pragma once

#include <tuple>
#include <vector>

#include "centroaffine/linalg.hpp"
#include "centroaffine/polygon.hpp"

namespace centroaffine {

// Ternary quadratic form a x^2 - b xy + c y^2.
template <class S>
struct QuadraticForm {
  S a{}, b{}, c{};

  S eval(const S& x, const S& y) const { return a * x * x - b * x * y + c * y * y; }
  S discriminant() const { return b * b - S(4) * a * c; }
  QuadraticForm operator+(const QuadraticForm& o) const {
    return {a + o.a, b + o.b, c + o.c};
  }
  bool operator==(const QuadraticForm& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
};

// d[P_i, P_{i+1}] along a vertex displacement; zero on the fixed-side-area stratum.
template <class S>
S side_derivative(const Polygon<S>& p, const TangentVec<S>& u, long i) {
  const int n = p.n();
  const Vec2<S>& ui = u[static_cast<size_t>(((i % n) + n) % n)];
  const Vec2<S>& uj = u[static_cast<size_t>((((i + 1) % n) + n) % n)];
  return bracket(ui, p.vertex(i + 1)) + bracket(p.vertex(i), uj);
}

template <class S>
double tangency_defect(const Polygon<S>& p, const TangentVec<S>& u) {
  double worst = 0;
  for (long i = 0; i < p.n(); ++i)
    worst = std::max(worst, scalar_traits<S>::magnitude(side_derivative(p, u, i)));
  return worst;
}

/** The presymplectic form on closed polygons with fixed side areas,
 *    omega = sum_i s[i] (dx_i ^ dy_{i+1} + dx_{i+1} ^ dy_i),
 *  evaluated on two tangent vectors. Both arguments must be tangent to the
 *  stratum (checked to 1e-9; exactly for rationals). */
template <class S>
S omega(const Polygon<S>& p, const TangentVec<S>& u, const TangentVec<S>& v,
        double tangent_tol = 1e-9) {
  if (!p.closed) fail("symplectic_center/NotTangent", "omega lives on closed polygons");
  if (tangency_defect(p, u) > tangent_tol || tangency_defect(p, v) > tangent_tol)
    fail("symplectic_center/NotTangent", "arguments must preserve all side areas");
  const int n = p.n();
  S acc(0);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const S s = bracket(p.vertex(i), p.vertex(i + 1));
    acc += s * (u[i].x * v[j].y - v[i].x * u[j].y + u[j].x * v[i].y - v[j].x * u[i].y);
  }
  return acc;
}

// Generators of the diagonal sl(2) action as vertex displacement fields.
template <class S>
TangentVec<S> sl2_e(const Polygon<S>& p) {  // x d/dy
  TangentVec<S> u;
  for (const auto& q : p.vertices) u.push_back({S(0), q.x});
  return u;
}

template <class S>
TangentVec<S> sl2_h(const Polygon<S>& p) {  // x d/dx - y d/dy
  TangentVec<S> u;
  for (const auto& q : p.vertices) u.push_back({q.x, -q.y});
  return u;
}

template <class S>
TangentVec<S> sl2_f(const Polygon<S>& p) {  // y d/dx
  TangentVec<S> u;
  for (const auto& q : p.vertices) u.push_back({q.y, S(0)});
  return u;
}

/** The three side-area-weighted quadratic sums
 *    I = sum s[i] x_i x_{i+1},  J = sum s[i] (x_i y_{i+1} + x_{i+1} y_i),
 *    K = sum s[i] y_i y_{i+1};
 *  the moment map components of the sl(2) action, conserved by the
 *  correspondence and by recutting. */
template <class S>
std::tuple<S, S, S> ijk(const Polygon<S>& p) {
  if (!p.closed) fail("symplectic_center/NotTangent", "ijk needs a closed polygon");
  S I(0), J(0), K(0);
  for (long i = 0; i < p.n(); ++i) {
    const Vec2<S> a = p.vertex(i), b = p.vertex(i + 1);
    const S s = bracket(a, b);
    I += s * a.x * b.x;
    J += s * (a.x * b.y + b.x * a.y);
    K += s * a.y * b.y;
  }
  return {I, J, K};
}

// Exact directional derivatives of I, J, K along a vertex displacement
// (product rule through both the side factors and the coordinate factors).
template <class S>
std::tuple<S, S, S> ijk_derivative(const Polygon<S>& p, const TangentVec<S>& u) {
  const int n = p.n();
  S dI(0), dJ(0), dK(0);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Vec2<S> a = p.vertex(i), b = p.vertex(i + 1);
    const Vec2<S>&ua = u[i], &ub = u[j];
    const S s = bracket(a, b);
    const S ds = side_derivative(p, u, i);
    dI += ds * a.x * b.x + s * (ua.x * b.x + a.x * ub.x);
    dJ += ds * (a.x * b.y + b.x * a.y) +
          s * (ua.x * b.y + a.x * ub.y + ub.x * a.y + b.x * ua.y);
    dK += ds * a.y * b.y + s * (ua.y * b.y + a.y * ub.y);
  }
  return {dI, dJ, dK};
}

// sl(2)-invariant combination: constant on SL(2) orbits and under both dynamics.
template <class S>
S casimir(const Polygon<S>& p) {
  auto [I, J, K] = ijk(p);
  return S(4) * I * K - J * J;
}

// The center: the quadratic form I x^2 - J xy + K y^2 attached to a closed polygon.
template <class S>
QuadraticForm<S> center(const Polygon<S>& p) {
  auto [I, J, K] = ijk(p);
  return {I, J, K};
}

/** Unique central conic a x^2 - b xy + c y^2 = 1 through three given points
 *  (rows (x^2, xy, y^2) against ones). The center of the triangle equals
 *  -s0 s1 s2 times this conic with its outer coefficients swapped. */
template <class S>
QuadraticForm<S> circumconic(const Vec2<S>& p0, const Vec2<S>& p1, const Vec2<S>& p2) {
  std::vector<std::vector<S>> m{{p0.x * p0.x, p0.x * p0.y, p0.y * p0.y},
                                {p1.x * p1.x, p1.x * p1.y, p1.y * p1.y},
                                {p2.x * p2.x, p2.x * p2.y, p2.y * p2.y}};
  std::vector<S> rhs{S(1), S(1), S(1)};
  std::vector<S> sol;
  if (!solve_linear(m, rhs, sol))
    fail("symplectic_center/SingularSystem", "no unique circumscribed central conic");
  return {sol[0], -sol[1], sol[2]};
}

// Numeric basis of the tangent space to the fixed-side-area stratum at p,
// as vertex displacement vectors (dimension n for a regular value).
template <class S>
std::vector<TangentVec<S>> fixed_area_tangent_basis(const Polygon<S>& p) {
  const int n = p.n();
  std::vector<std::vector<S>> rows(n, std::vector<S>(2 * n, S(0)));
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const Vec2<S> a = p.vertex(i), b = p.vertex(i + 1);
    // d s_i = y_{i+1} dx_i - x_{i+1} dy_i - y_i dx_{i+1} + x_i dy_{i+1}
    rows[i][2 * i + 0] += b.y;
    rows[i][2 * i + 1] -= b.x;
    rows[i][2 * j + 0] -= a.y;
    rows[i][2 * j + 1] += a.x;
  }
  std::vector<TangentVec<S>> basis;
  for (auto& flat : nullspace(rows)) {
    TangentVec<S> u(n);
    for (int i = 0; i < n; ++i) u[i] = {flat[2 * i], flat[2 * i + 1]};
    basis.push_back(std::move(u));
  }
  return basis;
}

}  // namespace centroaffine
