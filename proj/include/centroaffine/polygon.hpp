#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "centroaffine/errors.hpp"
#include "centroaffine/vec2.hpp"

namespace centroaffine {

inline constexpr double kClosureTol = 1e-9;

// A twisted n-gon: one fundamental period of vertices plus the monodromy M
// with P_{i+n} = M(P_i). Closed polygons carry the identity monodromy.
template <class S>
struct Polygon {
  std::vector<Vec2<S>> vertices;
  bool closed = true;
  Mat2<S> monodromy = Mat2<S>::identity();

  int n() const { return static_cast<int>(vertices.size()); }

  // Cyclic vertex access with monodromy wrap, valid for any integer index.
  Vec2<S> vertex(long i) const {
    const long nn = n();
    Vec2<S> p;
    if (i >= 0 && i < nn) return vertices[static_cast<size_t>(i)];
    long k = i;
    Mat2<S> m = Mat2<S>::identity();
    while (k >= nn) { m = m * monodromy; k -= nn; }
    if (k < 0) {
      Mat2<S> inv = monodromy.inverse();
      while (k < 0) { m = m * inv; k += nn; }
    }
    return m.apply(vertices[static_cast<size_t>(k)]);
  }
};

// Vertex-displacement tangent vector (one Vec2 per vertex of the period).
template <class S>
using TangentVec = std::vector<Vec2<S>>;

template <class S>
Polygon<S> make_closed(std::vector<Vec2<S>> vertices) {
  Polygon<S> p;
  p.vertices = std::move(vertices);
  p.closed = true;
  p.monodromy = Mat2<S>::identity();
  return p;
}

template <class S>
Polygon<S> make_twisted(std::vector<Vec2<S>> vertices, Mat2<S> monodromy) {
  Polygon<S> p;
  p.vertices = std::move(vertices);
  p.monodromy = std::move(monodromy);
  p.closed = near_identity(p.monodromy, kClosureTol);
  return p;
}

// Central reflection; same moduli coordinates, the other branch of the 2-2 dynamics.
template <class S>
Polygon<S> negate(const Polygon<S>& p) {
  Polygon<S> q = p;
  for (auto& v : q.vertices) v = -v;
  return q;
}

// Moduli coordinates on twisted polygons:
//   s[i] = [P_i, P_{i+1}]   (side areas)
//   v[i] = [P_{i-1}, P_{i+1}]  (short-diagonal areas)
template <class S>
struct SVCoords {
  std::vector<S> s;
  std::vector<S> v;

  int n() const { return static_cast<int>(s.size()); }
  const S& s_at(long i) const { return s[static_cast<size_t>(((i % n()) + n()) % n())]; }
  const S& v_at(long i) const { return v[static_cast<size_t>(((i % n()) + n()) % n())]; }
};

template <class S>
void validate_polygon(const Polygon<S>& p) {
  if (p.n() < 3) fail("core_polygon/DegeneratePolygon", "polygon needs n >= 3 vertices");
  if (!near(p.monodromy.det(), S(1), kClosureTol))
    fail("core_polygon/DegeneratePolygon", "monodromy determinant != 1");
  for (long i = 0; i < p.n(); ++i) {
    if (near_zero(bracket(p.vertex(i), p.vertex(i + 1)), 0.0))
      fail("core_polygon/DegeneratePolygon",
           "zero side bracket at index " + std::to_string(i));
    if (near_zero(bracket(p.vertex(i - 1), p.vertex(i + 1)), 0.0))
      fail("core_polygon/DegeneratePolygon",
           "zero short-diagonal bracket at index " + std::to_string(i));
  }
}

template <class S>
SVCoords<S> sv_coords(const Polygon<S>& p) {
  const int n = p.n();
  if (n < 3) fail("core_polygon/DegeneratePolygon", "polygon needs n >= 3 vertices");
  SVCoords<S> sv;
  sv.s.reserve(n);
  sv.v.reserve(n);
  for (long i = 0; i < n; ++i) {
    sv.s.push_back(bracket(p.vertex(i), p.vertex(i + 1)));
    sv.v.push_back(bracket(p.vertex(i - 1), p.vertex(i + 1)));
  }
  for (int i = 0; i < n; ++i) {
    if (near_zero(sv.s[i], 0.0))
      fail("core_polygon/DegeneratePolygon", "zero side bracket s[" + std::to_string(i) + "]");
    if (near_zero(sv.v[i], 0.0))
      fail("core_polygon/DegeneratePolygon",
           "zero short-diagonal bracket v[" + std::to_string(i) + "]");
  }
  return sv;
}

template <class S>
void validate_sv(const SVCoords<S>& sv) {
  if (sv.n() < 3 || sv.v.size() != sv.s.size())
    fail("core_polygon/DegeneratePolygon", "sv coordinate arrays must have equal length >= 3");
  for (int i = 0; i < sv.n(); ++i)
    if (near_zero(sv.s[i], 0.0) || near_zero(sv.v[i], 0.0))
      fail("core_polygon/DegeneratePolygon", "zero entry in sv coordinates");
}

/** Tridiagonal continuant D_{i,j+1} over any commutative ring R (constructible
 *  from int). Diagonal a_i..a_j, subdiagonal b_{i+1}..b_j, superdiagonal 1.
 *  Three-term recursion D_{i,k+1} = a_k D_{i,k} - b_k D_{i,k-1} with boundary
 *  D_{i,i} = 1, D_{i,i-1} = 0. Indices taken cyclically mod the array length,
 *  so (i, j) may walk the doubled sequence of a twisted polygon. */
template <class R>
R continuant(const std::vector<R>& a, const std::vector<R>& b, long i, long j) {
  if (i > j + 1) fail("core_polygon/IndexOrder", "continuant needs i <= j+1");
  const long n = static_cast<long>(a.size());
  R prev(0);  // D_{i,i-1}
  R cur(1);   // D_{i,i}
  for (long k = i; k <= j; ++k) {
    const size_t km = static_cast<size_t>(((k % n) + n) % n);
    R next = a[km] * cur - b[km] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {
// Vertex recursion coefficients: P_{j+1} = a_j P_j - b_j P_{j-1}.
template <class S>
void recursion_coeffs(const SVCoords<S>& sv, std::vector<S>& a, std::vector<S>& b) {
  const int n = sv.n();
  a.clear(); b.clear();
  a.reserve(n); b.reserve(n);
  for (long i = 0; i < n; ++i) {
    a.push_back(sv.v_at(i) / sv.s_at(i - 1));
    b.push_back(sv.s_at(i) / sv.s_at(i - 1));
  }
}
}  // namespace detail

// Canonical monodromy representative: the ordered product of the n recursion
// matrices [[0,1],[-s[i]/s[i-1], v[i]/s[i-1]]], step i = 0..n-1, later steps on
// the left. Only conjugation-invariant quantities of it are geometric.
template <class S>
Mat2<S> monodromy(const SVCoords<S>& sv) {
  validate_sv(sv);
  std::vector<S> a, b;
  detail::recursion_coeffs(sv, a, b);
  Mat2<S> m = Mat2<S>::identity();
  for (int i = 0; i < sv.n(); ++i)
    m = Mat2<S>{S(0), S(1), -b[i], a[i]} * m;
  return m;
}

// Same matrix assembled from four continuants; equals monodromy(sv) exactly.
template <class S>
Mat2<S> monodromy_via_continuants(const SVCoords<S>& sv) {
  validate_sv(sv);
  const long n = sv.n();
  std::vector<S> a, b;
  detail::recursion_coeffs(sv, a, b);
  return {-b[0] * continuant(a, b, 1, n - 2), continuant(a, b, 0, n - 2),
          -b[0] * continuant(a, b, 1, n - 1), continuant(a, b, 0, n - 1)};
}

/** The n cyclic closure continuants D_{i, n+i-1}, i = 0..n-1, computed on the
 *  doubled coefficient sequence. They all vanish exactly when the monodromy is
 *  +-Id (the two components of the vanishing locus); a closed polygon gives
 *  zero, and so does its centrally-symmetric double cover. Distinguish the two
 *  by the monodromy itself. */
template <class S>
std::vector<S> closure_defect(const SVCoords<S>& sv) {
  validate_sv(sv);
  const long n = sv.n();
  std::vector<S> a, b;
  detail::recursion_coeffs(sv, a, b);
  std::vector<S> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) out.push_back(continuant(a, b, i, n + i - 2));
  return out;
}

/** Quadratic closure relations among the moduli coordinates.
 *  n = 4: residuals of v[1]v[2] - (s[0]s[2] - s[1]s[3]), v[3] + v[1], v[0] + v[2].
 *  n = 5: the five cyclic residuals of v[i]v[i+1] + s[i]v[i+3] - s[i-1]s[i+1]. */
template <class S>
std::vector<S> ptolemy_defect(const SVCoords<S>& sv) {
  validate_sv(sv);
  const int n = sv.n();
  std::vector<S> out;
  if (n == 4) {
    out.push_back(sv.v[1] * sv.v[2] - (sv.s[0] * sv.s[2] - sv.s[1] * sv.s[3]));
    out.push_back(sv.v[3] + sv.v[1]);
    out.push_back(sv.v[0] + sv.v[2]);
  } else if (n == 5) {
    for (long i = 0; i < 5; ++i)
      out.push_back(sv.v_at(i) * sv.v_at(i + 1) + sv.s_at(i) * sv.v_at(i + 3) -
                    sv.s_at(i - 1) * sv.s_at(i + 1));
  } else {
    fail("core_polygon/WrongArity", "ptolemy_defect needs n in {4, 5}");
  }
  return out;
}

// Whether the side-area vector is a regular value of P -> (..., [P_i,P_{i+1}], ...):
// odd n needs all entries nonzero; even n additionally needs the two alternating
// products to differ in absolute value.
template <class S>
bool is_regular_value(const std::vector<S>& s) {
  const size_t n = s.size();
  for (const S& x : s)
    if (near_zero(x, 0.0)) return false;
  if (n % 2 == 1) return true;
  S even = S(1), odd = S(1);
  for (size_t i = 0; i < n; ++i) (i % 2 == 0 ? even : odd) *= s[i];
  return !(even == odd || even == -odd);
}

/** Rebuilds vertices from moduli coordinates and a frame (P_0, P_1) with
 *  [P_0, P_1] = s[0], via P_{i+1} = (v[i] P_i - s[i] P_{i-1}) / s[i-1].
 *  The result is twisted with the induced monodromy and is marked closed when
 *  that monodromy is the identity (exact for rationals, 1e-9 entrywise for
 *  floats). Inverse of sv_coords given the frame. */
template <class S>
Polygon<S> reconstruct(const SVCoords<S>& sv, const Vec2<S>& p0, const Vec2<S>& p1) {
  validate_sv(sv);
  const int n = sv.n();
  if (!near(bracket(p0, p1), sv.s[0], kClosureTol))
    fail("core_polygon/FrameMismatch", "[P_0, P_1] must equal s[0]");
  std::vector<Vec2<S>> pts;
  pts.reserve(n + 2);
  pts.push_back(p0);
  pts.push_back(p1);
  for (long i = 1; i <= n; ++i) {
    const S& sm = sv.s_at(i - 1);
    Vec2<S> next = (sv.v_at(i) * pts[i] - sv.s_at(i) * pts[i - 1]) / sm;
    pts.push_back(next);
  }
  // acting monodromy M with P_n = M P_0, P_{n+1} = M P_1
  Mat2<S> frame{p0.x, p1.x, p0.y, p1.y};
  Mat2<S> image{pts[n].x, pts[n + 1].x, pts[n].y, pts[n + 1].y};
  Mat2<S> mono = image * frame.inverse();
  pts.resize(n);
  Polygon<S> p;
  p.vertices = std::move(pts);
  if (near_identity(mono, kClosureTol)) {
    p.closed = true;
    p.monodromy = Mat2<S>::identity();
  } else {
    p.closed = false;
    p.monodromy = std::move(mono);
  }
  return p;
}

}  // namespace centroaffine
