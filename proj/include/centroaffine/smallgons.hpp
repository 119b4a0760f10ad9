#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "centroaffine/center.hpp"
#include "centroaffine/crelation.hpp"
#include "centroaffine/linalg.hpp"
#include "centroaffine/random.hpp"

namespace centroaffine {

enum class MotionType { Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(MotionType m) {
  switch (m) {
    case MotionType::Elliptic: return "Elliptic";
    case MotionType::Parabolic: return "Parabolic";
    default: return "Hyperbolic";
  }
}

template <class S>
struct TriangleReport {
  S lhs{}, rhs{};          // c^2 * quadruple product  vs  4 (s0 s1 s2)^2
  bool exists = false;     // lhs <= rhs
  MotionType motion = MotionType::Hyperbolic;
};

template <class S>
S triangle_quadruple_product(const std::array<S, 3>& s) {
  return (s[0] + s[1] + s[2]) * (s[0] + s[1] - s[2]) * (s[1] + s[2] - s[0]) *
         (s[2] + s[0] - s[1]);
}

/** Existence and type of the correspondence on triangles with side areas s:
 *  a partner exists iff c^2 * (quadruple product) <= 4 (s0 s1 s2)^2, and the
 *  relating map is elliptic/parabolic/hyperbolic as the quadruple product is
 *  positive/zero/negative (the parabolic case: the origin on a middle line). */
template <class S>
TriangleReport<S> triangle_analysis(const std::array<S, 3>& s, const S& c) {
  for (const S& x : s)
    if (near_zero(x, 0.0)) fail("smallgons/DegenerateTriangle", "zero side area");
  if (near_zero(c, 0.0)) fail("lax_crelation/ZeroC", "c must be nonzero");
  TriangleReport<S> rep;
  const S quad = triangle_quadruple_product(s);
  const S prod = s[0] * s[1] * s[2];
  rep.lhs = c * c * quad;
  rep.rhs = S(4) * prod * prod;
  rep.exists = !(rep.rhs < rep.lhs);
  double scale = 1;
  for (const S& x : s) scale *= scalar_traits<S>::magnitude(x) + 1.0;
  if (near_zero(quad, 1e-12 * scale * scale * scale * scale))
    rep.motion = MotionType::Parabolic;
  else
    rep.motion = quad > S(0) ? MotionType::Elliptic : MotionType::Hyperbolic;
  return rep;
}

// A concrete closed triangle with the given side areas, in the standard frame.
template <class S>
Polygon<S> triangle_with_sides(const std::array<S, 3>& s) {
  return make_closed<S>({{S(1), S(0)}, {S(0), s[0]}, {-s[1] / s[0], -s[2]}});
}

template <class S>
struct TriangleIdentity {
  S residual{};          // (m-l)^2 + 4kn + c^2 quad / (s0 s1 s2)^2; identically zero
  S trace_sq_minus_4{};  // (m+l)^2 - 4 of the relating map; negative iff elliptic
};

/** The algebraic identity behind the triangle existence bound: solve the 3x3
 *  system (x_i y_i, -x_i^2, y_i^2) (m-l, k, n)^T = (c, c, c)^T for the data of
 *  the SL(2) map relating the triangle to a partner, and return the residual of
 *    (m-l)^2 + 4kn = -c^2 quad / (s0 s1 s2)^2,
 *  which vanishes exactly over rationals (randomized polynomial identity
 *  testing in place of a symbolic proof). */
template <class S>
TriangleIdentity<S> triangle_identity_check(const Polygon<S>& tri, const S& c) {
  if (tri.n() != 3) fail("smallgons/WrongArity", "triangle_identity_check needs n = 3");
  std::vector<std::vector<S>> m(3, std::vector<S>(3));
  std::vector<S> rhs(3, c);
  for (int i = 0; i < 3; ++i) {
    const Vec2<S>& p = tri.vertices[i];
    m[i] = {p.x * p.y, -p.x * p.x, p.y * p.y};
  }
  std::vector<S> sol;
  if (!solve_linear(m, rhs, sol))
    fail("smallgons/SingularSystem", "degenerate triangle frame");
  const S ml = sol[0], k = sol[1], n = sol[2];
  std::array<S, 3> s;
  for (long i = 0; i < 3; ++i) s[i] = bracket(tri.vertex(i), tri.vertex(i + 1));
  const S prod = s[0] * s[1] * s[2];
  TriangleIdentity<S> out;
  out.residual = ml * ml + S(4) * k * n +
                 c * c * triangle_quadruple_product(s) / (prod * prod);
  out.trace_sq_minus_4 = ml * ml + S(4) * k * n;  // (m+l)^2 - 4 = (m-l)^2 + 4kn
  return out;
}

template <class S>
struct QuadQuadratic {
  S u{}, v{};  // the partner parameter satisfies b^2 + u b + v = 0
  S disc{};    // u^2 - 4v; nonnegative iff a real partner exists
};

/** Coefficients of the quadratic equation for the partner seed of a closed
 *  quadrilateral, in the normalized frame determined by its moduli; the
 *  discriminant has the sign of the symmetric existence expression
 *    c^2 (s0+s1-s2-s3)(s0-s1+s2-s3)(s0-s1-s2+s3)(s0+s1+s2+s3)
 *      - 4 (s1 s2 - s0 s3)(s1 s3 - s0 s2)(s0 s1 - s2 s3). */
template <class S>
QuadQuadratic<S> quad_partner_quadratic(const Polygon<S>& p, const S& c) {
  if (p.n() != 4 || !p.closed)
    fail("smallgons/WrongArity", "quad_partner_quadratic needs a closed quadrilateral");
  const SVCoords<S> sv = sv_coords(p);
  const S s1 = sv.s[0], s3 = sv.s[1], s5 = sv.s[2], s7 = sv.s[3];
  const S v2 = sv.v[1];
  if (near_zero(v2, 0.0)) fail("smallgons/DegenerateQuad", "vanishing diagonal area");
  const S den = s5 * s7 - s1 * s3;
  if (near_zero(den, 1e-13))
    fail("smallgons/DegenerateQuad", "s2 s3 = s0 s1: normalization frame degenerates");
  QuadQuadratic<S> out;
  out.u = c / v2 *
          ((s1 * s1 - s3 * s3 - s5 * s5 - s7 * s7) / den + S(2) * s3 * s5 * s7 / (s1 * den));
  out.v = (c * c - s1 * s1) * (s3 * s5 - s1 * s7) * (s3 * s7 - s1 * s5) /
          (v2 * v2 * s1 * s1 * den);
  out.disc = out.u * out.u - S(4) * out.v;
  return out;
}

// symmetric existence expression whose sign matches the discriminant
template <class S>
S quad_existence_expression(const std::array<S, 4>& s, const S& c) {
  return c * c * (s[0] + s[1] - s[2] - s[3]) * (s[0] - s[1] + s[2] - s[3]) *
             (s[0] - s[1] - s[2] + s[3]) * (s[0] + s[1] + s[2] + s[3]) -
         S(4) * (s[1] * s[2] - s[0] * s[3]) * (s[1] * s[3] - s[0] * s[2]) *
             (s[0] * s[1] - s[2] * s[3]);
}

enum class ConicKind { Ellipse, Hyperbola, Degenerate };

inline const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Ellipse: return "Ellipse";
    case ConicKind::Hyperbola: return "Hyperbola";
    default: return "Degenerate";
  }
}

template <class S>
struct QuadConics {
  QuadraticForm<S> first;   // through P_0, P_2 and Q_1, Q_3
  QuadraticForm<S> second;  // through P_1, P_3 and Q_0, Q_2
  ConicKind kind = ConicKind::Degenerate;
  S pencil_det{};  // n^2 - mk of the fitted representative
};

/** Representative of the symmetric conic pencil [[m, n], [n, k]] whose level
 *  curves through alternating vertices carry a quadrilateral and its partners.
 *  On closed quadrilaterals this representative satisfies, exactly,
 *    n^2 - mk = 1/4 (s0+s1+s2+s3)(s0-s1+s2-s3)(s0+s3-s1-s2)(s0+s1-s2-s3). */
template <class S>
std::array<S, 3> quad_conic_pencil(const Polygon<S>& p) {
  if (p.n() != 4) fail("smallgons/WrongArity", "conic pencil needs n = 4");
  const auto& pv = p.vertices;
  S m(0), k(0);
  for (long i = 0; i < 4; ++i) {
    const S s = bracket(p.vertex(i), p.vertex(i + 1));
    m += pv[i].y * pv[(i + 1) % 4].y * s;
    k += pv[i].x * pv[(i + 1) % 4].x * s;
  }
  const S nn = (S(-1) / S(2)) * ((pv[0].x * pv[0].x - pv[2].x * pv[2].x) *
                                     (pv[1].y * pv[1].y - pv[3].y * pv[3].y) -
                                 (pv[1].x * pv[1].x - pv[3].x * pv[3].x) *
                                     (pv[0].y * pv[0].y - pv[2].y * pv[2].y));
  return {m, nn, k};
}

// The pair of homothetic central conics carrying the alternating vertices of a
// quadrilateral and any of its partners.
template <class S>
QuadConics<S> quad_conics(const Polygon<S>& p, const Polygon<S>& q, double tol = 1e-7) {
  if (p.n() != 4 || q.n() != 4) fail("smallgons/WrongArity", "quad_conics needs n = 4");
  // verify the pair is related: equal sides and constant cross bracket
  const S c = bracket(p.vertex(0), q.vertex(0));
  for (long i = 0; i < 4; ++i) {
    if (!near(bracket(p.vertex(i), q.vertex(i)), c, tol) ||
        !near(bracket(p.vertex(i), p.vertex(i + 1)), bracket(q.vertex(i), q.vertex(i + 1)),
              tol))
      fail("lax_crelation/NotRelated", "quad_conics needs a related pair");
  }
  const auto [m, nn, k] = quad_conic_pencil(p);
  const auto& pv = p.vertices;
  const double scale = scalar_traits<S>::magnitude(m) + scalar_traits<S>::magnitude(nn) +
                       scalar_traits<S>::magnitude(k);
  if (scale <= 1e-12) fail("smallgons/FitSingular", "conic pencil fit degenerated");
  auto level = [&](const Vec2<S>& w) { return m * w.x * w.x + S(2) * nn * w.x * w.y + k * w.y * w.y; };
  const S c1 = level(pv[0]);
  const S c2 = level(pv[1]);
  if (near_zero(c1, 1e-12 * scale) || near_zero(c2, 1e-12 * scale))
    fail("smallgons/FitSingular", "a vertex sits on the degenerate level through the origin");
  QuadConics<S> out;
  out.first = {m / c1, S(-2) * nn / c1, k / c1};
  out.second = {m / c2, S(-2) * nn / c2, k / c2};
  out.pencil_det = nn * nn - m * k;
  const S det = m * k - nn * nn;
  if (near_zero(det, 1e-12 * scale * scale))
    out.kind = ConicKind::Degenerate;
  else
    out.kind = det > S(0) ? ConicKind::Ellipse : ConicKind::Hyperbola;
  return out;
}

// Moduli chart for closed pentagons: break the cyclic symmetry by x = v[1],
// y = v[4]; the remaining diagonal areas follow from the closure relations.
template <class S>
struct PentagonChart {
  std::array<S, 5> s{};
  S x{}, y{};
};

template <class S>
SVCoords<S> pentagon_chart(const PentagonChart<S>& ch) {
  const auto& s = ch.s;
  const S &x = ch.x, &y = ch.y;
  if (near_zero(x, 0.0) || near_zero(y, 0.0))
    fail("smallgons/ChartSingular", "chart needs x, y != 0");
  SVCoords<S> sv;
  sv.s.assign(s.begin(), s.end());
  sv.v.resize(5);
  sv.v[1] = x;
  sv.v[4] = y;
  sv.v[2] = (s[0] * s[2] - s[1] * y) / x;
  sv.v[3] = (s[2] * s[4] - s[3] * x) / y;
  sv.v[0] = (s[0] * s[3] * x + s[1] * s[4] * y - s[0] * s[2] * s[4]) / (x * y);
  for (const S& v : sv.v)
    if (near_zero(v, 0.0)) fail("smallgons/ChartSingular", "derived diagonal area vanishes");
  return sv;
}

template <class S>
PentagonChart<S> chart_of(const SVCoords<S>& sv) {
  if (sv.n() != 5) fail("smallgons/WrongArity", "pentagon chart needs n = 5");
  PentagonChart<S> ch;
  for (int i = 0; i < 5; ++i) ch.s[i] = sv.s[i];
  ch.x = sv.v[1];
  ch.y = sv.v[4];
  return ch;
}

/** The single surviving integral on the closed-pentagon moduli space, in chart
 *  coordinates:
 *    K = x/(s0 s1) + y/(s3 s4) + (s0^2+s1^2)/(s0 s1 x) + (s3^2+s4^2)/(s3 s4 y)
 *        - x/(s2 y) - y/(s2 x) - s2/(x y). */
template <class S>
S pentagon_K(const PentagonChart<S>& ch) {
  const auto& s = ch.s;
  const S &x = ch.x, &y = ch.y;
  return x / (s[0] * s[1]) + y / (s[3] * s[4]) + (s[0] * s[0] + s[1] * s[1]) / (s[0] * s[1] * x) +
         (s[3] * s[3] + s[4] * s[4]) / (s[3] * s[4] * y) - x / (s[2] * y) - y / (s[2] * x) -
         s[2] / (x * y);
}

template <class S>
std::pair<S, S> pentagon_K_gradient(const PentagonChart<S>& ch) {
  const auto& s = ch.s;
  const S &x = ch.x, &y = ch.y;
  const S A = (s[0] * s[0] + s[1] * s[1]) / (s[0] * s[1]);
  const S B = (s[3] * s[3] + s[4] * s[4]) / (s[3] * s[4]);
  S kx = S(1) / (s[0] * s[1]) - A / (x * x) - S(1) / (s[2] * y) + y / (s[2] * x * x) +
         s[2] / (x * x * y);
  S ky = S(1) / (s[3] * s[4]) - B / (y * y) + x / (s[2] * y * y) - S(1) / (s[2] * x) +
         s[2] / (x * y * y);
  return {kx, ky};
}

/** Restriction of the infinitesimal field to the chart:
 *    xdot = x (g2 - g3 + g4 - g0) + s1/s0 - s0/s1,
 *    ydot = y (g0 - g1 + g2 - g3) + s4/s3 - s3/s4,
 *  with g_i = v[i]/(s[i-1] s[i]). Hamiltonian for K with respect to the area
 *  form dx^dy/(xy): xdot = xy dK/dy, ydot = -xy dK/dx. */
template <class S>
std::pair<S, S> pentagon_xy_dot(const PentagonChart<S>& ch) {
  const SVCoords<S> sv = pentagon_chart(ch);
  const std::vector<S> g = g_ratios(sv);
  const auto& s = ch.s;
  S xdot = ch.x * (g[2] - g[3] + g[4] - g[0]) + s[1] / s[0] - s[0] / s[1];
  S ydot = ch.y * (g[0] - g[1] + g[2] - g[3]) + s[4] / s[3] - s[3] / s[4];
  return {xdot, ydot};
}

struct PentagonFlowCheck {
  double tangency_residual = 0;    // xdot K_x + ydot K_y with analytic gradient
  double hamiltonian_residual = 0; // worst of |xdot - xy K_y|, |ydot + xy K_x|, K by FD
};

inline PentagonFlowCheck pentagon_flow_check(const PentagonChart<double>& ch) {
  PentagonFlowCheck out;
  auto [xdot, ydot] = pentagon_xy_dot(ch);
  auto [kx, ky] = pentagon_K_gradient(ch);
  out.tangency_residual = std::abs(xdot * kx + ydot * ky);
  const double h = 1e-6;
  auto K_at = [&](double dx, double dy) {
    PentagonChart<double> c2 = ch;
    c2.x += dx;
    c2.y += dy;
    return pentagon_K(c2);
  };
  const double kx_fd = (K_at(h, 0) - K_at(-h, 0)) / (2 * h);
  const double ky_fd = (K_at(0, h) - K_at(0, -h)) / (2 * h);
  out.hamiltonian_residual = std::max(std::abs(xdot - ch.x * ch.y * ky_fd),
                                      std::abs(ydot + ch.x * ch.y * kx_fd));
  return out;
}

template <class S>
struct PentagonDiscriminant {
  S dd{};                       // prod (c^2 - s_i^2)
  std::optional<std::pair<S, S>> k_roots;  // present iff dd > 0, sorted
};

/** Where the correspondence fails on closed pentagons: with
 *  dd = prod_i (c^2 - s_i^2), no partner exists exactly for K strictly between
 *    K_pm = ((sum s_i^2) - 2c^2) c^2 / prod(s)  +-  2 sqrt(dd) / (c prod(s)),
 *  and a partner always exists when dd <= 0. */
inline PentagonDiscriminant<double> pentagon_discriminant(const std::array<double, 5>& s,
                                                          double c) {
  if (c == 0) fail("lax_crelation/ZeroC", "c must be nonzero");
  PentagonDiscriminant<double> out;
  double dd = 1, prod = 1, sumsq = 0;
  for (double si : s) {
    if (si == 0) fail("smallgons/DegeneratePentagon", "zero side area");
    dd *= c * c - si * si;
    prod *= si;
    sumsq += si * si;
  }
  out.dd = dd;
  if (dd > 0) {
    const double base = (sumsq - 2 * c * c) * c * c / prod;
    const double delta = 2 * std::sqrt(dd) / (c * prod);
    out.k_roots = std::minmax(base - delta, base + delta);
  }
  return out;
}

// A chart point with the requested K along the diagonal ray x = y = r of one
// sign (bracket scan plus bisection).
inline std::optional<PentagonChart<double>> pentagon_chart_with_K_on_branch(
    const std::array<double, 5>& s, double k_target, double sign) {
  auto k_of = [&](double r) {
    PentagonChart<double> ch{s, r, r};
    return pentagon_K(ch) - k_target;
  };
  const double lo = 1e-3, hi = 60.0;
  double prev_r = sign * lo, prev = k_of(prev_r);
  const int steps = 60000;
  for (int i = 1; i <= steps; ++i) {
    const double r = sign * (lo + (hi - lo) * i / steps);
    const double cur = k_of(r);
    if (std::isfinite(prev) && std::isfinite(cur) && prev * cur <= 0) {
      double a = prev_r, b = r;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (k_of(a) * k_of(mid) <= 0 ? b : a) = mid;
      }
      PentagonChart<double> ch{s, 0.5 * (a + b), 0.5 * (a + b)};
      return ch;
    }
    prev_r = r;
    prev = cur;
  }
  return std::nullopt;
}

// First chart point found on the level, trying both diagonal branches.
inline std::optional<PentagonChart<double>> pentagon_chart_with_K(
    const std::array<double, 5>& s, double k_target) {
  if (auto ch = pentagon_chart_with_K_on_branch(s, k_target, 1.0)) return ch;
  return pentagon_chart_with_K_on_branch(s, k_target, -1.0);
}

/** Walk a K-level curve from a seed point: Euler predictor along the
 *  Hamiltonian chart field, Newton corrector back onto the level set. Stops
 *  early when the walk closes up. Every returned point satisfies
 *  |K - level| <= 1e-10 (up to gradient degeneracy). */
inline std::vector<PentagonChart<double>> pentagon_level_walk(
    const PentagonChart<double>& seed, int max_steps, double step = 1e-2) {
  std::vector<PentagonChart<double>> out;
  const double level = pentagon_K(seed);
  PentagonChart<double> cur = seed;
  for (int i = 0; i < max_steps; ++i) {
    out.push_back(cur);
    auto [xd, yd] = pentagon_xy_dot(cur);
    const double norm = std::hypot(xd, yd);
    if (norm < 1e-12) break;
    cur.x += step * xd / norm;
    cur.y += step * yd / norm;
    for (int it = 0; it < 5; ++it) {  // project back onto the level set
      const double defect = pentagon_K(cur) - level;
      auto [kx, ky] = pentagon_K_gradient(cur);
      const double g2 = kx * kx + ky * ky;
      if (g2 < 1e-18 || std::abs(defect) < 1e-12) break;
      cur.x -= defect * kx / g2;
      cur.y -= defect * ky / g2;
    }
    if (!std::isfinite(cur.x) || !std::isfinite(cur.y) || std::abs(cur.x) > 1e3 ||
        std::abs(cur.y) > 1e3)
      break;
    // open branches end at chart singularities where the projection loses the
    // curve; stop rather than emit off-level points
    if (std::abs(pentagon_K(cur) - level) > 1e-8 * (1 + std::abs(level))) break;
    if (i > 10 && std::hypot(cur.x - seed.x, cur.y - seed.y) < step) {
      out.push_back(cur);  // closed curve
      break;
    }
  }
  return out;
}

// Closed pentagon sampled from the bounded-orbit region of the chart (the nest
// of compact level curves around the symmetric point); the fixed-step flow
// stays regular there for desk-scale horizons.
inline SVCoords<double> random_stable_pentagon(Rng& rng) {
  PentagonChart<double> ch;
  for (auto& si : ch.s) si = rng.uniform(0.8, 1.25);
  ch.x = -rng.uniform(0.7, 1.4);
  ch.y = -rng.uniform(0.7, 1.4);
  return pentagon_chart(ch);
}

inline Polygon<double> pentagon_polygon(const SVCoords<double>& sv) {
  Polygon<double> p = reconstruct(sv, Vec2<double>{1.0, 0.0}, Vec2<double>{0.0, sv.s[0]});
  p.closed = true;
  p.monodromy = Mat2<double>::identity();
  return p;
}

}  // namespace centroaffine
