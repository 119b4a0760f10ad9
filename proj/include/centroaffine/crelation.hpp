#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "centroaffine/integrals.hpp"
#include "centroaffine/polygon.hpp"

namespace centroaffine {

// Fractional-linear map t -> (a t + b)/(c t + d); composition = matrix product.
template <class S>
struct MoebiusMap {
  Mat2<S> m;

  S det() const { return m.det(); }
  S apply(const S& t) const {
    S den = m.c * t + m.d;
    if (near_zero(den, 0.0))
      fail("lax_crelation/CollinearPair", "Moebius image at infinity");
    return (m.a * t + m.b) / den;
  }
  MoebiusMap compose_after(const MoebiusMap& first) const { return {m * first.m}; }

  // proportional to the identity within a relative tolerance (exact for rationals)
  bool is_identity(double rel_tol = 1e-10) const {
    if constexpr (scalar_traits<S>::exact)
      return m.b == S(0) && m.c == S(0) && m.a == m.d && !(m.a == S(0));
    else {
      const double scale = mat_scale(m);
      return scale > 0 && std::abs(m.b) <= rel_tol * scale &&
             std::abs(m.c) <= rel_tol * scale && std::abs(m.a - m.d) <= rel_tol * scale;
    }
  }
};

/** Linear reflection swapping q and p:  x -> ([q,x] q + [x,p] p) / [q,p].
 *  Involutive, determinant -1. */
template <class S>
Vec2<S> reflect(const Vec2<S>& q, const Vec2<S>& p, const Vec2<S>& x) {
  const S d = bracket(q, p);
  if (near_zero(d, 0.0)) fail("lax_crelation/CollinearPair", "reflect needs [q,p] != 0");
  return (bracket(q, x) * q + bracket(x, p) * p) / d;
}

// same reflection as a matrix (columns are the images of the basis vectors)
template <class S>
Mat2<S> reflect_matrix(const Vec2<S>& q, const Vec2<S>& p) {
  const Vec2<S> e1 = reflect(q, p, Vec2<S>{S(1), S(0)});
  const Vec2<S> e2 = reflect(q, p, Vec2<S>{S(0), S(1)});
  return {e1.x, e2.x, e1.y, e2.y};
}

/** One step of the correspondence: given q_i with [p_i, q_i] = c, produce
 *  q_next with [p_next, q_next] = c and [q_i, q_next] = [p_i, p_next]:
 *    q_next = (-c q_i + [p_i, p_next] p_next) / [q_i, p_next].
 *  Both postconditions are algebraic identities of the formula. */
template <class S>
Vec2<S> c_step(const Vec2<S>& q_i, const Vec2<S>& p_i, const Vec2<S>& p_next, const S& c) {
  const S den = bracket(q_i, p_next);
  if (near_zero(den, 0.0)) fail("lax_crelation/CollinearPair", "c_step: q_i parallel to p_next");
  return (-c * q_i + bracket(p_i, p_next) * p_next) / den;
}

// Test-vector line at vertex i: { c P_{i+1}/s[i] + t P_i : t real }, all points
// with [P_i, .] = c.
template <class S>
Vec2<S> line_point(const Polygon<S>& p, long i, const S& c, const S& t) {
  const S si = bracket(p.vertex(i), p.vertex(i + 1));
  return c / si * p.vertex(i + 1) + t * p.vertex(i);
}

/** Step matrix of the correspondence in the line parameters: the map from the
 *  t-line at vertex i to the t-line at vertex i+1 is
 *    [[ -c v[i+1]/(s[i] s[i+1]),  1 - c^2/s[i]^2 ], [1, 0]],
 *  of determinant c^2/s[i]^2 - 1. */
template <class S>
MoebiusMap<S> step_matrix(const SVCoords<S>& sv, long i, const S& c) {
  validate_sv(sv);
  const S& si = sv.s_at(i);
  const S& sj = sv.s_at(i + 1);
  const S& vj = sv.v_at(i + 1);
  return {Mat2<S>{-c * vj / (si * sj), S(1) - c * c / (si * si), S(1), S(0)}};
}

// Full Lax map at spectral value lambda: ordered product of the n step
// matrices, later steps on the left. det = prod (lambda^2/s[i]^2 - 1).
template <class S>
MoebiusMap<S> lax_matrix(const SVCoords<S>& sv, const S& lambda) {
  validate_sv(sv);
  Mat2<S> m = Mat2<S>::identity();
  for (long i = 0; i < sv.n(); ++i) m = step_matrix(sv, i, lambda).m * m;
  return {m};
}

// Alternating closure sum for even n; the reflection chain around the polygon
// composes to the identity precisely when this vanishes.
template <class S>
S even_closure_condition(const SVCoords<S>& sv) {
  validate_sv(sv);
  if (sv.n() % 2 != 0)
    fail("lax_crelation/WrongArity", "even_closure_condition needs even n");
  S acc(0);
  for (long i = 0; i < sv.n(); ++i) {
    S term = sv.v_at(i) / (sv.s_at(i - 1) * sv.s_at(i));
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

enum class ButterflyClass { Butterfly, AntiButterfly, OppositeSymmetric, Generic };

inline const char* to_string(ButterflyClass b) {
  switch (b) {
    case ButterflyClass::Butterfly: return "Butterfly";
    case ButterflyClass::AntiButterfly: return "AntiButterfly";
    case ButterflyClass::OppositeSymmetric: return "OppositeSymmetric";
    default: return "Generic";
  }
}

/** Classification of quadrilaterals with trivial Lax map, tested in the order
 *  (P1, P2, Q2, Q1): butterfly means [P1,P2] = [Q1,Q2] and [P1,Q1] = [P2,Q2];
 *  anti-butterfly is a butterfly after negating one vertex; opposite-symmetric
 *  means an opposite vertex pair sums to zero. */
template <class S>
ButterflyClass classify_butterfly(const Vec2<S>& p1, const Vec2<S>& p2, const Vec2<S>& q2,
                                  const Vec2<S>& q1, double tol = 1e-9) {
  auto is_bfly = [&](const Vec2<S>& a1, const Vec2<S>& a2, const Vec2<S>& b2,
                     const Vec2<S>& b1) {
    return near(bracket(a1, a2), bracket(b1, b2), tol) &&
           near(bracket(a1, b1), bracket(a2, b2), tol);
  };
  if (is_bfly(p1, p2, q2, q1)) return ButterflyClass::Butterfly;
  if (is_bfly(-p1, p2, q2, q1) || is_bfly(p1, -p2, q2, q1) || is_bfly(p1, p2, -q2, q1) ||
      is_bfly(p1, p2, q2, -q1))
    return ButterflyClass::AntiButterfly;
  auto zero_sum = [&](const Vec2<S>& a, const Vec2<S>& b) {
    return near_zero(a.x + b.x, tol) && near_zero(a.y + b.y, tol);
  };
  if (zero_sum(p1, q2) || zero_sum(p2, q1)) return ButterflyClass::OppositeSymmetric;
  return ButterflyClass::Generic;
}

// A solved pair P ~c Q together with the fixed-point parameter that produced Q.
struct CRelatedPair {
  Polygon<double> p;
  Polygon<double> q;
  double c = 0;
  double t_root = 0;
};

struct SolveResult {
  std::vector<CRelatedPair> pairs;  // sorted by t_root
  bool all_related = false;         // trivial Lax map: a one-parameter family
};

namespace detail {

// Propagate the partner around the polygon from its seed on the t-line at
// vertex 0. Singular steps (q parallel to the next vertex, which happens at
// spectral values c = +-s[i]) fall back to the defining bracket conditions.
inline std::optional<std::vector<Vec2<double>>> propagate_partner(
    const Polygon<double>& p, double c, double t) {
  const int n = p.n();
  std::vector<Vec2<double>> q;
  q.reserve(n);
  q.push_back(line_point(p, 0, c, t));
  for (long i = 0; i + 1 < n; ++i) {
    const Vec2<double> pi = p.vertex(i), pj = p.vertex(i + 1);
    const double scale =
        std::max({1.0, std::abs(q[i].x), std::abs(q[i].y), std::abs(pj.x), std::abs(pj.y)});
    if (std::abs(bracket(q[i], pj)) > 1e-12 * scale) {
      q.push_back(c_step(q[i], pi, pj, c));
      continue;
    }
    // singular step: solve [pj, Q] = c, [q_i, Q] = s_i directly
    const double det = bracket(pj, q[i]);
    const double si = bracket(pi, pj);
    if (std::abs(det) > 1e-12 * scale) {
      // rows (-pj.y, pj.x; -qi.y, qi.x), rhs (c, s_i)
      q.push_back({(pj.x * si - q[i].x * c) / det, (pj.y * si - q[i].y * c) / det});
      continue;
    }
    // doubly singular: the continuation is a one-parameter family; take the
    // shifted representative Q = (c/s[i+1]) P_{i+2} (t = 0 on the next line),
    // and let the final verification keep or drop the candidate
    const double sj = bracket(pj, p.vertex(i + 2));
    q.push_back(c / sj * p.vertex(i + 2));
  }
  return q;
}

inline bool verify_pair(const Polygon<double>& p, const Polygon<double>& q, double c,
                        double tol) {
  const int n = p.n();
  for (long i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::abs(c));
    if (std::abs(bracket(p.vertex(i), q.vertex(i)) - c) > tol * scale) return false;
    const double sp = bracket(p.vertex(i), p.vertex(i + 1));
    const double sq = bracket(q.vertex(i), q.vertex(i + 1));
    if (std::abs(sp - sq) > tol * std::max(1.0, std::abs(sp))) return false;
  }
  return true;
}

// Return-map defect of the seed parameter: propagate once around and compare
// the parameter of Q_n on the starting line with t itself.
inline std::optional<double> return_defect(const Polygon<double>& p, double c, double t) {
  auto q = propagate_partner(p, c, t);
  if (!q) return std::nullopt;
  const Vec2<double> qn = p.monodromy.inverse().apply(
      [&] {
        // [Q_{n-1}, Q_n] must equal s_{n-1}; compute Q_n by one more step
        const long i = p.n() - 1;
        const Vec2<double> pi = p.vertex(i), pj = p.vertex(i + 1);
        const double scale = std::max(
            {1.0, std::abs((*q)[i].x), std::abs((*q)[i].y), std::abs(pj.x), std::abs(pj.y)});
        if (std::abs(bracket((*q)[i], pj)) > 1e-12 * scale)
          return c_step((*q)[i], pi, pj, c);
        const double det = bracket(pj, (*q)[i]);
        const double si = bracket(pi, pj);
        if (std::abs(det) > 1e-12 * scale)
          return Vec2<double>{(pj.x * si - (*q)[i].x * c) / det,
                              (pj.y * si - (*q)[i].y * c) / det};
        return Vec2<double>{c / bracket(pj, p.vertex(i + 2)) * p.vertex(i + 2).x,
                            c / bracket(pj, p.vertex(i + 2)) * p.vertex(i + 2).y};
      }());
  const double s0 = bracket(p.vertex(0), p.vertex(1));
  return bracket(qn, p.vertex(1)) / s0 - t;
}

// Secant refinement of a fixed-point parameter against the full nonlinear
// return map; cleans up the rounding of the matrix-product route.
inline double polish_root(const Polygon<double>& p, double c, double t) {
  const double h0 = 1e-7 * (1.0 + std::abs(t));
  double a = t, b = t + h0;
  auto fa_opt = return_defect(p, c, a);
  auto fb_opt = return_defect(p, c, b);
  if (!fa_opt || !fb_opt) return t;
  double fa = *fa_opt, fb = *fb_opt;
  for (int it = 0; it < 8; ++it) {
    if (fb == fa) break;
    const double next = b - fb * (b - a) / (fb - fa);
    if (!std::isfinite(next)) break;
    auto fn = return_defect(p, c, next);
    if (!fn) break;
    a = b;
    fa = fb;
    b = next;
    fb = *fn;
    if (std::abs(fb) < 1e-15 * (1.0 + std::abs(b))) break;
  }
  const double best = std::abs(fb) <= std::abs(fa) ? b : a;
  // the seed from the quadratic is already near-exact; a large move means the
  // secant jumped toward the other fixed point
  if (std::abs(best - t) > 1e-3 * (1.0 + std::abs(t))) return t;
  return best;
}

}  // namespace detail

/** All polygons c-related to p: fixed points of the Lax map at spectral value
 *  c, embedded on the test line at vertex 0 and propagated around. Returns 0,
 *  1 (tangency) or 2 partners sorted by the fixed-point parameter, each
 *  verified against the defining brackets; a trivial Lax map is reported as
 *  the one-parameter family flag instead. */
inline SolveResult solve_c_related(const Polygon<double>& p, double c,
                                   double verify_tol = 1e-8) {
  if (c == 0) fail("lax_crelation/ZeroC", "the correspondence needs c != 0");
  validate_polygon(p);
  SolveResult out;
  const SVCoords<double> sv = sv_coords(p);
  const MoebiusMap<double> lax = lax_matrix(sv, c);
  if (lax.is_identity()) {
    out.all_related = true;
    return out;
  }
  const double al = lax.m.a, be = lax.m.b, ga = lax.m.c, de = lax.m.d;
  const double scale = mat_scale(lax.m);
  std::vector<double> roots;
  if (std::abs(ga) <= 1e-13 * scale) {
    if (std::abs(de - al) > 1e-13 * scale) roots.push_back(be / (de - al));
  } else {
    const double disc = (de - al) * (de - al) + 4.0 * ga * be;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      roots.push_back((-(de - al) + sq) / (2 * ga));
      roots.push_back((-(de - al) - sq) / (2 * ga));
      std::sort(roots.begin(), roots.end());
      if (roots[1] - roots[0] <= 1e-12 * (1.0 + std::abs(roots[0])))
        roots.pop_back();  // tangency: a double fixed point
    }
  }
  for (double t : roots) {
    t = detail::polish_root(p, c, t);
    if (!out.pairs.empty() &&
        std::abs(t - out.pairs.back().t_root) <= 1e-12 * (1.0 + std::abs(t)))
      continue;  // polishing merged the near-tangent roots
    auto verts = detail::propagate_partner(p, c, t);
    if (!verts) continue;
    Polygon<double> q;
    q.vertices = std::move(*verts);
    q.closed = p.closed;
    q.monodromy = p.monodromy;
    if (detail::verify_pair(p, q, c, verify_tol))
      out.pairs.push_back({p, std::move(q), c, t});
  }
  return out;
}

enum class SeedChoice { LargerT, SmallerT };

/** Branch-consistent iteration of the correspondence: of the two partners of
 *  the current polygon, discard the one equal to the central reflection of the
 *  previous polygon (vertexwise, 1e-7); the seed step takes the root chosen by
 *  `seed`. Returns the orbit including the starting polygon. */
inline std::vector<Polygon<double>> iterate_c_dynamics(const Polygon<double>& p, double c,
                                                       int steps,
                                                       SeedChoice seed = SeedChoice::LargerT) {
  auto vertex_dist = [](const Polygon<double>& a, const Polygon<double>& b) {
    double m = 0;
    for (int i = 0; i < a.n(); ++i) {
      m = std::max(m, std::abs(a.vertices[i].x - b.vertices[i].x));
      m = std::max(m, std::abs(a.vertices[i].y - b.vertices[i].y));
    }
    return m;
  };
  std::vector<Polygon<double>> orbit{p};
  for (int step = 0; step < steps; ++step) {
    const Polygon<double>& cur = orbit.back();
    SolveResult sol = solve_c_related(cur, c);
    if (sol.all_related)
      fail("lax_crelation/BranchLost", "trivial Lax map: no distinguished branch");
    if (sol.pairs.empty())
      fail("lax_crelation/NoRealPartner", "no real partner at step " + std::to_string(step));
    const Polygon<double>* next = nullptr;
    if (step == 0) {
      next = (seed == SeedChoice::LargerT) ? &sol.pairs.back().q : &sol.pairs.front().q;
    } else {
      const Polygon<double> banned = negate(orbit[orbit.size() - 2]);
      const double tol = 1e-7;
      std::vector<const Polygon<double>*> keep;
      bool all_banned = true;
      for (const auto& pr : sol.pairs) {
        if (vertex_dist(pr.q, banned) <= tol) continue;
        keep.push_back(&pr.q);
        all_banned = false;
      }
      if (all_banned)
        fail("lax_crelation/BranchLost", "both candidates retrace the previous polygon");
      // with two surviving candidates prefer the one farthest from the banned
      // branch (can only happen through numerical ties)
      next = keep.front();
      double best = vertex_dist(*keep.front(), banned);
      for (const auto* cand : keep) {
        const double dd = vertex_dist(*cand, banned);
        if (dd > best) { best = dd; next = cand; }
      }
    }
    orbit.push_back(*next);
  }
  return orbit;
}

/** Pair of c-related polygons built from the chain of side reflections of a
 *  closed polygon: odd n walks the chain twice around from `start`; even n
 *  requires the alternating closure condition to vanish and a second seed
 *  (defaults to start + A_0). The resulting pair satisfies the defining
 *  brackets exactly in exact arithmetic, with c = [P_0, Q_0]. */
template <class S>
std::pair<Polygon<S>, Polygon<S>> reflection_chain(
    const Polygon<S>& a, const Vec2<S>& start,
    std::optional<Vec2<S>> second_start = std::nullopt) {
  validate_polygon(a);
  if (!a.closed)
    fail("lax_crelation/NotClosedChain", "reflection_chain needs a closed polygon");
  const int n = a.n();
  std::vector<Mat2<S>> refl;
  refl.reserve(n);
  for (long i = 0; i < n; ++i)
    refl.push_back(reflect_matrix(a.vertex(i), a.vertex(i + 1)));

  std::vector<Vec2<S>> pv(n), qv(n);
  if (n % 2 == 1) {
    Vec2<S> x = start;
    for (int k = 0; k < 2 * n; ++k) {
      (k % 2 == 0 ? pv : qv)[k % n] = x;
      x = refl[k % n].apply(x);
    }
    // the chain closes because the full composite is an affine reflection
    if (!(near(x.x, start.x, 1e-9) && near(x.y, start.y, 1e-9)))
      fail("lax_crelation/NotClosedChain", "reflection chain failed to close");
  } else {
    const S cond = even_closure_condition(sv_coords(a));
    if (!near_zero(cond, kClosureTol))
      fail("lax_crelation/NotClosedChain",
           "even-gon alternating closure condition is nonzero");
    const Vec2<S> second = second_start ? *second_start : start + a.vertices[0];
    Vec2<S> x = start, y = second;
    for (int k = 0; k < n; ++k) {
      (k % 2 == 0 ? pv : qv)[k] = x;
      (k % 2 == 0 ? qv : pv)[k] = y;
      x = refl[k].apply(x);
      y = refl[k].apply(y);
    }
  }
  Polygon<S> p = make_closed(std::move(pv));
  Polygon<S> q = make_closed(std::move(qv));
  const S c = bracket(p.vertices[0], q.vertices[0]);
  if (near_zero(c, 0.0))
    fail("lax_crelation/CollinearPair", "degenerate start: [P_0, Q_0] = 0");
  return {std::move(p), std::move(q)};
}

/** Permutability completion: given P ~c Q and P ~d R, the polygon S with
 *  Q ~d S and R ~c S, found per vertex from [R_i, S_i] = c, [Q_i, S_i] = d.
 *  Each quadrilateral (P_i, Q_i, S_i, R_i) is then a butterfly. */
template <class S>
Polygon<S> bianchi_complete(const Polygon<S>& p, const Polygon<S>& q, const Polygon<S>& r,
                            const S& c, const S& d, double check_tol = 1e-7) {
  const int n = p.n();
  if (q.n() != n || r.n() != n)
    fail("lax_crelation/WrongArity", "bianchi_complete needs equal vertex counts");
  for (long i = 0; i < n; ++i) {
    if (!near(bracket(p.vertex(i), q.vertex(i)), c, check_tol) ||
        !near(bracket(p.vertex(i), r.vertex(i)), d, check_tol))
      fail("lax_crelation/NotRelated", "inputs are not c- and d-related to p");
  }
  std::vector<Vec2<S>> sv;
  sv.reserve(n);
  for (long i = 0; i < n; ++i) {
    const Vec2<S> ri = r.vertex(i), qi = q.vertex(i);
    const S det = bracket(ri, qi);
    if (near_zero(det, 1e-13))
      fail("lax_crelation/SingularCompletion",
           "[R_i, Q_i] = 0 at index " + std::to_string(i));
    // [R_i, S] = c and [Q_i, S] = d solve to S = (c Q_i - d R_i) / [R_i, Q_i]
    sv.push_back((c * qi - d * ri) / det);
  }
  Polygon<S> s;
  s.vertices = std::move(sv);
  s.closed = p.closed;
  s.monodromy = p.monodromy;
  return s;
}

}  // namespace centroaffine
