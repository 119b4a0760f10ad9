#pragma once

#include <string>
#include <utility>
#include <vector>

#include "centroaffine/crelation.hpp"
#include "centroaffine/polygon.hpp"

namespace centroaffine {

/** Elementary recutting at vertex j: replace P_j by
 *    P'_j = (s[j-1] P_{j-1} + s[j] P_{j+1}) / v[j].
 *  Swaps the two adjacent side brackets and fixes every other vertex; an
 *  involution. */
template <class S>
Polygon<S> elementary_recut(const Polygon<S>& p, long j) {
  const int n = p.n();
  if (j < 0 || j >= n) fail("recutting/IndexOrder", "recut index out of range");
  const Vec2<S> prev = p.vertex(j - 1), next = p.vertex(j + 1);
  const S v = bracket(prev, next);
  if (near_zero(v, 0.0))
    fail("recutting/DegenerateDiagonal", "v[" + std::to_string(j) + "] = 0");
  const S s_prev = bracket(prev, p.vertex(j));
  const S s_next = bracket(p.vertex(j), next);
  Polygon<S> out = p;
  out.vertices[static_cast<size_t>(j)] = (s_prev * prev + s_next * next) / v;
  return out;
}

// Full recutting: the composition R_{n-1} o ... o R_0 (ascending index).
template <class S>
Polygon<S> recut(const Polygon<S>& p) {
  Polygon<S> cur = p;
  for (int j = 0; j < p.n(); ++j) cur = elementary_recut(cur, j);
  return cur;
}

/** Exact pushforward of a vertex tangent through the elementary recutting:
 *  differentiate P'_j in all three touching vertices. Rational in the inputs,
 *  so exact over rationals. */
template <class S>
TangentVec<S> elementary_recut_pushforward(const Polygon<S>& p, const TangentVec<S>& u,
                                           long j) {
  const int n = p.n();
  auto uat = [&](long i) -> Vec2<S> {
    long k = ((i % n) + n) % n;
    // tangents transported by the (constant) monodromy across the wrap
    if (i >= n) return p.monodromy.apply(u[static_cast<size_t>(k)]);
    if (i < 0) return p.monodromy.inverse().apply(u[static_cast<size_t>(k)]);
    return u[static_cast<size_t>(k)];
  };
  const Vec2<S> pm = p.vertex(j - 1), pj = p.vertex(j), pp = p.vertex(j + 1);
  const Vec2<S> um = uat(j - 1), uj = uat(j), up = uat(j + 1);
  const S v = bracket(pm, pp);
  if (near_zero(v, 0.0)) fail("recutting/DegenerateDiagonal", "v = 0 in pushforward");
  const S s_prev = bracket(pm, pj);
  const S s_next = bracket(pj, pp);
  const S ds_prev = bracket(um, pj) + bracket(pm, uj);
  const S ds_next = bracket(uj, pp) + bracket(pj, up);
  const S dv = bracket(um, pp) + bracket(pm, up);
  const Vec2<S> pnew = (s_prev * pm + s_next * pp) / v;
  TangentVec<S> out = u;
  out[static_cast<size_t>(j)] =
      (ds_prev * pm + s_prev * um + ds_next * pp + s_next * up - dv * pnew) / v;
  return out;
}

template <class S>
std::pair<Polygon<S>, TangentVec<S>> recut_pushforward(const Polygon<S>& p,
                                                       const TangentVec<S>& u) {
  Polygon<S> cur = p;
  TangentVec<S> tan = u;
  for (int j = 0; j < p.n(); ++j) {
    tan = elementary_recut_pushforward(cur, tan, j);
    cur = elementary_recut(cur, j);
  }
  return {std::move(cur), std::move(tan)};
}

struct BraidReport {
  bool involutions = true;   // R_j^2 = Id
  bool braid = true;         // (R_j R_{j+1})^3 = Id
  bool commutations = true;  // R_j R_k = R_k R_j at cyclic distance >= 2
  std::string witness;       // first failing relation, empty when all pass

  bool all() const { return involutions && braid && commutations; }
};

/** Checks the three relation families of the elementary recuttings on the
 *  given polygon, exactly over rationals. Degenerate intermediate diagonals
 *  are reported as failures with a witness rather than thrown. */
template <class S>
BraidReport braid_check(const Polygon<S>& p) {
  BraidReport rep;
  const int n = p.n();
  auto equal_polys = [&](const Polygon<S>& a, const Polygon<S>& b) {
    for (int i = 0; i < n; ++i)
      if (!(near(a.vertices[i].x, b.vertices[i].x, 1e-9) &&
            near(a.vertices[i].y, b.vertices[i].y, 1e-9)))
        return false;
    return true;
  };
  auto note = [&](bool& flag, const std::string& what) {
    flag = false;
    if (rep.witness.empty()) rep.witness = what;
  };
  for (int j = 0; j < n; ++j) {
    try {
      if (!equal_polys(elementary_recut(elementary_recut(p, j), j), p))
        note(rep.involutions, "R_" + std::to_string(j) + "^2 != Id");
    } catch (const Error& e) {
      note(rep.involutions, e.what());
    }
    try {
      const int k = (j + 1) % n;
      Polygon<S> cur = p;
      for (int rep3 = 0; rep3 < 3; ++rep3)
        cur = elementary_recut(elementary_recut(cur, k), j);
      if (!equal_polys(cur, p))
        note(rep.braid, "(R_" + std::to_string(j) + " R_" + std::to_string(k) + ")^3 != Id");
    } catch (const Error& e) {
      note(rep.braid, e.what());
    }
    for (int k = 0; k < n; ++k) {
      const int dist = std::min((k - j + n) % n, (j - k + n) % n);
      if (dist < 2) continue;
      try {
        if (!equal_polys(elementary_recut(elementary_recut(p, k), j),
                         elementary_recut(elementary_recut(p, j), k)))
          note(rep.commutations,
               "R_" + std::to_string(j) + " R_" + std::to_string(k) + " not commuting");
      } catch (const Error& e) {
        note(rep.commutations, e.what());
      }
    }
  }
  return rep;
}

struct CommuteReport {
  double max_residual = 0;
  bool ok = false;
};

/** Verifies that recutting commutes with the correspondence: for a solved
 *  partner Q of P, each R_j(P) ~c R_j(Q) and recut(P) ~c recut(Q), reporting
 *  the worst bracket residual. */
inline CommuteReport recut_commutes_with_c(const Polygon<double>& p, double c,
                                           double tol = 1e-8) {
  SolveResult sol = solve_c_related(p, c);
  if (sol.pairs.empty())
    fail("lax_crelation/NoRealPartner", "no partner to test commutation against");
  const Polygon<double>& q = sol.pairs.back().q;
  CommuteReport rep;
  auto record_pair = [&](const Polygon<double>& a, const Polygon<double>& b) {
    for (long i = 0; i < a.n(); ++i) {
      rep.max_residual = std::max(rep.max_residual,
                                  std::abs(bracket(a.vertex(i), b.vertex(i)) - c));
      rep.max_residual = std::max(rep.max_residual,
                                  std::abs(bracket(a.vertex(i), a.vertex(i + 1)) -
                                           bracket(b.vertex(i), b.vertex(i + 1))));
    }
  };
  for (int j = 0; j < p.n(); ++j)
    record_pair(elementary_recut(p, j), elementary_recut(q, j));
  record_pair(recut(p), recut(q));
  rep.ok = rep.max_residual <= tol;
  return rep;
}

}  // namespace centroaffine
