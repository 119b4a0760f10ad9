#include "doctest.h"

#include <algorithm>
#include <tuple>

#include "centroaffine/random.hpp"
#include "centroaffine/recutting.hpp"

using namespace centroaffine;

namespace {

template <class S>
bool same_vertices(const Polygon<S>& a, const Polygon<S>& b, double tol = 1e-9) {
  for (int i = 0; i < a.n(); ++i)
    if (!(near(a.vertices[i].x, b.vertices[i].x, tol) &&
          near(a.vertices[i].y, b.vertices[i].y, tol)))
      return false;
  return true;
}

std::tuple<Rat, Rat, Rat> ijk_sums(const Polygon<Rat>& p) {
  Rat I(0), J(0), K(0);
  for (long i = 0; i < p.n(); ++i) {
    const Vec2<Rat> a = p.vertex(i), b = p.vertex(i + 1);
    const Rat s = bracket(a, b);
    I += s * a.x * b.x;
    J += s * (a.x * b.y + b.x * a.y);
    K += s * a.y * b.y;
  }
  return {I, J, K};
}

}  // namespace

TEST_CASE("elementary recut: hand example, bracket swap, involution") {
  auto p = make_closed<Rat>({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(-2), Rat(-1)}});
  auto r = elementary_recut(p, 1);
  CHECK(r.vertices[1] == Vec2<Rat>{Rat(3), Rat(2)});
  // adjacent side brackets swap: (1, 2) -> (2, 1)
  CHECK(bracket(r.vertex(0), r.vertex(1)) == Rat(2));
  CHECK(bracket(r.vertex(1), r.vertex(2)) == Rat(1));
  CHECK(same_vertices(elementary_recut(r, 1), p));

  // symmetric configuration with equal adjacent sides is fixed
  auto tri = make_closed<Rat>({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(-1), Rat(-1)}});
  CHECK(same_vertices(elementary_recut(tri, 1), tri));

  // degenerate short diagonal refuses
  auto bad = make_closed<Rat>({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(2), Rat(0)}});
  CHECK_THROWS_AS(elementary_recut(bad, 1), Error);
}

TEST_CASE("elementary recut is an exact involution on random polygons") {
  Rng rng(401);
  for (int n = 3; n <= 7; ++n)
    for (int t = 0; t < 15; ++t) {
      auto p = random_closed_polygon<Rat>(n, rng);
      for (int j = 0; j < n; ++j) {
        auto rr = elementary_recut(elementary_recut(p, j), j);
        CHECK(same_vertices(rr, p));
      }
    }
}

TEST_CASE("recut preserves all spectral integrals and I, J, K exactly") {
  Rng rng(402);
  for (int n = 3; n <= 7; ++n) {
    int done = 0;
    while (done < 10) {
      auto p = random_closed_polygon<Rat>(n, rng);
      Polygon<Rat> r;
      try {
        r = recut(p);
        validate_polygon(r);
      } catch (const Error&) {
        continue;
      }
      ++done;
      auto Fp = integrals_F(sv_coords(p));
      auto Fr = integrals_F(sv_coords(r));
      for (size_t k = 0; k < Fp.size(); ++k) CHECK(Fp[k] == Fr[k]);
      auto [Ip, Jp, Kp] = ijk_sums(p);
      auto [Ir, Jr, Kr] = ijk_sums(r);
      CHECK(Ip == Ir);
      CHECK(Jp == Jr);
      CHECK(Kp == Kr);
      // side multiset preserved
      auto sp = sv_coords(p).s, sr = sv_coords(r).s;
      std::sort(sp.begin(), sp.end());
      std::sort(sr.begin(), sr.end());
      CHECK(sp == sr);
    }
  }
}

TEST_CASE("triangle: double recutting restores the moduli coordinates exactly") {
  Rng rng(403);
  int done = 0;
  while (done < 20) {
    auto p = random_closed_polygon<Rat>(3, rng);
    Polygon<Rat> rr;
    try {
      rr = recut(recut(p));
    } catch (const Error&) {
      continue;
    }
    ++done;
    auto a = sv_coords(p), b = sv_coords(rr);
    CHECK(a.s == b.s);
    CHECK(a.v == b.v);
  }
  // and one recut rotates the side sequence
  auto p = make_closed<Rat>({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(-2), Rat(-1)}});
  auto r = recut(p);
  auto sp = sv_coords(p).s, sr = sv_coords(r).s;
  CHECK(sp == std::vector<Rat>{Rat(1), Rat(2), Rat(1)});
  CHECK(sr == std::vector<Rat>{Rat(2), Rat(1), Rat(1)});
}

TEST_CASE("quadrilateral: full recutting has exact period 3 on (s, v)") {
  Rng rng(404);
  int done = 0;
  while (done < 20) {
    auto p = random_closed_polygon<Rat>(4, rng);
    Polygon<Rat> r3;
    try {
      r3 = recut(recut(recut(p)));
    } catch (const Error&) {
      continue;
    }
    ++done;
    auto a = sv_coords(p), b = sv_coords(r3);
    CHECK(a.s == b.s);
    CHECK(a.v == b.v);
    // single recut permutes the sides by the 3-cycle (s1, s2, s0, s3)
    auto r1 = sv_coords(recut(p));
    CHECK(r1.s == std::vector<Rat>{a.s[1], a.s[2], a.s[0], a.s[3]});
  }
}

TEST_CASE("braid relations hold exactly on random rational polygons, n=4..7") {
  Rng rng(405);
  for (int n = 4; n <= 7; ++n) {
    int done = 0;
    while (done < 25) {
      auto p = random_closed_polygon<Rat>(n, rng);
      auto rep = braid_check(p);
      if (!rep.all() && !rep.witness.empty() &&
          rep.witness.find("Degenerate") != std::string::npos)
        continue;  // unlucky sample hit a degenerate intermediate diagonal
      ++done;
      CHECK(rep.involutions);
      CHECK(rep.braid);
      CHECK(rep.commutations);
    }
  }
}

TEST_CASE("braid_check reports degeneracies instead of throwing") {
  // short diagonal through the origin at vertex 1
  auto bad = make_closed<Rat>(
      {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(2), Rat(0)}, {Rat(0), Rat(-3)}});
  auto rep = braid_check(bad);
  CHECK_FALSE(rep.all());
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("recutting commutes with the correspondence (float solver pairs)") {
  Rng rng(406);
  int done = 0;
  while (done < 8) {
    auto p = random_positive_closed<double>(5, rng);
    try {
      auto rep = recut_commutes_with_c(p, 0.4);
      ++done;
      CHECK(rep.ok);
      CHECK(rep.max_residual < 1e-8);
    } catch (const Error&) {
      continue;  // no partner at this c
    }
  }
}

TEST_CASE("recutting commutes with the correspondence, exact on chain pairs") {
  Rng rng(407);
  int done = 0;
  while (done < 10) {
    auto a = random_closed_polygon<Rat>(5, rng);
    Polygon<Rat> p, q;
    try {
      std::tie(p, q) = reflection_chain(a, random_vec<Rat>(rng));
      validate_polygon(p);
      validate_polygon(q);
    } catch (const Error&) {
      continue;
    }
    const Rat c = bracket(p.vertices[0], q.vertices[0]);
    bool degenerate = false;
    for (int j = 0; j < 5 && !degenerate; ++j) {
      Polygon<Rat> rp, rq;
      try {
        rp = elementary_recut(p, j);
        rq = elementary_recut(q, j);
      } catch (const Error&) {
        degenerate = true;
        break;
      }
      for (int i = 0; i < 5; ++i) {
        CHECK(bracket(rp.vertex(i), rq.vertex(i)) == c);
        CHECK(bracket(rp.vertex(i), rp.vertex(i + 1)) ==
              bracket(rq.vertex(i), rq.vertex(i + 1)));
      }
    }
    if (!degenerate) ++done;
  }
}

TEST_CASE("recutting extends to twisted polygons, exactly") {
  Rng rng(409);
  int done = 0;
  while (done < 15) {
    int n = 4 + static_cast<int>(rng.uniform_int(0, 2));
    Polygon<Rat> p;
    try {
      p = random_twisted_polygon<Rat>(n, rng);
    } catch (const Error&) {
      continue;
    }
    if (p.closed) continue;
    Polygon<Rat> r;
    try {
      r = recut(p);
      validate_polygon(r);
    } catch (const Error&) {
      continue;  // degenerate intermediate diagonal
    }
    ++done;
    // the monodromy is untouched and every spectral integral survives
    CHECK(r.monodromy == p.monodromy);
    CHECK(integrals_F(sv_coords(p)) == integrals_F(sv_coords(r)));
    auto twice = elementary_recut(elementary_recut(p, 0), 0);
    CHECK(twice.vertices == p.vertices);
  }
}

TEST_CASE("recut pushforward matches finite differences") {
  Rng rng(408);
  auto p = random_closed_polygon<double>(5, rng);
  TangentVec<double> u;
  for (int i = 0; i < 5; ++i) u.push_back(random_vec<double>(rng));
  auto [r, du] = recut_pushforward(p, u);
  const double h = 1e-6;
  Polygon<double> pp = p, pm = p;
  for (int i = 0; i < 5; ++i) {
    pp.vertices[i] = pp.vertices[i] + h * u[i];
    pm.vertices[i] = pm.vertices[i] - h * u[i];
  }
  auto rp = recut(pp), rm = recut(pm);
  for (int i = 0; i < 5; ++i) {
    CHECK(du[i].x ==
          doctest::Approx((rp.vertices[i].x - rm.vertices[i].x) / (2 * h)).epsilon(1e-5));
    CHECK(du[i].y ==
          doctest::Approx((rp.vertices[i].y - rm.vertices[i].y) / (2 * h)).epsilon(1e-5));
  }
}
