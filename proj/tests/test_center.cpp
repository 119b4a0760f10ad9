#include "doctest.h"

#include <cmath>

#include "centroaffine/center.hpp"
#include "centroaffine/crelation.hpp"
#include "centroaffine/random.hpp"
#include "centroaffine/recutting.hpp"

using namespace centroaffine;

namespace {

Polygon<Rat> canonical_triangle() {
  return make_closed<Rat>({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(-1), Rat(-1)}});
}

Polygon<Rat> butterfly_quad_r() {
  return make_closed<Rat>(
      {{Rat(1), Rat(0)}, {Rat(2), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1), Rat(2)}});
}

template <class S>
TangentVec<S> combine(const std::vector<TangentVec<S>>& basis, Rng& rng) {
  TangentVec<S> out(basis[0].size(), Vec2<S>{S(0), S(0)});
  for (const auto& b : basis) {
    S w = random_scalar<S>(rng, false);
    for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + w * b[i];
  }
  return out;
}

// the center as the bracket form C~(w) = sum s_i [P_i, w][P_{i+1}, w]
// (= center with arguments swapped); transforms by genuine pullback
template <class S>
S center_bracket_form(const Polygon<S>& p, const Vec2<S>& w) {
  S acc(0);
  for (long i = 0; i < p.n(); ++i)
    acc += bracket(p.vertex(i), p.vertex(i + 1)) * bracket(p.vertex(i), w) *
           bracket(p.vertex(i + 1), w);
  return acc;
}

}  // namespace

TEST_CASE("omega: antisymmetry, bilinearity, tangency gate, exact") {
  Rng rng(501);
  for (int n = 3; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      auto p = random_closed_polygon<Rat>(n, rng);
      auto basis = fixed_area_tangent_basis(p);
      REQUIRE(static_cast<int>(basis.size()) >= n);
      auto u = combine(basis, rng), v = combine(basis, rng), w = combine(basis, rng);
      CHECK(omega(p, u, u) == Rat(0));
      CHECK(omega(p, u, v) == -omega(p, v, u));
      Rat k = random_scalar<Rat>(rng);
      TangentVec<Rat> kv_plus_w(v.size());
      for (size_t i = 0; i < v.size(); ++i) kv_plus_w[i] = k * v[i] + w[i];
      CHECK(omega(p, u, kv_plus_w) == k * omega(p, u, v) + omega(p, u, w));
    }
  }
  // non-tangent argument is refused
  auto p = canonical_triangle();
  TangentVec<Rat> bad{{Rat(1), Rat(0)}, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
  auto tang = fixed_area_tangent_basis(p);
  CHECK_THROWS_AS(omega(p, bad, tang[0]), Error);
}

TEST_CASE("omega is SL(2)-invariant, exact") {
  Rng rng(502);
  for (int t = 0; t < 20; ++t) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    auto basis = fixed_area_tangent_basis(p);
    auto u = combine(basis, rng), v = combine(basis, rng);
    auto m = random_sl2<Rat>(rng);
    Polygon<Rat> q = p;
    for (auto& vert : q.vertices) vert = m.apply(vert);
    TangentVec<Rat> mu(u.size()), mv(v.size());
    for (size_t i = 0; i < u.size(); ++i) {
      mu[i] = m.apply(u[i]);
      mv[i] = m.apply(v[i]);
    }
    CHECK(omega(q, mu, mv) == omega(p, u, v));
  }
}

TEST_CASE("sl(2) generators are tangent and act on the span of I, J, K") {
  Rng rng(503);
  for (int t = 0; t < 15; ++t) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    CHECK(tangency_defect(p, sl2_e(p)) == 0.0);
    CHECK(tangency_defect(p, sl2_h(p)) == 0.0);
    CHECK(tangency_defect(p, sl2_f(p)) == 0.0);

    auto [I, J, K] = ijk(p);
    {
      auto [dI, dJ, dK] = ijk_derivative(p, sl2_e(p));
      CHECK(dI == Rat(0));
      CHECK(dJ == Rat(2) * I);
      CHECK(dK == J);
    }
    {
      auto [dI, dJ, dK] = ijk_derivative(p, sl2_h(p));
      CHECK(dI == Rat(2) * I);
      CHECK(dJ == Rat(0));
      CHECK(dK == Rat(-2) * K);
    }
    {
      auto [dI, dJ, dK] = ijk_derivative(p, sl2_f(p));
      CHECK(dI == J);
      CHECK(dJ == Rat(2) * K);
      CHECK(dK == Rat(0));
    }
  }
}

TEST_CASE("Hamiltonian relations: i_e omega = -dI, i_h omega = dJ, i_f omega = dK") {
  Rng rng(504);
  for (int t = 0; t < 15; ++t) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    auto basis = fixed_area_tangent_basis(p);
    auto v = combine(basis, rng);
    auto [dI, dJ, dK] = ijk_derivative(p, v);
    CHECK(omega(p, sl2_e(p), v) == -dI);
    CHECK(omega(p, sl2_h(p), v) == dJ);
    CHECK(omega(p, sl2_f(p), v) == dK);
  }
  // and the float finite-difference version at tolerance 1e-6
  for (int t = 0; t < 5; ++t) {
    auto p = random_closed_polygon<double>(5, rng);
    auto basis = fixed_area_tangent_basis(p);
    auto v = combine(basis, rng);
    const double h = 1e-6;
    auto shift = [&](double dir) {
      Polygon<double> q = p;
      for (int i = 0; i < 5; ++i) q.vertices[i] = q.vertices[i] + (dir * h) * v[i];
      return q;
    };
    auto [Ip, Jp, Kp] = ijk(shift(1.0));
    auto [Im, Jm, Km] = ijk(shift(-1.0));
    CHECK(std::abs(omega(p, sl2_e(p), v, 1e-7) + (Ip - Im) / (2 * h)) < 1e-6);
    CHECK(std::abs(omega(p, sl2_h(p), v, 1e-7) - (Jp - Jm) / (2 * h)) < 1e-6);
    CHECK(std::abs(omega(p, sl2_f(p), v, 1e-7) - (Kp - Km) / (2 * h)) < 1e-6);
  }
}

TEST_CASE("ijk, casimir, center on the canonical examples") {
  auto tri = canonical_triangle();
  auto [I, J, K] = ijk(tri);
  CHECK(I == Rat(-1));
  CHECK(J == Rat(-1));
  CHECK(K == Rat(-1));
  CHECK(casimir(tri) == Rat(3));
  CHECK(center(tri) == QuadraticForm<Rat>{Rat(-1), Rat(-1), Rat(-1)});

  auto bfly = butterfly_quad_r();
  auto [Ib, Jb, Kb] = ijk(bfly);
  CHECK(Ib == Rat(0));
  CHECK(Jb == Rat(0));
  CHECK(Kb == Rat(0));
  CHECK(casimir(bfly) == Rat(0));
}

TEST_CASE("casimir is SL(2)-invariant, the bracket form pulls back, exact") {
  Rng rng(505);
  for (int t = 0; t < 20; ++t) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    auto m = random_sl2<Rat>(rng);
    Polygon<Rat> q = p;
    for (auto& vert : q.vertices) vert = m.apply(vert);
    CHECK(casimir(q) == casimir(p));
    auto minv = m.inverse();
    for (int k = 0; k < 5; ++k) {
      Vec2<Rat> w = random_vec<Rat>(rng);
      CHECK(center_bracket_form(q, w) == center_bracket_form(p, minv.apply(w)));
    }
  }
}

TEST_CASE("I, J, K are conserved by the correspondence (float)") {
  Rng rng(506);
  int done = 0;
  while (done < 10) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 2));
    auto p = random_closed_polygon<double>(n, rng);
    SolveResult sol;
    try {
      sol = solve_c_related(p, 0.4);
    } catch (const Error&) {
      continue;
    }
    if (sol.pairs.empty()) continue;
    ++done;
    auto [I, J, K] = ijk(p);
    auto [I2, J2, K2] = ijk(sol.pairs[0].q);
    CHECK(std::abs(I - I2) <= 1e-8 * (1 + std::abs(I)));
    CHECK(std::abs(J - J2) <= 1e-8 * (1 + std::abs(J)));
    CHECK(std::abs(K - K2) <= 1e-8 * (1 + std::abs(K)));
  }
}

TEST_CASE("center additivity across a diagonal cut, exact") {
  Rng rng(507);
  for (int t = 0; t < 100; ++t) {
    int n = 4 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    int k = 2 + static_cast<int>(rng.uniform_int(0, n - 4));
    std::vector<Vec2<Rat>> first(p.vertices.begin(), p.vertices.begin() + k + 1);
    std::vector<Vec2<Rat>> second{p.vertices[0]};
    second.insert(second.end(), p.vertices.begin() + k, p.vertices.end());
    auto c0 = center(p);
    auto c1 = center(make_closed(std::move(first)));
    auto c2 = center(make_closed(std::move(second)));
    CHECK(c0 == c1 + c2);
  }
}

TEST_CASE("butterfly center is the zero form, including solver pairs") {
  CHECK(center(butterfly_quad_r()) == QuadraticForm<Rat>{Rat(0), Rat(0), Rat(0)});

  // consecutive pairs of a solved correspondence form butterflies with zero center
  Rng rng(508);
  int done = 0;
  while (done < 5) {
    auto p = random_closed_polygon<double>(4, rng);
    SolveResult sol;
    try {
      sol = solve_c_related(p, 0.3);
    } catch (const Error&) {
      continue;
    }
    if (sol.pairs.empty()) continue;
    ++done;
    const auto& q = sol.pairs[0].q;
    for (int i = 0; i < 4; ++i) {
      auto quad = make_closed<double>(
          {p.vertex(i), p.vertex(i + 1), q.vertex(i + 1), q.vertex(i)});
      auto [I, J, K] = ijk(quad);
      CHECK(std::abs(I) < 1e-8);
      CHECK(std::abs(J) < 1e-8);
      CHECK(std::abs(K) < 1e-8);
    }
  }
}

TEST_CASE("circumconic: canonical examples and error path") {
  auto q = circumconic<Rat>({Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(-1), Rat(-1)});
  CHECK(q == QuadraticForm<Rat>{Rat(1), Rat(1), Rat(1)});

  // points on the unit circle give x^2 + y^2 = 1
  auto circ =
      circumconic<Rat>({Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(3, 5), Rat(4, 5)});
  CHECK(circ == QuadraticForm<Rat>{Rat(1), Rat(0), Rat(1)});

  // collinear-with-origin pair: singular system
  CHECK_THROWS_AS(circumconic<Rat>({Rat(1), Rat(0)}, {Rat(-2), Rat(0)}, {Rat(0), Rat(1)}),
                  Error);
}

TEST_CASE("omega is invariant under recutting (exact pushforward)") {
  Rng rng(510);
  int done = 0;
  while (done < 20) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
    auto p = random_closed_polygon<Rat>(n, rng);
    auto basis = fixed_area_tangent_basis(p);
    auto u = combine(basis, rng), v = combine(basis, rng);
    Polygon<Rat> r;
    TangentVec<Rat> ru, rv;
    try {
      std::tie(r, ru) = recut_pushforward(p, u);
      rv = recut_pushforward(p, v).second;
      validate_polygon(r);
    } catch (const Error&) {
      continue;
    }
    ++done;
    // recutting permutes the side areas, so pushed tangents stay in the stratum
    CHECK(tangency_defect(r, ru) == 0.0);
    CHECK(omega(r, ru, rv) == omega(p, u, v));
  }
}

TEST_CASE("omega is invariant under the correspondence (fd Jacobian, 1e-5)") {
  Rng rng(511);
  int done = 0;
  while (done < 6) {
    int n = 3 + static_cast<int>(rng.uniform_int(0, 2));
    auto p = random_positive_closed<double>(n, rng);
    const double c = 0.25;
    SolveResult sol;
    try {
      sol = solve_c_related(p, c);
    } catch (const Error&) {
      continue;
    }
    if (sol.pairs.empty()) continue;
    const Polygon<double> q0 = sol.pairs.back().q;
    // differentiate the branch of the correspondence that passes through q0
    auto partner = [&](const Polygon<double>& poly) -> std::optional<Polygon<double>> {
      SolveResult s2;
      try {
        s2 = solve_c_related(poly, c);
      } catch (const Error&) {
        return std::nullopt;
      }
      const Polygon<double>* best = nullptr;
      double best_d = 1e18;
      for (const auto& pr : s2.pairs) {
        double d = 0;
        for (int i = 0; i < poly.n(); ++i)
          d = std::max({d, std::abs(pr.q.vertices[i].x - q0.vertices[i].x),
                        std::abs(pr.q.vertices[i].y - q0.vertices[i].y)});
        if (d < best_d) {
          best_d = d;
          best = &pr.q;
        }
      }
      if (!best) return std::nullopt;
      return *best;
    };
    auto basis = fixed_area_tangent_basis(p);
    auto u = combine(basis, rng), v = combine(basis, rng);
    for (auto* t : {&u, &v}) {
      double m = 0;
      for (auto& vi : *t) m = std::max({m, std::abs(vi.x), std::abs(vi.y)});
      for (auto& vi : *t) vi = (1.0 / m) * vi;
    }
    const double h = 1e-6;
    auto push = [&](const TangentVec<double>& dir) -> std::optional<TangentVec<double>> {
      Polygon<double> pp = p, pm = p;
      for (int i = 0; i < n; ++i) {
        pp.vertices[i] = pp.vertices[i] + h * dir[i];
        pm.vertices[i] = pm.vertices[i] - h * dir[i];
      }
      auto qp = partner(pp), qm = partner(pm);
      if (!qp || !qm) return std::nullopt;
      TangentVec<double> out(n);
      for (int i = 0; i < n; ++i)
        out[i] = (1.0 / (2 * h)) * (qp->vertices[i] - qm->vertices[i]);
      return out;
    };
    auto du = push(u), dv = push(v);
    if (!du || !dv) continue;
    ++done;
    // the pushed tangents preserve the (shared) side areas up to O(h^2)
    const double w1 = omega(p, u, v);
    const double w2 = omega(q0, *du, *dv, 1e-4);
    CHECK(std::abs(w1 - w2) <= 1e-5 * (1 + std::abs(w1)));
  }
}

TEST_CASE("triangle center equals -s0 s1 s2 times the coefficient-swapped conic") {
  Rng rng(509);
  for (int t = 0; t < 100; ++t) {
    auto p = random_closed_polygon<Rat>(3, rng);
    auto conic = circumconic(p.vertices[0], p.vertices[1], p.vertices[2]);
    auto cen = center(p);
    Rat prod = Rat(1);
    for (long i = 0; i < 3; ++i) prod *= bracket(p.vertex(i), p.vertex(i + 1));
    CHECK(cen.a == -prod * conic.c);
    CHECK(cen.b == -prod * conic.b);
    CHECK(cen.c == -prod * conic.a);
    // equivalently: the bracket form evaluates to -prod at the vertices
    for (const auto& vert : p.vertices) CHECK(center_bracket_form(p, vert) == -prod);
  }
}
