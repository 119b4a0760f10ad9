#pragma once

#include <functional>
#include <string>
#include <vector>

#include "centroaffine/center.hpp"
#include "centroaffine/crelation.hpp"
#include "centroaffine/integrals.hpp"
#include "centroaffine/io.hpp"
#include "centroaffine/random.hpp"
#include "centroaffine/recutting.hpp"
#include "centroaffine/smallgons.hpp"

namespace centroaffine {

struct PropertyResult {
  std::string name;
  bool pass = true;
  double worst_residual = 0;
  std::string witness;  // inputs of the worst failure, empty when passing
};

namespace verify_detail {

class Prop {
 public:
  Prop(std::string name) { res_.name = std::move(name); }

  void exact(bool ok, const std::string& witness) {
    if (!ok && res_.pass) {
      res_.pass = false;
      res_.worst_residual = 1;
      res_.witness = witness;
    }
  }
  void residual(double r, double tol, const std::string& witness) {
    if (r > res_.worst_residual) {
      res_.worst_residual = r;
      if (r > tol) {
        if (res_.pass || res_.witness.empty()) res_.witness = witness;
        res_.pass = false;
      }
    }
  }
  PropertyResult take() { return std::move(res_); }

 private:
  PropertyResult res_;
};

inline std::string sv_witness(const SVCoords<Rat>& sv) { return sv_to_json(sv).dump(); }
inline std::string sv_witness(const SVCoords<double>& sv) { return sv_to_json(sv).dump(); }

}  // namespace verify_detail

inline std::vector<PropertyResult> verify_core(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  {
    Prop prop("core/monodromy_via_continuants == monodromy (exact)");
    Rng rng(seed ^ 0xc01ull);
    for (int n = 3; n <= 8; ++n)
      for (int t = 0; t < trials; ++t) {
        auto sv = random_sv<Rat>(n, rng);
        prop.exact(monodromy_via_continuants(sv) == monodromy(sv),
                   verify_detail::sv_witness(sv));
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("core/reconstruct round trip (exact)");
    Rng rng(seed ^ 0xc02ull);
    for (int n = 3; n <= 8; ++n)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto p = random_twisted_polygon<Rat>(n, rng);
        auto sv = sv_coords(p);
        auto q = reconstruct(sv, p.vertices[0], p.vertices[1]);
        prop.exact(q.vertices == p.vertices, sv_to_json(sv).dump());
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("core/sv coordinates are SL(2)-invariant (exact)");
    Rng rng(seed ^ 0xc03ull);
    for (int t = 0; t < trials; ++t) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 5));
      auto p = random_twisted_polygon<Rat>(n, rng);
      auto m = random_sl2<Rat>(rng);
      Polygon<Rat> q = p;
      for (auto& v : q.vertices) v = m.apply(v);
      q.monodromy = m * p.monodromy * m.inverse();
      q.closed = p.closed;
      auto a = sv_coords(p), b = sv_coords(q);
      prop.exact(a.s == b.s && a.v == b.v, polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("core/closure continuants vanish on closed polygons (exact)");
    Rng rng(seed ^ 0xc04ull);
    for (int n = 3; n <= 7; ++n)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto p = random_closed_polygon<Rat>(n, rng);
        bool all_zero = true;
        for (const Rat& d : closure_defect(sv_coords(p)))
          if (!(d == Rat(0))) all_zero = false;
        prop.exact(all_zero, polygon_to_json(p).dump());
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("core/continuant equals dense determinant (exact, sizes 3..6)");
    Rng rng(seed ^ 0xc05ull);
    std::function<Rat(std::vector<std::vector<Rat>>)> det =
        [&](std::vector<std::vector<Rat>> m) -> Rat {
      if (m.size() == 1) return m[0][0];
      Rat acc(0);
      for (size_t col = 0; col < m.size(); ++col) {
        std::vector<std::vector<Rat>> minor;
        for (size_t r = 1; r < m.size(); ++r) {
          std::vector<Rat> row;
          for (size_t c = 0; c < m.size(); ++c)
            if (c != col) row.push_back(m[r][c]);
          minor.push_back(std::move(row));
        }
        Rat term = m[0][col] * det(minor);
        acc = (col % 2 == 0) ? acc + term : acc - term;
      }
      return acc;
    };
    for (int size = 3; size <= 6; ++size)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        std::vector<Rat> a, b;
        for (int i = 0; i < size; ++i) {
          a.push_back(random_scalar<Rat>(rng, false));
          b.push_back(random_scalar<Rat>(rng, false));
        }
        std::vector<std::vector<Rat>> m(size, std::vector<Rat>(size, Rat(0)));
        for (int i = 0; i < size; ++i) {
          m[i][i] = a[i];
          if (i + 1 < size) {
            m[i][i + 1] = Rat(1);
            m[i + 1][i] = b[i + 1];
          }
        }
        prop.exact(continuant(a, b, 0, size - 1) == det(m), "size " + std::to_string(size));
      }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_lax(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  {
    Prop prop("lax/c_step postcondition brackets (exact)");
    Rng rng(seed ^ 0x1a1ull);
    int done = 0;
    while (done < trials * 10) {
      Vec2<Rat> pi = random_vec<Rat>(rng), pn = random_vec<Rat>(rng);
      Rat cc = random_scalar<Rat>(rng);
      if (near_zero(bracket(pi, pn), 0.0) || near_zero(pi.x, 0.0)) continue;
      Vec2<Rat> qi{random_scalar<Rat>(rng, false), Rat(0)};
      qi.y = (cc + qi.x * pi.y) / pi.x;
      if (near_zero(bracket(qi, pn), 0.0)) continue;
      Vec2<Rat> qn = c_step(qi, pi, pn, cc);
      prop.exact(bracket(pn, qn) == cc && bracket(qi, qn) == bracket(pi, pn), "c_step");
      ++done;
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("lax/solved pairs satisfy the defining brackets (1e-9)");
    Rng rng(seed ^ 0x1a2ull);
    int solved = 0;
    while (solved < trials) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<double>(n, rng);
      double c = rng.uniform(0.1, 0.8);
      SolveResult sol;
      try {
        sol = solve_c_related(p, c);
      } catch (const Error&) {
        continue;
      }
      for (const auto& pr : sol.pairs) {
        ++solved;
        for (long i = 0; i < n; ++i) {
          prop.residual(std::abs(bracket(pr.p.vertex(i), pr.q.vertex(i)) - c), 1e-9,
                        polygon_to_json(p).dump());
          prop.residual(std::abs(bracket(pr.q.vertex(i), pr.q.vertex(i + 1)) -
                                 bracket(pr.p.vertex(i), pr.p.vertex(i + 1))),
                        1e-9, polygon_to_json(p).dump());
        }
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("lax/conjugacy invariant preserved by the correspondence (1e-8)");
    Rng rng(seed ^ 0x1a3ull);
    int pairs = 0;
    while (pairs < trials / 2 + 1) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 2));
      auto p = random_closed_polygon<double>(n, rng);
      double c = rng.uniform(0.1, 0.7);
      SolveResult sol;
      try {
        sol = solve_c_related(p, c);
      } catch (const Error&) {
        continue;
      }
      if (sol.pairs.empty()) continue;
      ++pairs;
      auto svp = sv_coords(p), svq = sv_coords(sol.pairs[0].q);
      for (int k = 0; k < 10; ++k) {
        double lam = rng.uniform(1.5, 4.0);
        double a = conjugacy_invariant(svp, lam), b = conjugacy_invariant(svq, lam);
        prop.residual(std::abs(a - b) / (1 + std::abs(a)), 1e-8, polygon_to_json(p).dump());
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("lax/reflection chains produce related pairs (exact, odd n)");
    Rng rng(seed ^ 0x1a4ull);
    for (int n : {3, 5, 7}) {
      int done = 0;
      while (done < trials / 3 + 1) {
        auto a = random_closed_polygon<Rat>(n, rng);
        std::pair<Polygon<Rat>, Polygon<Rat>> pq;
        try {
          pq = reflection_chain(a, random_vec<Rat>(rng));
        } catch (const Error&) {
          continue;
        }
        const auto& [p, q] = pq;
        const Rat c = bracket(p.vertices[0], q.vertices[0]);
        bool ok = true;
        for (long i = 0; i < n; ++i)
          ok = ok && bracket(p.vertex(i), q.vertex(i)) == c &&
               bracket(p.vertex(i), p.vertex(i + 1)) == bracket(q.vertex(i), q.vertex(i + 1));
        prop.exact(ok, polygon_to_json(a).dump());
        ++done;
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("lax/permutability completion closes into butterflies (1e-8)");
    Rng rng(seed ^ 0x1a5ull);
    int done = 0;
    while (done < trials / 2 + 1) {
      auto p = random_closed_polygon<double>(5, rng);
      SolveResult sc, sd;
      try {
        sc = solve_c_related(p, 0.3);
        sd = solve_c_related(p, 0.7);
      } catch (const Error&) {
        continue;
      }
      if (sc.pairs.empty() || sd.pairs.empty()) continue;
      Polygon<double> s;
      try {
        s = bianchi_complete(p, sc.pairs[0].q, sd.pairs[0].q, 0.3, 0.7);
      } catch (const Error&) {
        continue;
      }
      ++done;
      for (long i = 0; i < 5; ++i) {
        prop.residual(std::abs(bracket(sc.pairs[0].q.vertex(i), s.vertex(i)) - 0.7), 1e-8,
                      polygon_to_json(p).dump());
        prop.residual(std::abs(bracket(sd.pairs[0].q.vertex(i), s.vertex(i)) - 0.3), 1e-8,
                      polygon_to_json(p).dump());
        prop.exact(classify_butterfly(p.vertex(i), sc.pairs[0].q.vertex(i), s.vertex(i),
                                      sd.pairs[0].q.vertex(i),
                                      1e-7) == ButterflyClass::Butterfly,
                   polygon_to_json(p).dump());
      }
    }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_integrals(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  {
    Prop prop("integrals/sparse generating function == Lax trace (exact)");
    Rng rng(seed ^ 0x171ull);
    for (int n = 3; n <= 7; ++n)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto sv = random_sv<Rat>(n, rng);
        auto tr = lax_trace_poly(sv);
        auto F = integrals_F(sv);
        bool ok = true;
        for (size_t k = 0; k < F.size(); ++k)
          ok = ok && tr.coeff(n - 2 * static_cast<int>(k)) == F[k];
        prop.exact(ok, verify_detail::sv_witness(sv));
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("integrals/monodromy trace equals prod(s) F_0 (exact)");
    Rng rng(seed ^ 0x172ull);
    for (int n = 3; n <= 8; ++n)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto sv = random_sv<Rat>(n, rng);
        Rat prod(1);
        for (const Rat& x : sv.s) prod *= x;
        prop.exact(monodromy(sv).trace() == prod * integrals_F(sv)[0],
                   verify_detail::sv_witness(sv));
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("integrals/closed polygon relations (exact)");
    Rng rng(seed ^ 0x173ull);
    for (int n = 3; n <= 6; ++n)
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto p = random_closed_polygon<Rat>(n, rng);
        auto [a, b] = closed_relations_defect(sv_coords(p));
        prop.exact(a == Rat(0) && b == Rat(0), polygon_to_json(p).dump());
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("integrals/field conserves F_k and closure (fd, 1e-6)");
    Rng rng(seed ^ 0x174ull);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      auto sv = random_stable_pentagon(rng);
      auto vdot = xi_field(sv);
      const double h = 1e-6;
      auto plus = sv, minus = sv;
      for (int i = 0; i < 5; ++i) {
        plus.v[i] += h * vdot[i];
        minus.v[i] -= h * vdot[i];
      }
      auto fp = integrals_F(plus), fm = integrals_F(minus);
      for (size_t k = 0; k < fp.size(); ++k)
        prop.residual(std::abs(fp[k] - fm[k]) / (2 * h), 1e-6,
                      verify_detail::sv_witness(sv));
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("integrals/field pushforward = -1 * dressing rhs (exact)");
    Rng rng(seed ^ 0x175ull);
    for (int n : {3, 5, 7})
      for (int t = 0; t < trials / 2 + 1; ++t) {
        auto sv = random_sv<Rat>(n, rng);
        auto vdot = xi_field(sv);
        auto gdot = dressing_rhs(dressing_state(sv));
        bool ok = true;
        for (int i = 0; i < n; ++i)
          ok = ok && vdot[i] / (sv.s_at(i - 1) * sv.s_at(i)) ==
                   Rat(kXiDressingScale) * gdot[i];
        prop.exact(ok, verify_detail::sv_witness(sv));
      }
    out.push_back(prop.take());
  }
  {
    Prop prop("integrals/flow drift of every integral below 1e-7 (T=5, dt=1e-3)");
    Rng rng(seed ^ 0x176ull);
    for (int t = 0; t < std::min(trials / 4 + 1, 12); ++t) {
      auto sv = random_stable_pentagon(rng);
      auto F0 = integrals_F(sv);
      auto end = flow(sv, 5.0, 1e-3);
      auto F1 = integrals_F(end);
      for (size_t k = 0; k < F0.size(); ++k)
        prop.residual(std::abs(F1[k] - F0[k]) / (1 + std::abs(F0[k])), 1e-7,
                      verify_detail::sv_witness(sv));
    }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_recutting(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  {
    Prop prop("recutting/braid relations (exact, n=4..7)");
    Rng rng(seed ^ 0x4e1ull);
    for (int n = 4; n <= 7; ++n) {
      int done = 0;
      while (done < trials / 4 + 1) {
        auto p = random_closed_polygon<Rat>(n, rng);
        auto rep = braid_check(p);
        if (!rep.all() && rep.witness.find("Degenerate") != std::string::npos) continue;
        ++done;
        prop.exact(rep.all(), rep.witness);
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("recutting/quadrilateral recut period 3 on (s, v) (exact)");
    Rng rng(seed ^ 0x4e2ull);
    int done = 0;
    while (done < trials) {
      auto p = random_closed_polygon<Rat>(4, rng);
      Polygon<Rat> r3;
      try {
        r3 = recut(recut(recut(p)));
      } catch (const Error&) {
        continue;
      }
      ++done;
      auto a = sv_coords(p), b = sv_coords(r3);
      prop.exact(a.s == b.s && a.v == b.v, polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("recutting/preserves F_k, I, J, K and the center (exact)");
    Rng rng(seed ^ 0x4e3ull);
    int done = 0;
    while (done < trials) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 4));
      auto p = random_closed_polygon<Rat>(n, rng);
      Polygon<Rat> r;
      try {
        r = recut(p);
        validate_polygon(r);
      } catch (const Error&) {
        continue;
      }
      ++done;
      auto Fp = integrals_F(sv_coords(p)), Fr = integrals_F(sv_coords(r));
      prop.exact(Fp == Fr, polygon_to_json(p).dump());
      prop.exact(center(p) == center(r), polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    // star-shaped samples keep the recutting divisions well conditioned; the
    // identity itself is exact (see the rational chain-pair property)
    Prop prop("recutting/commutes with the correspondence (1e-8)");
    Rng rng(seed ^ 0x4e4ull);
    int done = 0;
    while (done < trials / 2 + 1) {
      auto p = random_positive_closed<double>(5, rng);
      try {
        auto rep = recut_commutes_with_c(p, 0.4);
        ++done;
        prop.residual(rep.max_residual, 1e-8, polygon_to_json(p).dump());
      } catch (const Error&) {
        continue;
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("recutting/commutes with the correspondence (exact, chain pairs)");
    Rng rng(seed ^ 0x4e5ull);
    int done = 0;
    while (done < trials / 2 + 1) {
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
      bool ok = true;
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
        for (long i = 0; i < 5; ++i)
          ok = ok && bracket(rp.vertex(i), rq.vertex(i)) == c &&
               bracket(rp.vertex(i), rp.vertex(i + 1)) ==
                   bracket(rq.vertex(i), rq.vertex(i + 1));
      }
      if (degenerate) continue;
      ++done;
      prop.exact(ok, polygon_to_json(a).dump());
    }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_symplectic(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  auto combine = [](const std::vector<TangentVec<Rat>>& basis, Rng& rng) {
    TangentVec<Rat> u(basis[0].size(), Vec2<Rat>{Rat(0), Rat(0)});
    for (const auto& b : basis) {
      Rat w = random_scalar<Rat>(rng, false);
      for (size_t i = 0; i < u.size(); ++i) u[i] = u[i] + w * b[i];
    }
    return u;
  };
  {
    Prop prop("symplectic/antisymmetry and SL(2) invariance of omega (exact)");
    Rng rng(seed ^ 0x5e1ull);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<Rat>(n, rng);
      auto basis = fixed_area_tangent_basis(p);
      auto u = combine(basis, rng), v = combine(basis, rng);
      prop.exact(omega(p, u, v) == -omega(p, v, u), polygon_to_json(p).dump());
      auto m = random_sl2<Rat>(rng);
      Polygon<Rat> q = p;
      for (auto& vert : q.vertices) vert = m.apply(vert);
      TangentVec<Rat> mu(u.size()), mv(v.size());
      for (size_t i = 0; i < u.size(); ++i) {
        mu[i] = m.apply(u[i]);
        mv[i] = m.apply(v[i]);
      }
      prop.exact(omega(q, mu, mv) == omega(p, u, v), polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("symplectic/Hamiltonian relations for I, J, K (exact)");
    Rng rng(seed ^ 0x5e2ull);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<Rat>(n, rng);
      auto basis = fixed_area_tangent_basis(p);
      auto v = combine(basis, rng);
      auto [dI, dJ, dK] = ijk_derivative(p, v);
      prop.exact(omega(p, sl2_e(p), v) == -dI && omega(p, sl2_h(p), v) == dJ &&
                     omega(p, sl2_f(p), v) == dK,
                 polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("symplectic/sl(2) action on the span of I, J, K (exact)");
    Rng rng(seed ^ 0x5e3ull);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<Rat>(n, rng);
      auto [I, J, K] = ijk(p);
      auto [eI, eJ, eK] = ijk_derivative(p, sl2_e(p));
      auto [hI, hJ, hK] = ijk_derivative(p, sl2_h(p));
      auto [fI, fJ, fK] = ijk_derivative(p, sl2_f(p));
      prop.exact(eI == Rat(0) && eJ == Rat(2) * I && eK == J && hI == Rat(2) * I &&
                     hJ == Rat(0) && hK == Rat(-2) * K && fI == J && fJ == Rat(2) * K &&
                     fK == Rat(0),
                 polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("symplectic/center additivity and butterfly center (exact)");
    Rng rng(seed ^ 0x5e4ull);
    for (int t = 0; t < trials; ++t) {
      int n = 4 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<Rat>(n, rng);
      int k = 2 + static_cast<int>(rng.uniform_int(0, n - 4));
      std::vector<Vec2<Rat>> first(p.vertices.begin(), p.vertices.begin() + k + 1);
      std::vector<Vec2<Rat>> second{p.vertices[0]};
      second.insert(second.end(), p.vertices.begin() + k, p.vertices.end());
      prop.exact(center(p) == center(make_closed(std::move(first))) +
                                  center(make_closed(std::move(second))),
                 polygon_to_json(p).dump());
    }
    auto bfly = make_closed<Rat>(
        {{Rat(1), Rat(0)}, {Rat(2), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1), Rat(2)}});
    prop.exact(center(bfly) == QuadraticForm<Rat>{Rat(0), Rat(0), Rat(0)}, "butterfly");
    out.push_back(prop.take());
  }
  {
    Prop prop("symplectic/4IK - J^2 equals the double bracket sum (exact)");
    Rng rng(seed ^ 0x5e6ull);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      const int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
      auto p = random_closed_polygon<Rat>(n, rng);
      Rat total(0);
      for (long k = 0; k < n; ++k)
        for (long l = 0; l < n; ++l) {
          const Rat sk = bracket(p.vertex(k), p.vertex(k + 1));
          const Rat sl = bracket(p.vertex(l), p.vertex(l + 1));
          total += sk * sl *
                   (bracket(p.vertex(k), p.vertex(l)) *
                        bracket(p.vertex(k + 1), p.vertex(l + 1)) +
                    bracket(p.vertex(k), p.vertex(l + 1)) *
                        bracket(p.vertex(k + 1), p.vertex(l)));
        }
      prop.exact(casimir(p) == total, polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("symplectic/triangle center vs circumscribed conic (exact)");
    Rng rng(seed ^ 0x5e5ull);
    for (int t = 0; t < trials; ++t) {
      auto p = random_closed_polygon<Rat>(3, rng);
      auto conic = circumconic(p.vertices[0], p.vertices[1], p.vertices[2]);
      auto cen = center(p);
      Rat prod(1);
      for (long i = 0; i < 3; ++i) prod *= bracket(p.vertex(i), p.vertex(i + 1));
      prop.exact(cen.a == -prod * conic.c && cen.b == -prod * conic.b &&
                     cen.c == -prod * conic.a,
                 polygon_to_json(p).dump());
    }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_smallgons(uint64_t seed, int trials) {
  using verify_detail::Prop;
  std::vector<PropertyResult> out;
  {
    Prop prop("smallgons/triangle existence bound vs solver");
    Rng rng(seed ^ 0x521ull);
    int checked = 0;
    while (checked < trials * 3) {
      std::array<double, 3> s{rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0),
                              rng.uniform(0.3, 2.0)};
      double c = rng.uniform(0.1, 2.0);
      auto rep = triangle_analysis(s, c);
      if (std::abs(rep.lhs - rep.rhs) < 1e-6 * (1 + std::abs(rep.rhs))) continue;
      auto sol = solve_c_related(triangle_with_sides(s), c);
      prop.exact(rep.exists == !sol.pairs.empty(),
                 "s=(" + fmt(s[0]) + "," + fmt(s[1]) + "," + fmt(s[2]) + "), c=" + fmt(c));
      ++checked;
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("smallgons/triangle identity residual (exact zero)");
    Rng rng(seed ^ 0x522ull);
    int done = 0;
    while (done < trials) {
      auto tri = random_closed_polygon<Rat>(3, rng);
      Rat c = random_scalar<Rat>(rng);
      try {
        prop.exact(triangle_identity_check(tri, c).residual == Rat(0),
                   polygon_to_json(tri).dump());
        ++done;
      } catch (const Error&) {
        continue;
      }
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("smallgons/quadrilateral discriminant sign vs solver");
    Rng rng(seed ^ 0x523ull);
    int checked = 0;
    while (checked < trials * 2) {
      auto p = random_closed_polygon<double>(4, rng);
      double c = rng.uniform(0.1, 1.5);
      QuadQuadratic<double> qq;
      SolveResult sol;
      try {
        qq = quad_partner_quadratic(p, c);
        sol = solve_c_related(p, c);
      } catch (const Error&) {
        continue;
      }
      if (std::abs(qq.disc) < 1e-7 * (1 + qq.u * qq.u) || sol.all_related) continue;
      prop.exact((qq.disc > 0) == !sol.pairs.empty(), polygon_to_json(p).dump());
      ++checked;
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("smallgons/pentagon forbidden band vs solver (equal sides)");
    Rng rng(seed ^ 0x524ull);
    const std::array<double, 5> ones{1, 1, 1, 1, 1};
    const double c = std::sqrt(2.0);
    auto d = pentagon_discriminant(ones, c);
    for (int t = 0; t < trials / 2 + 1; ++t) {
      const double kt = rng.uniform(-6.0, 6.0);
      if (std::abs(kt - d.k_roots->first) < 0.05 || std::abs(kt - d.k_roots->second) < 0.05)
        continue;
      auto ch = pentagon_chart_with_K(ones, kt);
      if (!ch) continue;
      auto sol = solve_c_related(pentagon_polygon(pentagon_chart(*ch)), c);
      const bool should = kt < d.k_roots->first || kt > d.k_roots->second;
      prop.exact(should == !sol.pairs.empty(), "K=" + fmt(kt));
    }
    out.push_back(prop.take());
  }
  {
    Prop prop("smallgons/chart flow is Hamiltonian for K (1e-6)");
    Rng rng(seed ^ 0x525ull);
    for (int t = 0; t < trials; ++t) {
      PentagonChart<double> ch;
      for (auto& s : ch.s) s = rng.uniform(0.5, 1.6);
      ch.x = rng.uniform(0.3, 1.5) * (rng.uniform_int(0, 1) ? 1 : -1);
      ch.y = rng.uniform(0.3, 1.5) * (rng.uniform_int(0, 1) ? 1 : -1);
      try {
        auto fc = pentagon_flow_check(ch);
        prop.residual(fc.tangency_residual, 1e-9, "chart point");
        prop.residual(fc.hamiltonian_residual, 1e-6, "chart point");
      } catch (const Error&) {
        continue;
      }
    }
    out.push_back(prop.take());
  }
  return out;
}

inline std::vector<PropertyResult> verify_suite(const std::string& suite, uint64_t seed,
                                                int trials) {
  std::vector<PropertyResult> out;
  auto append = [&](std::vector<PropertyResult> v) {
    for (auto& r : v) out.push_back(std::move(r));
  };
  if (suite == "core" || suite == "all") append(verify_core(seed, trials));
  if (suite == "lax" || suite == "all") append(verify_lax(seed, trials));
  if (suite == "integrals" || suite == "all") append(verify_integrals(seed, trials));
  if (suite == "recutting" || suite == "all") append(verify_recutting(seed, trials));
  if (suite == "symplectic" || suite == "all") append(verify_symplectic(seed, trials));
  if (suite == "smallgons" || suite == "all") append(verify_smallgons(seed, trials));
  if (out.empty())
    fail("cli_harness/UnknownSuite",
         "suite must be one of core, lax, integrals, recutting, symplectic, smallgons, all");
  return out;
}

inline json verify_report(const std::string& suite, uint64_t seed, int trials) {
  auto results = verify_suite(suite, seed, trials);
  json props = json::array();
  bool all = true;
  for (const auto& r : results) {
    props.push_back(json{{"name", r.name},
                         {"pass", r.pass},
                         {"worst_residual", r.worst_residual},
                         {"witness", r.witness}});
    all = all && r.pass;
  }
  return json{{"suite", suite},
              {"seed", seed},
              {"trials", trials},
              {"all_pass", all},
              {"properties", props}};
}

}  // namespace centroaffine
