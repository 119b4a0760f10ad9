// Python bindings for the float backend of the main operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "centroaffine/center.hpp"
#include "centroaffine/crelation.hpp"
#include "centroaffine/integrals.hpp"
#include "centroaffine/random.hpp"
#include "centroaffine/recutting.hpp"
#include "centroaffine/smallgons.hpp"

namespace py = pybind11;
using namespace centroaffine;

namespace {

using PyVec = std::pair<double, double>;

Vec2<double> to_vec(const PyVec& p) { return {p.first, p.second}; }
PyVec from_vec(const Vec2<double>& v) { return {v.x, v.y}; }

Polygon<double> make_poly(const std::vector<PyVec>& vertices, bool closed,
                          const std::vector<std::vector<double>>& monodromy) {
  Polygon<double> p;
  for (const auto& v : vertices) p.vertices.push_back(to_vec(v));
  if (!monodromy.empty()) {
    p.monodromy = {monodromy.at(0).at(0), monodromy.at(0).at(1), monodromy.at(1).at(0),
                   monodromy.at(1).at(1)};
    p.closed = closed && near_identity(p.monodromy, kClosureTol);
  } else {
    p.closed = closed;
  }
  return p;
}

SVCoords<double> make_sv(const std::vector<double>& s, const std::vector<double>& v) {
  return {s, v};
}

py::dict poly_dict(const Polygon<double>& p) {
  std::vector<PyVec> verts;
  for (const auto& v : p.vertices) verts.push_back(from_vec(v));
  py::dict d;
  d["vertices"] = verts;
  d["closed"] = p.closed;
  d["monodromy"] = std::vector<std::vector<double>>{{p.monodromy.a, p.monodromy.b},
                                                    {p.monodromy.c, p.monodromy.d}};
  return d;
}

Polygon<double> poly_from_any(const py::object& obj) {
  if (py::isinstance<py::dict>(obj)) {
    py::dict d = obj.cast<py::dict>();
    return make_poly(d["vertices"].cast<std::vector<PyVec>>(),
                     d.contains("closed") ? d["closed"].cast<bool>() : true,
                     d.contains("monodromy")
                         ? d["monodromy"].cast<std::vector<std::vector<double>>>()
                         : std::vector<std::vector<double>>{});
  }
  return make_poly(obj.cast<std::vector<PyVec>>(), true, {});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "integrable dynamics on centroaffine polygons (float backend)";

  py::register_exception<Error>(m, "CentroaffineError");

  m.def("bracket",
        [](const PyVec& a, const PyVec& b) { return bracket(to_vec(a), to_vec(b)); },
        "determinant pairing of two plane vectors");

  m.def(
      "sv_coords",
      [](const py::object& poly) {
        auto sv = sv_coords(poly_from_any(poly));
        return py::make_tuple(sv.s, sv.v);
      },
      "side and short-diagonal areas (s, v) of a polygon");

  m.def(
      "reconstruct",
      [](const std::vector<double>& s, const std::vector<double>& v, const PyVec& p0,
         const PyVec& p1) { return poly_dict(reconstruct(make_sv(s, v), to_vec(p0), to_vec(p1))); },
      py::arg("s"), py::arg("v"), py::arg("p0"), py::arg("p1"),
      "vertices from moduli coordinates and a frame");

  m.def("monodromy", [](const std::vector<double>& s, const std::vector<double>& v) {
    auto mm = monodromy(make_sv(s, v));
    return std::vector<std::vector<double>>{{mm.a, mm.b}, {mm.c, mm.d}};
  });
  m.def("monodromy_via_continuants",
        [](const std::vector<double>& s, const std::vector<double>& v) {
          auto mm = monodromy_via_continuants(make_sv(s, v));
          return std::vector<std::vector<double>>{{mm.a, mm.b}, {mm.c, mm.d}};
        });
  m.def("closure_defect", [](const std::vector<double>& s, const std::vector<double>& v) {
    return closure_defect(make_sv(s, v));
  });
  m.def("ptolemy_defect", [](const std::vector<double>& s, const std::vector<double>& v) {
    return ptolemy_defect(make_sv(s, v));
  });
  m.def("is_regular_value",
        [](const std::vector<double>& s) { return is_regular_value(s); });

  m.def("integrals_F", [](const std::vector<double>& s, const std::vector<double>& v) {
    return integrals_F(make_sv(s, v));
  });
  m.def("lax_trace_coeffs",
        [](const std::vector<double>& s, const std::vector<double>& v) {
          return lax_trace_poly(make_sv(s, v)).coeffs();
        },
        "trace of the Lax matrix as polynomial coefficients, ascending degree");
  m.def("conjugacy_invariant",
        [](const std::vector<double>& s, const std::vector<double>& v, double lam) {
          return conjugacy_invariant(make_sv(s, v), lam);
        });
  m.def("closed_relations_defect",
        [](const std::vector<double>& s, const std::vector<double>& v) {
          auto [a, b] = closed_relations_defect(make_sv(s, v));
          return py::make_tuple(a, b);
        });
  m.def("xi_field", [](const std::vector<double>& s, const std::vector<double>& v) {
    return xi_field(make_sv(s, v));
  });
  m.def(
      "flow",
      [](const std::vector<double>& s, const std::vector<double>& v, double T, double dt) {
        auto out = flow(make_sv(s, v), T, dt);
        return py::make_tuple(out.s, out.v);
      },
      py::arg("s"), py::arg("v"), py::arg("T"), py::arg("dt") = 1e-3);

  m.def(
      "solve_c_related",
      [](const py::object& poly, double c) {
        auto sol = solve_c_related(poly_from_any(poly), c);
        py::list partners;
        py::list roots;
        for (const auto& pr : sol.pairs) {
          partners.append(poly_dict(pr.q));
          roots.append(pr.t_root);
        }
        py::dict d;
        d["partners"] = partners;
        d["t_roots"] = roots;
        d["all_related"] = sol.all_related;
        return d;
      },
      py::arg("polygon"), py::arg("c"));

  m.def(
      "iterate_c_dynamics",
      [](const py::object& poly, double c, int steps, const std::string& seed) {
        auto orbit = iterate_c_dynamics(poly_from_any(poly), c, steps,
                                        seed == "smaller" ? SeedChoice::SmallerT
                                                          : SeedChoice::LargerT);
        py::list out;
        for (const auto& p : orbit) out.append(poly_dict(p));
        return out;
      },
      py::arg("polygon"), py::arg("c"), py::arg("steps"), py::arg("seed") = "larger");

  m.def("classify_butterfly",
        [](const PyVec& p1, const PyVec& p2, const PyVec& q2, const PyVec& q1) {
          return std::string(to_string(
              classify_butterfly(to_vec(p1), to_vec(p2), to_vec(q2), to_vec(q1))));
        });

  m.def(
      "bianchi_complete",
      [](const py::object& p, const py::object& q, const py::object& r, double c, double d) {
        return poly_dict(
            bianchi_complete(poly_from_any(p), poly_from_any(q), poly_from_any(r), c, d));
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("c"), py::arg("d"));

  m.def("elementary_recut", [](const py::object& poly, long j) {
    return poly_dict(elementary_recut(poly_from_any(poly), j));
  });
  m.def("recut", [](const py::object& poly) { return poly_dict(recut(poly_from_any(poly))); });

  m.def("ijk", [](const py::object& poly) {
    auto [I, J, K] = ijk(poly_from_any(poly));
    return py::make_tuple(I, J, K);
  });
  m.def("casimir", [](const py::object& poly) { return casimir(poly_from_any(poly)); });
  m.def("center", [](const py::object& poly) {
    auto f = center(poly_from_any(poly));
    py::dict d;
    d["a"] = f.a;
    d["b"] = f.b;
    d["c"] = f.c;
    return d;
  });
  m.def("circumconic", [](const PyVec& a, const PyVec& b, const PyVec& c) {
    auto f = circumconic(to_vec(a), to_vec(b), to_vec(c));
    py::dict d;
    d["a"] = f.a;
    d["b"] = f.b;
    d["c"] = f.c;
    return d;
  });

  m.def("triangle_analysis", [](const std::vector<double>& s, double c) {
    if (s.size() != 3) throw Error("smallgons/WrongArity", "need three side areas");
    auto rep = triangle_analysis(std::array<double, 3>{s[0], s[1], s[2]}, c);
    py::dict d;
    d["exists"] = rep.exists;
    d["lhs"] = rep.lhs;
    d["rhs"] = rep.rhs;
    d["motion"] = std::string(to_string(rep.motion));
    return d;
  });
  m.def("quad_partner_quadratic", [](const py::object& poly, double c) {
    auto q = quad_partner_quadratic(poly_from_any(poly), c);
    return py::make_tuple(q.u, q.v, q.disc);
  });
  m.def("pentagon_K", [](const std::vector<double>& s, double x, double y) {
    if (s.size() != 5) throw Error("smallgons/WrongArity", "need five side areas");
    PentagonChart<double> ch{{s[0], s[1], s[2], s[3], s[4]}, x, y};
    return pentagon_K(ch);
  });
  m.def("pentagon_chart", [](const std::vector<double>& s, double x, double y) {
    if (s.size() != 5) throw Error("smallgons/WrongArity", "need five side areas");
    PentagonChart<double> ch{{s[0], s[1], s[2], s[3], s[4]}, x, y};
    auto sv = pentagon_chart(ch);
    return py::make_tuple(sv.s, sv.v);
  });
  m.def("pentagon_discriminant", [](const std::vector<double>& s, double c) {
    if (s.size() != 5) throw Error("smallgons/WrongArity", "need five side areas");
    auto d = pentagon_discriminant(std::array<double, 5>{s[0], s[1], s[2], s[3], s[4]}, c);
    py::dict out;
    out["dd"] = d.dd;
    if (d.k_roots) out["k_roots"] = py::make_tuple(d.k_roots->first, d.k_roots->second);
    return out;
  });

  m.def("regular_polygon", [](int n) { return poly_dict(regular_polygon(n)); });
  m.def(
      "random_closed_polygon",
      [](int n, uint64_t seed, bool positive) {
        Rng rng(seed);
        return poly_dict(positive ? random_positive_closed<double>(n, rng)
                                  : random_closed_polygon<double>(n, rng));
      },
      py::arg("n"), py::arg("seed"), py::arg("positive") = false);
}
