// Command-line interface: polygon generation, the correspondence and its
// orbits, recutting, integral reports, flow integration, center/conic reports,
// pentagon zone scans, and the property verification suites.
//
// Polygon-consuming commands read JSON from --in (default: stdin) and write to
// --out (default: stdout), so they compose in pipes. Outputs are deterministic
// functions of (seed, flags).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "centroaffine/io.hpp"
#include "centroaffine/recutting.hpp"
#include "centroaffine/smallgons.hpp"
#include "centroaffine/verify.hpp"

using namespace centroaffine;

namespace {

std::string read_stream(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) fail("cli_harness/IoError", "cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_stream(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    if (!data.empty() && data.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) fail("cli_harness/IoError", "cannot open output '" + path + "'");
  f << data;
  if (!data.empty() && data.back() != '\n') f << "\n";
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    fail("cli_harness/ParseError", e.what());
  }
}

Polygon<double> read_polygon(const std::string& in_path) {
  return polygon_from_json<double>(parse_json(read_stream(in_path)));
}

// columns F_0..F_q plus a trailing K column for pentagons (K = F_q there)
std::vector<std::string> integral_header(int n) {
  std::vector<std::string> h;
  for (int k = 0; k < (n + 1) / 2; ++k) h.push_back("F_" + std::to_string(k));
  if (n == 5) h.push_back("K");
  return h;
}

std::vector<std::string> integral_row(const SVCoords<double>& sv) {
  std::vector<std::string> row;
  auto F = integrals_F(sv);
  for (double f : F) row.push_back(fmt(f));
  if (sv.n() == 5) row.push_back(fmt(F.back()));
  return row;
}

struct GenOptions {
  std::string kind = "regular";
  int n = 5;
  uint64_t seed = 1;
  std::string scalar = "float";
  bool positive = false;
  std::string in, out;
};

int cmd_gen(const GenOptions& o) {
  if (o.n < 3) fail("cli_harness/WrongArity", "gen needs n >= 3");
  json j;
  Rng rng(o.seed);
  const bool rational = o.scalar == "rational";
  if (o.kind == "regular") {
    j = polygon_to_json(regular_polygon(o.n));
  } else if (o.kind == "random-closed") {
    if (rational)
      j = polygon_to_json(o.positive ? random_positive_closed<Rat>(o.n, rng)
                                     : random_closed_polygon<Rat>(o.n, rng));
    else
      j = polygon_to_json(o.positive ? random_positive_closed<double>(o.n, rng)
                                     : random_closed_polygon<double>(o.n, rng));
  } else if (o.kind == "random-twisted") {
    if (rational)
      j = polygon_to_json(random_twisted_polygon<Rat>(o.n, rng));
    else
      j = polygon_to_json(random_twisted_polygon<double>(o.n, rng));
  } else if (o.kind == "from-sv") {
    json in = parse_json(read_stream(o.in));
    if (rational) {
      auto sv = sv_from_json<Rat>(in);
      j = polygon_to_json(
          reconstruct(sv, Vec2<Rat>{Rat(1), Rat(0)}, Vec2<Rat>{Rat(0), sv.s[0]}));
    } else {
      auto sv = sv_from_json<double>(in);
      j = polygon_to_json(
          reconstruct(sv, Vec2<double>{1.0, 0.0}, Vec2<double>{0.0, sv.s[0]}));
    }
  } else {
    fail("cli_harness/UnknownKind",
         "kind must be regular|random-closed|random-twisted|from-sv");
  }
  write_stream(o.out, j.dump(2));
  return 0;
}

int cmd_relate(const std::string& in, const std::string& out, double c, double tol) {
  auto p = read_polygon(in);
  auto sol = solve_c_related(p, c, tol);
  json partners = json::array(), roots = json::array();
  for (const auto& pr : sol.pairs) {
    partners.push_back(polygon_to_json(pr.q));
    roots.push_back(pr.t_root);
  }
  json j{{"c", c},
         {"all_related", sol.all_related},
         {"count", sol.pairs.size()},
         {"t_roots", roots},
         {"partners", partners}};
  write_stream(out, j.dump(2));
  return 0;
}

int cmd_orbit(const std::string& in, const std::string& out, const std::string& csv,
              double c, int steps, const std::string& seed_choice) {
  auto p = read_polygon(in);
  const SeedChoice seed =
      seed_choice == "smaller" ? SeedChoice::SmallerT : SeedChoice::LargerT;
  auto orbit = iterate_c_dynamics(p, c, steps, seed);
  json jorbit = json::array();
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < orbit.size(); ++i) {
    jorbit.push_back(polygon_to_json(orbit[i]));
    std::vector<std::string> row{std::to_string(i)};
    for (auto& cell : integral_row(sv_coords(orbit[i]))) row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) fail("cli_harness/IoError", "cannot open '" + csv + "'");
    std::vector<std::string> header{"step"};
    for (auto& h : integral_header(p.n())) header.push_back(std::move(h));
    write_csv(f, header, rows);
  }
  write_stream(out, jorbit.dump(2));
  return 0;
}

int cmd_recut(const std::string& in, const std::string& out, int elementary,
              const std::string& scalar) {
  json jin = parse_json(read_stream(in));
  json j;
  if (scalar == "rational") {
    auto p = polygon_from_json<Rat>(jin);
    j = polygon_to_json(elementary >= 0 ? elementary_recut(p, elementary) : recut(p));
  } else {
    auto p = polygon_from_json<double>(jin);
    j = polygon_to_json(elementary >= 0 ? elementary_recut(p, elementary) : recut(p));
  }
  write_stream(out, j.dump(2));
  return 0;
}

template <class S>
json integrals_payload(const json& jin) {
  SVCoords<S> sv =
      jin.contains("s") ? sv_from_json<S>(jin) : sv_coords(polygon_from_json<S>(jin));
  json f = json::array();
  for (const S& x : integrals_F(sv)) f.push_back(scalar_to_json(x));
  json tr = json::array();
  const Poly<S> trace = lax_trace_poly(sv);
  for (const S& x : trace.coeffs()) tr.push_back(scalar_to_json(x));
  json j{{"n", sv.n()}, {"F", f}, {"trace_poly_ascending", tr}};
  if (!jin.contains("s")) {
    auto p = polygon_from_json<S>(jin);
    if (p.closed) {
      auto [I, J, K] = ijk(p);
      j["I"] = scalar_to_json(I);
      j["J"] = scalar_to_json(J);
      j["K"] = scalar_to_json(K);
      j["casimir"] = scalar_to_json(casimir(p));
    }
  }
  return j;
}

int cmd_integrals(const std::string& in, const std::string& out, const std::string& scalar) {
  json jin = parse_json(read_stream(in));
  write_stream(out, (scalar == "rational" ? integrals_payload<Rat>(jin)
                                          : integrals_payload<double>(jin))
                        .dump(2));
  return 0;
}

int cmd_flow(const std::string& in, const std::string& out, const std::string& csv, double T,
             double dt, int sample_every) {
  json jin = parse_json(read_stream(in));
  SVCoords<double> sv = jin.contains("s") ? sv_from_json<double>(jin)
                                          : sv_coords(polygon_from_json<double>(jin));
  auto F0 = integrals_F(sv);
  std::vector<std::vector<std::string>> rows;
  const int steps = static_cast<int>(T / dt + 0.5);
  SVCoords<double> cur = sv;
  for (int i = 0; i <= steps; ++i) {
    if (i % sample_every == 0) {
      std::vector<std::string> row{fmt(i * dt)};
      for (auto& cell : integral_row(cur)) row.push_back(std::move(cell));
      rows.push_back(std::move(row));
    }
    if (i < steps) cur = flow(cur, dt, dt);
  }
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) fail("cli_harness/IoError", "cannot open '" + csv + "'");
    std::vector<std::string> header{"time"};
    for (auto& h : integral_header(sv.n())) header.push_back(std::move(h));
    write_csv(f, header, rows);
  }
  auto F1 = integrals_F(cur);
  double drift = 0;
  for (size_t k = 0; k < F0.size(); ++k)
    drift = std::max(drift, std::abs(F1[k] - F0[k]) / (1 + std::abs(F0[k])));
  write_stream(
      out,
      json{{"T", T}, {"dt", dt}, {"max_relative_drift", drift}, {"sv", sv_to_json(cur)}}
          .dump(2));
  return 0;
}

int cmd_center(const std::string& in, const std::string& out) {
  auto p = read_polygon(in);
  auto [I, J, K] = ijk(p);
  json j{{"I", fmt(I)},
         {"J", fmt(J)},
         {"K", fmt(K)},
         {"casimir", fmt(casimir(p))},
         {"center", form_to_json(center(p))}};
  if (p.n() == 3)
    j["circumconic"] =
        form_to_json(circumconic(p.vertices[0], p.vertices[1], p.vertices[2]));
  write_stream(out, j.dump(2));
  return 0;
}

int cmd_pentagon(const std::vector<double>& svals, double cmin, double cmax, int grid,
                 double kmin, double kmax, const std::string& grid_csv,
                 const std::string& levels_csv, const std::vector<double>& levels) {
  if (svals.size() != 5) fail("cli_harness/WrongArity", "pentagon needs five side areas");
  std::array<double, 5> s;
  std::copy(svals.begin(), svals.end(), s.begin());

  if (!grid_csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < grid; ++i) {
      const double c = cmin + (cmax - cmin) * (i + 0.5) / grid;
      bool skip_c = false;
      for (double si : s)
        if (std::abs(std::abs(c) - std::abs(si)) < 1e-3) skip_c = true;
      if (skip_c) continue;  // singular spectral value
      auto disc = pentagon_discriminant(s, c);
      for (int jk = 0; jk < grid; ++jk) {
        const double kt = kmin + (kmax - kmin) * (jk + 0.5) / grid;
        auto ch = pentagon_chart_with_K(s, kt);
        if (!ch) continue;
        bool predicted = true;
        if (disc.k_roots)
          predicted = kt <= disc.k_roots->first || kt >= disc.k_roots->second;
        auto sol = solve_c_related(pentagon_polygon(pentagon_chart(*ch)), c);
        rows.push_back(
            {fmt(c), fmt(kt), sol.pairs.empty() ? "0" : "1", predicted ? "1" : "0"});
      }
    }
    std::ofstream f(grid_csv);
    if (!f) fail("cli_harness/IoError", "cannot open '" + grid_csv + "'");
    write_csv(f, {"c", "K", "exists", "predicted"}, rows);
  }

  if (!levels_csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (double level : levels) {
      for (double branch : {-1.0, 1.0}) {
        auto ch = pentagon_chart_with_K_on_branch(s, level, branch);
        if (!ch) continue;
        for (const auto& pt : pentagon_level_walk(*ch, 4000))
          rows.push_back({fmt(pt.x), fmt(pt.y), fmt(level)});
      }
    }
    std::ofstream f(levels_csv);
    if (!f) fail("cli_harness/IoError", "cannot open '" + levels_csv + "'");
    write_csv(f, {"x", "y", "K"}, rows);
  }
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int trials, const std::string& out) {
  json rep = verify_report(suite, seed, trials);
  write_stream(out, rep.dump(2));
  for (const auto& p : rep["properties"])
    std::cerr << (p["pass"].get<bool>() ? "PASS " : "FAIL ") << p["name"].get<std::string>()
              << "  worst_residual=" << p["worst_residual"].get<double>() << "\n";
  return rep["all_pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centroaffine polygon dynamics"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* cgen = app.add_subcommand("gen", "generate a polygon as JSON");
  cgen->add_option("--kind", gen.kind, "regular|random-closed|random-twisted|from-sv");
  cgen->add_option("--n", gen.n, "number of vertices");
  cgen->add_option("--seed", gen.seed, "rng seed");
  cgen->add_option("--scalar", gen.scalar, "rational|float");
  cgen->add_flag("--positive", gen.positive, "all side areas positive");
  cgen->add_option("--in", gen.in, "sv JSON input for from-sv (default stdin)");
  cgen->add_option("--out", gen.out, "output path (default stdout)");

  std::string in, out, csv, scalar = "float", seed_choice = "larger", suite = "all";
  std::string grid_csv, levels_csv;
  double c = 0.5, T = 5.0, dt = 1e-3, cmin = 0.25, cmax = 10.5, kmin = -12, kmax = 5;
  double tol = 1e-8;
  int steps = 10, elementary = -1, trials = 100, grid = 50, sample_every = 100;
  uint64_t seed = 42;
  std::vector<double> svals{1, 1, 1, 1, 1}, levels{-10, -9, -8.2};

  auto* crelate =
      app.add_subcommand("relate", "solve for the polygons c-related to the input");
  crelate->add_option("--in", in);
  crelate->add_option("--out", out);
  crelate->add_option("--c", c)->required();
  crelate->add_option("--tol", tol, "pair acceptance tolerance");

  auto* corbit = app.add_subcommand("orbit", "branch-consistent orbit of the correspondence");
  corbit->add_option("--in", in);
  corbit->add_option("--out", out);
  corbit->add_option("--csv", csv, "per-step integrals CSV");
  corbit->add_option("--c", c)->required();
  corbit->add_option("--steps", steps);
  corbit->add_option("--seed-choice", seed_choice, "larger|smaller first root");

  auto* crecut = app.add_subcommand("recut", "full or elementary recutting");
  crecut->add_option("--in", in);
  crecut->add_option("--out", out);
  crecut->add_option("--elementary", elementary, "single vertex index (default: full)");
  crecut->add_option("--scalar", scalar, "rational|float");

  auto* cint = app.add_subcommand("integrals", "spectral integrals of a polygon or sv data");
  cint->add_option("--in", in);
  cint->add_option("--out", out);
  cint->add_option("--scalar", scalar, "rational|float");

  auto* cflow = app.add_subcommand("flow", "integrate the infinitesimal field");
  cflow->add_option("--in", in);
  cflow->add_option("--out", out);
  cflow->add_option("--csv", csv, "trace CSV of (time, integrals)");
  cflow->add_option("--T", T);
  cflow->add_option("--dt", dt);
  cflow->add_option("--sample-every", sample_every);

  auto* ccenter = app.add_subcommand("center", "moment map, casimir and center form");
  ccenter->add_option("--in", in);
  ccenter->add_option("--out", out);

  auto* cpent = app.add_subcommand("pentagon", "zone grid and level-curve samples");
  cpent->add_option("--s", svals, "five side areas")->expected(5);
  cpent->add_option("--cmin", cmin);
  cpent->add_option("--cmax", cmax);
  cpent->add_option("--grid", grid);
  cpent->add_option("--kmin", kmin);
  cpent->add_option("--kmax", kmax);
  cpent->add_option("--grid-csv", grid_csv, "(c, K, exists, predicted) table");
  cpent->add_option("--levels-csv", levels_csv, "(x, y, K) level-curve samples");
  cpent->add_option("--levels", levels, "K values to sample");

  auto* cverify = app.add_subcommand("verify", "run the property suites");
  cverify->add_option("--suite", suite,
                      "core|lax|integrals|recutting|symplectic|smallgons|all");
  cverify->add_option("--seed", seed);
  cverify->add_option("--trials", trials);
  cverify->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cgen) return cmd_gen(gen);
    if (*crelate) return cmd_relate(in, out, c, tol);
    if (*corbit) return cmd_orbit(in, out, csv, c, steps, seed_choice);
    if (*crecut) return cmd_recut(in, out, elementary, scalar);
    if (*cint) return cmd_integrals(in, out, scalar);
    if (*cflow) return cmd_flow(in, out, csv, T, dt, sample_every);
    if (*ccenter) return cmd_center(in, out);
    if (*cpent)
      return cmd_pentagon(svals, cmin, cmax, grid, kmin, kmax, grid_csv, levels_csv, levels);
    if (*cverify) return cmd_verify(suite, seed, trials, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
