#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "centroaffine/center.hpp"
#include "centroaffine/polygon.hpp"

namespace centroaffine {

using nlohmann::json;

// Scalars travel as strings: decimal with 17 significant digits for floats,
// "p/q" for rationals; plain JSON numbers are accepted on input.
template <class S>
json scalar_to_json(const S& x) {
  return scalar_traits<S>::to_string(x);
}

template <class S>
S scalar_from_json(const json& j) {
  if (j.is_string()) return scalar_traits<S>::from_string(j.get<std::string>());
  if (j.is_number_integer()) {
    if constexpr (scalar_traits<S>::exact)
      return S(j.get<long>());
    else
      return static_cast<double>(j.get<long>());
  }
  if (j.is_number()) {
    if constexpr (scalar_traits<S>::exact)
      fail("cli_harness/ParseError", "rational inputs need integer or \"p/q\" values");
    else
      return j.get<double>();
  }
  fail("cli_harness/ParseError", "expected a scalar, got " + j.dump());
}

template <class S>
json polygon_to_json(const Polygon<S>& p) {
  json verts = json::array();
  for (const auto& v : p.vertices)
    verts.push_back(json::array({scalar_to_json(v.x), scalar_to_json(v.y)}));
  const auto& m = p.monodromy;
  return json{{"n", p.n()},
              {"closed", p.closed},
              {"vertices", verts},
              {"monodromy",
               json::array({json::array({scalar_to_json(m.a), scalar_to_json(m.b)}),
                            json::array({scalar_to_json(m.c), scalar_to_json(m.d)})})}};
}

template <class S>
Polygon<S> polygon_from_json(const json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array())
    fail("cli_harness/ParseError", "polygon JSON needs a \"vertices\" array");
  Polygon<S> p;
  for (const auto& v : j["vertices"])
    p.vertices.push_back({scalar_from_json<S>(v.at(0)), scalar_from_json<S>(v.at(1))});
  if (j.contains("monodromy")) {
    const auto& m = j["monodromy"];
    p.monodromy = {scalar_from_json<S>(m.at(0).at(0)), scalar_from_json<S>(m.at(0).at(1)),
                   scalar_from_json<S>(m.at(1).at(0)), scalar_from_json<S>(m.at(1).at(1))};
  }
  p.closed = j.value("closed", near_identity(p.monodromy, kClosureTol));
  if (j.contains("n") && j["n"].get<int>() != p.n())
    fail("cli_harness/ParseError", "polygon JSON: \"n\" disagrees with the vertex count");
  return p;
}

template <class S>
json sv_to_json(const SVCoords<S>& sv) {
  json s = json::array(), v = json::array();
  for (const auto& x : sv.s) s.push_back(scalar_to_json(x));
  for (const auto& x : sv.v) v.push_back(scalar_to_json(x));
  return json{{"s", s}, {"v", v}};
}

template <class S>
SVCoords<S> sv_from_json(const json& j) {
  if (!j.contains("s") || !j.contains("v"))
    fail("cli_harness/ParseError", "coordinate JSON needs \"s\" and \"v\" arrays");
  SVCoords<S> sv;
  for (const auto& x : j["s"]) sv.s.push_back(scalar_from_json<S>(x));
  for (const auto& x : j["v"]) sv.v.push_back(scalar_from_json<S>(x));
  return sv;
}

template <class S>
json form_to_json(const QuadraticForm<S>& f) {
  return json{{"a", scalar_to_json(f.a)}, {"b", scalar_to_json(f.b)}, {"c", scalar_to_json(f.c)}};
}

template <class S>
QuadraticForm<S> form_from_json(const json& j) {
  return {scalar_from_json<S>(j.at("a")), scalar_from_json<S>(j.at("b")),
          scalar_from_json<S>(j.at("c"))};
}

// Minimal CSV emitter; all cells pre-formatted.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

inline std::string fmt(double x) { return scalar_traits<double>::to_string(x); }

}  // namespace centroaffine
