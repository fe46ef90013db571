#ifndef LEAVITT_IO_HPP
#define LEAVITT_IO_HPP

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "graded_monoid.hpp"
#include "graph.hpp"
#include "kgraph.hpp"
#include "monoid.hpp"

namespace leavitt {

using Json = nlohmann::json;

/// Strict graph schema:
///   {"vertices":["u","v"],"edges":[{"id":"e","src":"u","tgt":"u","w":1},...]}
/// Missing "w" defaults to 1; unknown keys are rejected.
inline Graph graph_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph: expected an object");
  for (const auto& [key, val] : j.items())
    if (key != "vertices" && key != "edges")
      throw std::invalid_argument("graph: unknown key '" + key + "'");
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph: need 'vertices' and 'edges'");
  std::vector<std::string> vs;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw std::invalid_argument("graph: vertex ids must be strings");
    vs.push_back(v.get<std::string>());
  }
  std::vector<Edge> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_object()) throw std::invalid_argument("graph: edges must be objects");
    Edge edge;
    bool have_id = false, have_src = false, have_tgt = false;
    for (const auto& [key, val] : e.items()) {
      if (key == "id") {
        edge.id = val.get<std::string>();
        have_id = true;
      } else if (key == "src") {
        edge.src = val.get<std::string>();
        have_src = true;
      } else if (key == "tgt") {
        edge.tgt = val.get<std::string>();
        have_tgt = true;
      } else if (key == "w") {
        if (!val.is_number_integer())
          throw std::invalid_argument("graph: weight must be an integer");
        edge.weight = val.get<long long>();
      } else {
        throw std::invalid_argument("graph: unknown edge key '" + key + "'");
      }
    }
    if (!have_id || !have_src || !have_tgt)
      throw std::invalid_argument("graph: edge needs 'id', 'src' and 'tgt'");
    es.push_back(std::move(edge));
  }
  return Graph(std::move(vs), std::move(es));
}

inline Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices();
  j["edges"] = Json::array();
  for (const Edge& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}, {"w", e.weight}});
  return j;
}

/// Monoid elements as JSON maps {"u":1,"v":2}.
inline MonoidElement monoid_element_from_json(const Graph& g, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("monoid element: expected an object");
  MonoidElement x;
  for (const auto& [key, val] : j.items()) {
    if (!val.is_number_integer())
      throw std::invalid_argument("monoid element: multiplicities must be integers");
    long long c = val.get<long long>();
    if (c != 0) x[key] = c;
  }
  validate_monoid_element(g, x);
  return x;
}

inline Json monoid_element_to_json(const MonoidElement& x) {
  Json j = Json::object();
  for (const auto& [v, c] : x) j[v] = c;
  return j;
}

/// Graded elements as JSON maps {"u@0":2,"v@-1":1}.
inline GradedElement graded_element_from_json(const Graph& g, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("graded element: expected an object");
  GradedElement x;
  for (const auto& [key, val] : j.items()) {
    auto [v, n] = split_level_id(key);
    if (!val.is_number_integer())
      throw std::invalid_argument("graded element: multiplicities must be integers");
    long long c = val.get<long long>();
    if (c != 0) x[{v, n}] += c;
  }
  validate_graded_element(g, x);
  return x;
}

inline Json graded_element_to_json(const GradedElement& x) {
  Json j = Json::object();
  for (const auto& [k, c] : x) j[level_id(k.first, k.second)] = c;
  return j;
}

/// k-graph specs: {"k":2,"vertices":1,"mats":[[[2]],[[3]]]}.
inline KGraphSpec kgraph_spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("kgraph spec: expected an object");
  for (const auto& [key, val] : j.items())
    if (key != "k" && key != "vertices" && key != "mats")
      throw std::invalid_argument("kgraph spec: unknown key '" + key + "'");
  std::size_t k = j.at("k").get<std::size_t>();
  std::size_t n = j.at("vertices").get<std::size_t>();
  const Json& mats = j.at("mats");
  if (!mats.is_array() || mats.size() != k)
    throw std::invalid_argument("kgraph spec: 'mats' must list k matrices");
  std::vector<ZMat> ms;
  for (const Json& mj : mats) {
    ZMat m(n, n);
    if (!mj.is_array() || mj.size() != n)
      throw std::invalid_argument("kgraph spec: matrix must have one row per vertex");
    for (std::size_t r = 0; r < n; ++r) {
      if (!mj[r].is_array() || mj[r].size() != n)
        throw std::invalid_argument("kgraph spec: matrix rows must have length vertices");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = mj[r][c].get<long long>();
    }
    ms.push_back(std::move(m));
  }
  return KGraphSpec(n, std::move(ms));
}

/// Limit vectors: {"level":[0,1],"vec":[1,2]}.
inline LimitVector limit_vector_from_json(const KGraphSpec& spec, const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("vec"))
    throw std::invalid_argument("limit vector: need 'level' and 'vec'");
  LimitVector v;
  for (const auto& x : j.at("level")) v.level.push_back(x.get<long long>());
  for (const auto& x : j.at("vec")) v.vec.push_back(Int(x.get<long long>()));
  validate_limit_vector(spec, v);
  return v;
}

inline Json limit_vector_to_json(const LimitVector& v) {
  Json j;
  j["level"] = v.level;
  j["vec"] = Json::array();
  for (const Int& x : v.vec) j["vec"].push_back(std::stoll(x.str()));
  return j;
}

/// K0^gr classes: {"level":0,"vec":{"u":1,"v":-2}}.
inline Kgr0Class kgr0_class_from_json(const Graph& g, const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j.contains("vec"))
    throw std::invalid_argument("kgr0 class: need 'level' and 'vec'");
  Kgr0Class c;
  c.level = j.at("level").get<long long>();
  for (const auto& [key, val] : j.at("vec").items()) {
    if (!g.has_vertex(key)) throw std::invalid_argument("kgr0 class: unknown vertex " + key);
    long long k = val.get<long long>();
    if (k != 0) c.vec[key] = k;
  }
  return c;
}

/// Reads an argument either as inline JSON (starts with '{') or a file path.
inline Json load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return Json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open file: " + arg);
  Json j;
  in >> j;
  return j;
}

}  // namespace leavitt

#endif
