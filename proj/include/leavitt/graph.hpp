#ifndef LEAVITT_GRAPH_HPP
#define LEAVITT_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace leavitt {

struct Edge {
  std::string id;
  std::string src;
  std::string tgt;
  long long weight = 1;  // grading cocycle value w(e); the group is always Z

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A finite directed multigraph with an integer weight per edge.
///
/// Vertices and edges are identified by opaque string ids.  The canonical
/// ordering used everywhere downstream is the lexicographic id order;
/// construction sorts both id lists, so iteration order is deterministic.
/// Graphs are immutable after construction.
class Graph {
 public:
  Graph() = default;

  Graph(std::vector<std::string> vertices, std::vector<Edge> edges) {
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
      if (vertices[i] == vertices[i + 1])
        throw std::invalid_argument("duplicate vertex id: " + vertices[i]);
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (edges[i].id == edges[i + 1].id)
        throw std::invalid_argument("duplicate edge id: " + edges[i].id);
    vertices_ = std::move(vertices);
    edges_ = std::move(edges);
    for (std::size_t i = 0; i < vertices_.size(); ++i) vindex_[vertices_[i]] = i;
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      auto s = vindex_.find(e.src);
      auto t = vindex_.find(e.tgt);
      if (s == vindex_.end())
        throw std::invalid_argument("edge " + e.id + " has undeclared source " + e.src);
      if (t == vindex_.end())
        throw std::invalid_argument("edge " + e.id + " has undeclared target " + e.tgt);
      eindex_[e.id] = i;
      out_[s->second].push_back(i);
      in_[t->second].push_back(i);
    }
    // edges_ is id-sorted, so adjacency lists come out id-sorted too
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const std::string& v) const { return vindex_.count(v) != 0; }
  bool has_edge(const std::string& e) const { return eindex_.count(e) != 0; }

  std::size_t vertex_index(const std::string& v) const {
    auto it = vindex_.find(v);
    if (it == vindex_.end()) throw std::invalid_argument("unknown vertex: " + v);
    return it->second;
  }
  std::size_t edge_index(const std::string& e) const {
    auto it = eindex_.find(e);
    if (it == eindex_.end()) throw std::invalid_argument("unknown edge: " + e);
    return it->second;
  }

  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const std::string& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t src_index(std::size_t e) const { return vindex_.at(edges_[e].src); }
  std::size_t tgt_index(std::size_t e) const { return vindex_.at(edges_[e].tgt); }

  /// Out-edges of a vertex, sorted by edge id.
  const std::vector<std::size_t>& out(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in(std::size_t v) const { return in_[v]; }

  bool is_sink(std::size_t v) const { return out_[v].empty(); }
  /// Finite graphs have no infinite emitters, so regular == non-sink.
  bool is_regular(std::size_t v) const { return !out_[v].empty(); }

  /// The designated special edge of a regular vertex: the out-edge with the
  /// largest id.  Used by the normal form of the path algebra.
  std::size_t special_edge(std::size_t v) const {
    if (out_[v].empty())
      throw std::invalid_argument("special_edge: " + vertices_[v] + " is a sink");
    return out_[v].back();
  }

  bool all_unit_weights() const {
    for (const Edge& e : edges_)
      if (e.weight != 1) return false;
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> vindex_;
  std::map<std::string, std::size_t> eindex_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Vertices with at least one outgoing edge (no infinite emitters exist here).
inline std::set<std::string> regular_vertices(const Graph& g) {
  std::set<std::string> r;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_regular(v)) r.insert(g.vertex(v));
  return r;
}

/// All simple cycles (closed paths with pairwise distinct sources), each as a
/// sequence of edge indices.  Rotations are identified: every cycle is
/// reported anchored at its smallest vertex index.  Bounded DFS; fine for the
/// desk-scale graphs this library targets.
inline std::vector<std::vector<std::size_t>> simple_cycles(const Graph& g) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t n = g.vertex_count();
  std::vector<std::size_t> path;
  std::vector<bool> onpath(n, false);

  // Anchor at `root`; only vertices >= root may participate.
  auto dfs = [&](auto&& self, std::size_t root, std::size_t v) -> void {
    for (std::size_t e : g.out(v)) {
      std::size_t w = g.tgt_index(e);
      if (w < root) continue;
      if (w == root) {
        path.push_back(e);
        cycles.push_back(path);
        path.pop_back();
      } else if (!onpath[w]) {
        onpath[w] = true;
        path.push_back(e);
        self(self, root, w);
        path.pop_back();
        onpath[w] = false;
      }
    }
  };
  for (std::size_t root = 0; root < n; ++root) {
    onpath[root] = true;
    dfs(dfs, root, root);
    onpath[root] = false;
  }
  return cycles;
}

/// An exit of a cycle: an edge b with s(b) = s(a_i) for some cycle edge a_i
/// and b != a_i.
inline bool cycle_has_exit(const Graph& g, const std::vector<std::size_t>& cycle) {
  for (std::size_t e : cycle)
    if (g.out(g.src_index(e)).size() >= 2) return true;
  return false;
}

inline bool no_cycle_has_exit(const Graph& g) {
  for (const auto& c : simple_cycles(g))
    if (cycle_has_exit(g, c)) return false;
  return true;
}

/// Every simple cycle has an exit (condition L).  This is the graph-level
/// criterion for effectiveness of the associated groupoid; a standard fact,
/// cross-checked in the tests by searching for interior isotropy bisections.
inline bool every_cycle_has_exit(const Graph& g) {
  for (const auto& c : simple_cycles(g))
    if (!cycle_has_exit(g, c)) return false;
  return true;
}

inline bool is_acyclic(const Graph& g) { return simple_cycles(g).empty(); }

namespace detail {
inline void check_plain_id(const std::string& id) {
  if (id.find('@') != std::string::npos)
    throw std::invalid_argument("id '" + id + "' may not contain '@'");
}
}  // namespace detail

inline std::string level_id(const std::string& base, long long level) {
  return base + "@" + std::to_string(level);
}

/// Splits "u@3" into ("u", 3).
inline std::pair<std::string, long long> split_level_id(const std::string& id) {
  auto pos = id.rfind('@');
  if (pos == std::string::npos || pos + 1 == id.size())
    throw std::invalid_argument("expected '<id>@<level>', got '" + id + "'");
  return {id.substr(0, pos), std::stoll(id.substr(pos + 1))};
}

/// A finite window of the covering graph: vertices v@n for lo <= n <= hi and
/// edges e@n with source s(e)@n and target r(e)@(n - w(e)) whenever both
/// levels lie in the window.
struct CoverWindow {
  Graph base;
  long long lo = 0;
  long long hi = 0;
  Graph graph;

  /// True when every window vertex carries either none or all of its lifted
  /// out-edges.  With unit weights only the bottom row loses edges, so windows
  /// are always clean; mixed weights can truncate a vertex part-way, and the
  /// isomorphism checks refuse such windows.
  bool ck2_clean() const {
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      if (graph.out(v).empty()) continue;
      auto [bv, n] = split_level_id(graph.vertex(v));
      if (graph.out(v).size() != base.out(base.vertex_index(bv)).size()) return false;
    }
    return true;
  }
};

inline CoverWindow covering_window(const Graph& g, long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("covering_window: lo > hi");
  for (const auto& v : g.vertices()) detail::check_plain_id(v);
  for (const auto& e : g.edges()) detail::check_plain_id(e.id);
  std::vector<std::string> vs;
  std::vector<Edge> es;
  for (const auto& v : g.vertices())
    for (long long n = lo; n <= hi; ++n) vs.push_back(level_id(v, n));
  for (const auto& e : g.edges())
    for (long long n = lo; n <= hi; ++n) {
      long long m = n - e.weight;
      if (m < lo || m > hi) continue;
      es.push_back({level_id(e.id, n), level_id(e.src, n), level_id(e.tgt, m), e.weight});
    }
  return CoverWindow{g, lo, hi, Graph(std::move(vs), std::move(es))};
}

/// Restriction of a window to a sub-range of levels.
inline CoverWindow restrict_window(const CoverWindow& w, long long lo, long long hi) {
  if (lo > hi || lo < w.lo || hi > w.hi)
    throw std::invalid_argument("restrict_window: bad sub-range");
  return covering_window(w.base, lo, hi);
}

/// Smallest superset of S that is hereditary (s(e) in H => r(e) in H) and
/// saturated (regular v with all ranges of its out-edges in H => v in H).
inline std::set<std::string> hereditary_saturated_closure(const Graph& g,
                                                          const std::set<std::string>& s) {
  std::vector<bool> in(g.vertex_count(), false);
  for (const auto& v : s) in[g.vertex_index(v)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (in[g.src_index(e)] && !in[g.tgt_index(e)]) {
        in[g.tgt_index(e)] = true;
        changed = true;
      }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (in[v] || !g.is_regular(v)) continue;
      bool all = true;
      for (std::size_t e : g.out(v))
        if (!in[g.tgt_index(e)]) { all = false; break; }
      if (all) {
        in[v] = true;
        changed = true;
      }
    }
  }
  std::set<std::string> h;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (in[v]) h.insert(g.vertex(v));
  return h;
}

inline bool is_hereditary_saturated(const Graph& g, const std::set<std::string>& h) {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (h.count(g.edge(e).src) && !h.count(g.edge(e).tgt)) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_regular(v) || h.count(g.vertex(v))) continue;
    bool all = true;
    for (std::size_t e : g.out(v))
      if (!h.count(g.edge(e).tgt)) { all = false; break; }
    if (all) return false;
  }
  return true;
}

/// All hereditary saturated subsets, ordered by (size, lexicographic) -- a
/// linear extension of inclusion.  They form a lattice under intersection and
/// closure-of-union.
inline std::vector<std::set<std::string>> enumerate_hereditary_saturated(
    const Graph& g, std::size_t bound = 16) {
  std::size_t n = g.vertex_count();
  if (n > bound)
    throw std::invalid_argument("enumerate_hereditary_saturated: vertex bound exceeded");
  std::vector<std::set<std::string>> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::set<std::string> h;
    for (std::size_t v = 0; v < n; ++v)
      if (mask & (1ull << v)) h.insert(g.vertex(v));
    if (is_hereditary_saturated(g, h)) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace leavitt

#endif
