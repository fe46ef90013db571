#ifndef LEAVITT_MONOID_HPP
#define LEAVITT_MONOID_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace leavitt {

/// Element of the graph monoid M_E: a finitely supported natural-number
/// vector over the vertices.  Zero coefficients are never stored.
using MonoidElement = std::map<std::string, long long>;

inline MonoidElement monoid_add(const MonoidElement& a, const MonoidElement& b) {
  MonoidElement out = a;
  for (const auto& [v, c] : b) {
    out[v] += c;
    if (out[v] == 0) out.erase(v);
  }
  return out;
}

inline void validate_monoid_element(const Graph& g, const MonoidElement& x) {
  for (const auto& [v, c] : x) {
    if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex: " + v);
    if (c < 0) throw std::invalid_argument("negative multiplicity at " + v);
  }
}

/// One application of ->1 at v: decrement v, add r(e) for every e in s^-1(v).
inline MonoidElement step(const Graph& g, const MonoidElement& x, const std::string& v) {
  validate_monoid_element(g, x);
  auto it = x.find(v);
  if (it == x.end() || it->second < 1)
    throw std::invalid_argument("step: generator " + v + " absent");
  std::size_t vi = g.vertex_index(v);
  if (!g.is_regular(vi)) throw std::invalid_argument("step: " + v + " is a sink");
  MonoidElement out = x;
  if (--out[v] == 0) out.erase(v);
  for (std::size_t e : g.out(vi)) out[g.edge(e).tgt] += 1;
  return out;
}

enum class EqResult { Yes, No, Unknown };

inline std::set<std::string> support(const MonoidElement& x) {
  std::set<std::string> s;
  for (const auto& [v, c] : x) s.insert(v);
  return s;
}

namespace detail {

// All one-step rewrites of x.
inline std::vector<MonoidElement> monoid_successors(const Graph& g, const MonoidElement& x) {
  std::vector<MonoidElement> out;
  for (const auto& [v, c] : x)
    if (g.is_regular(g.vertex_index(v))) out.push_back(step(g, x, v));
  return out;
}

}  // namespace detail

inline long long total_mass(const MonoidElement& x) {
  long long t = 0;
  for (const auto& [v, c] : x) t += c;
  return t;
}

/// Three-valued equality in M_E.
///
/// Yes: the BFS frontiers of -> from x and from y meet within `depth` steps.
/// No:  a rewrite invariant separates the classes.  Rewriting preserves the
///      hereditary saturated closure of the support (mass only moves along
///      edges, and a fully rewritten vertex is recovered by saturation), and
///      it preserves nonemptiness, so differing closures certify No.
/// Unknown: honest exhaustion of depth, node budget, or coefficient cap.
inline EqResult monoid_equal(const Graph& g, const MonoidElement& x, const MonoidElement& y,
                             std::size_t depth = 8, std::size_t node_budget = 200000,
                             long long coeff_cap = 64) {
  validate_monoid_element(g, x);
  validate_monoid_element(g, y);
  if (x == y) return EqResult::Yes;
  if (hereditary_saturated_closure(g, support(x)) !=
      hereditary_saturated_closure(g, support(y)))
    return EqResult::No;
  if (x.empty() != y.empty()) return EqResult::No;  // nonzero classes never meet 0

  std::set<MonoidElement> seen_x{x}, seen_y{y};
  std::vector<MonoidElement> frontier_x{x}, frontier_y{y};
  std::size_t nodes = 2;
  auto expand = [&](std::vector<MonoidElement>& frontier, std::set<MonoidElement>& seen,
                    const std::set<MonoidElement>& other) -> std::optional<bool> {
    std::vector<MonoidElement> next;
    for (const auto& cur : frontier)
      for (auto& succ : detail::monoid_successors(g, cur)) {
        if (total_mass(succ) > coeff_cap) continue;  // pruned; never yields No
        if (!seen.insert(succ).second) continue;
        if (other.count(succ)) return true;
        if (++nodes > node_budget) return std::nullopt;
        next.push_back(std::move(succ));
      }
    frontier = std::move(next);
    return false;
  };
  for (std::size_t d = 0; d < depth; ++d) {
    auto rx = expand(frontier_x, seen_x, seen_y);
    if (!rx) return EqResult::Unknown;
    if (*rx) return EqResult::Yes;
    auto ry = expand(frontier_y, seen_y, seen_x);
    if (!ry) return EqResult::Unknown;
    if (*ry) return EqResult::Yes;
    if (frontier_x.empty() && frontier_y.empty()) break;
  }
  return EqResult::Unknown;
}

/// M_E is cancellative iff no cycle in E has an exit.
inline bool is_cancellative(const Graph& g) { return no_cycle_has_exit(g); }

struct CancellationWitness {
  MonoidElement x;  // empty: the zero side
  MonoidElement y;  // r(p') plus the other side ranges collected along the cycle
  MonoidElement z;  // the cycle's base vertex
  std::size_t certify_depth = 0;
};

/// When some cycle p has an exit, walking p and expanding each cycle vertex
/// once yields s(p) -> s(p) + c with c != 0 collecting the ranges of all
/// non-cycle out-edges (the exit guarantees c != 0).  Then x = 0, y = c,
/// z = s(p) satisfy x + z ~ y + z while x = 0 is not ~ y != 0.
inline std::optional<CancellationWitness> cancellation_counterexample(const Graph& g) {
  for (const auto& cycle : simple_cycles(g)) {
    if (!cycle_has_exit(g, cycle)) continue;
    MonoidElement c;
    for (std::size_t ce : cycle) {
      std::size_t v = g.src_index(ce);
      for (std::size_t e : g.out(v))
        if (e != ce) c[g.edge(e).tgt] += 1;
    }
    CancellationWitness w;
    w.y = std::move(c);
    w.z = {{g.edge(cycle.front()).src, 1}};
    w.certify_depth = cycle.size();
    return w;
  }
  return std::nullopt;
}

/// Order-ideals of M_E, each represented by its generating hereditary
/// saturated vertex set; the lattice structure is inherited from graph-core.
struct OrderIdealLattice {
  std::vector<std::set<std::string>> ideals;  // ordered by (size, lex)

  std::size_t size() const { return ideals.size(); }
};

inline OrderIdealLattice order_ideals(const Graph& g, std::size_t bound = 16) {
  return OrderIdealLattice{enumerate_hereditary_saturated(g, bound)};
}

/// Membership of [x] in the order-ideal generated by H: every vertex the mass
/// of x can ever reach stays inside H, i.e. supp(x) is contained in H.
inline bool ideal_contains(const Graph&, const std::set<std::string>& h,
                           const MonoidElement& x) {
  for (const auto& [v, c] : x)
    if (!h.count(v)) return false;
  return true;
}

}  // namespace leavitt

#endif
