#ifndef LEAVITT_GRADED_MONOID_HPP
#define LEAVITT_GRADED_MONOID_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "linalg.hpp"
#include "monoid.hpp"

namespace leavitt {

/// Element of the graded monoid M_E^gr: a finitely supported natural-number
/// vector over generators (vertex, level).  No stored zeros.
using GradedElement = std::map<std::pair<std::string, long long>, long long>;

/// Integer combinations of the same generators; used for K0^gr differences.
using GradedZMap = GradedElement;

inline GradedElement graded_add(const GradedElement& a, const GradedElement& b) {
  GradedElement out = a;
  for (const auto& [k, c] : b) {
    out[k] += c;
    if (out[k] == 0) out.erase(k);
  }
  return out;
}

inline void validate_graded_element(const Graph& g, const GradedElement& x) {
  for (const auto& [k, c] : x) {
    if (!g.has_vertex(k.first)) throw std::invalid_argument("unknown vertex: " + k.first);
    if (c < 0) throw std::invalid_argument("negative multiplicity");
  }
}

/// Replace one a_v(n) by sum_e a_{r(e)}(n - w(e)) over e in s^-1(v).
inline GradedElement gstep(const Graph& g, const GradedElement& x, const std::string& v,
                           long long n) {
  validate_graded_element(g, x);
  auto it = x.find({v, n});
  if (it == x.end() || it->second < 1)
    throw std::invalid_argument("gstep: generator absent");
  std::size_t vi = g.vertex_index(v);
  if (!g.is_regular(vi)) throw std::invalid_argument("gstep: " + v + " is a sink");
  GradedElement out = x;
  if (--out[{v, n}] == 0) out.erase({v, n});
  for (std::size_t e : g.out(vi)) out[{g.edge(e).tgt, n - g.edge(e).weight}] += 1;
  return out;
}

/// The Z-action: relabel every level by +m.  A monoid automorphism.
inline GradedElement shift_action(long long m, const GradedElement& x) {
  GradedElement out;
  for (const auto& [k, c] : x) out[{k.first, k.second + m}] = c;
  return out;
}

/// Forget levels: the canonical surjection onto M_E.
inline MonoidElement project(const GradedElement& x) {
  MonoidElement out;
  for (const auto& [k, c] : x) out[k.first] += c;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

namespace detail {

inline void require_unit_weights(const Graph& g, const char* who) {
  if (!g.all_unit_weights())
    throw std::invalid_argument(std::string(who) +
                                ": requires unit weights (route other gradings "
                                "through the covering construction)");
}

// Descend every regular generator above `floor` by one level repeatedly.
// Linear, so valid for integer coefficients too.  Unit weights only: each
// step moves mass down exactly one level, so generators land exactly on the
// floor; sink generators freeze where they are created.
inline GradedZMap floor_zmap(const Graph& g, GradedZMap x, long long floor) {
  require_unit_weights(g, "floor_form");
  while (true) {
    // highest level holding a regular generator above the floor
    std::optional<long long> top;
    for (const auto& [k, c] : x)
      if (k.second > floor && g.is_regular(g.vertex_index(k.first)))
        if (!top || k.second > *top) top = k.second;
    if (!top) return x;
    GradedZMap next;
    for (const auto& [k, c] : x) {
      if (k.second == *top && g.is_regular(g.vertex_index(k.first))) {
        for (std::size_t e : g.out(g.vertex_index(k.first))) {
          auto key = std::make_pair(g.edge(e).tgt, *top - 1);
          next[key] += c;
          if (next[key] == 0) next.erase(key);
        }
      } else {
        next[k] += c;
        if (next[k] == 0) next.erase(k);
      }
    }
    x = std::move(next);
  }
}

// Regular/sink split of the graph with the descent matrices:
//   A[i][j] = #edges from regular j to regular i   (one descent step)
//   D[s][j] = #edges from regular j to sink s      (one step's emission)
struct GradedContext {
  std::vector<std::size_t> regs, sinks;
  std::map<std::size_t, std::size_t> reg_pos, sink_pos;
  ZMat descent;   // R x R
  ZMat emission;  // S x R
  std::size_t stabilization;

  explicit GradedContext(const Graph& g) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      (g.is_regular(v) ? regs : sinks).push_back(v);
    for (std::size_t i = 0; i < regs.size(); ++i) reg_pos[regs[i]] = i;
    for (std::size_t i = 0; i < sinks.size(); ++i) sink_pos[sinks[i]] = i;
    descent = ZMat(regs.size(), regs.size());
    emission = ZMat(sinks.size(), regs.size());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      std::size_t s = g.src_index(e), t = g.tgt_index(e);
      if (g.is_regular(t))
        descent(reg_pos.at(t), reg_pos.at(s)) += 1;
      else
        emission(sink_pos.at(t), reg_pos.at(s)) += 1;
    }
    stabilization = kernel_stabilization_index(descent);
  }
};

// Decides whether an integer combination of graded generators rewrites to
// zero: floor it, require all frozen sink entries to vanish, then descend the
// regular part through the stabilized kernel chain checking that every sink
// emission along the way vanishes as well.
inline bool zmap_is_null(const Graph& g, const GradedContext& ctx, const GradedZMap& x) {
  if (x.empty()) return true;
  long long lo = x.begin()->first.second;
  for (const auto& [k, c] : x) lo = std::min(lo, k.second);
  GradedZMap floored = floor_zmap(g, x, lo);
  std::vector<Int> d(ctx.regs.size(), Int(0));
  for (const auto& [k, c] : floored) {
    std::size_t vi = g.vertex_index(k.first);
    if (g.is_regular(vi)) {
      d[ctx.reg_pos.at(vi)] = c;  // all regular generators sit at level lo
    } else if (c != 0) {
      return false;  // frozen sink generator with nonzero multiplicity
    }
  }
  for (std::size_t j = 0; j <= ctx.stabilization; ++j) {
    if (is_zero(d)) return true;
    if (!is_zero(ctx.emission.apply(d))) return false;
    d = ctx.descent.apply(d);
  }
  return false;
}

}  // namespace detail

/// Maximal rewrite above the floor: every regular-vertex generator is pushed
/// down to level exactly L, sink generators freeze where created.  The
/// rewriting system has one rule per generator, so the result does not depend
/// on the order of gstep applications.
inline GradedElement floor_form(const Graph& g, const GradedElement& x, long long floor) {
  validate_graded_element(g, x);
  for (const auto& [k, c] : x)
    if (k.second < floor && g.is_regular(g.vertex_index(k.first)))
      throw std::invalid_argument("floor_form: regular generator below the floor");
  return detail::floor_zmap(g, x, floor);
}

/// Full equality decision in M_E^gr for unit weights.
inline bool gequal(const Graph& g, const GradedElement& x, const GradedElement& y) {
  detail::require_unit_weights(g, "gequal");
  validate_graded_element(g, x);
  validate_graded_element(g, y);
  if (x == y) return true;
  GradedZMap diff = x;
  for (const auto& [k, c] : y) {
    diff[k] -= c;
    if (diff[k] == 0) diff.erase(k);
  }
  detail::GradedContext ctx(g);
  return detail::zmap_is_null(g, ctx, diff);
}

/// The implication gequal(x+z, y+z) => gequal(x, y) on one triple.
/// Cancellativity of the graded monoid says this is always true.
inline bool cancellation_check(const Graph& g, const GradedElement& x,
                               const GradedElement& y, const GradedElement& z) {
  bool lhs = gequal(g, graded_add(x, z), graded_add(y, z));
  return !lhs || gequal(g, x, y);
}

/// Depth-bounded BFS semi-decision over the graded rewriting relation; the
/// fallback for non-unit weights where the kernel shortcut is not claimed.
inline EqResult graded_equal_bfs(const Graph& g, const GradedElement& x,
                                 const GradedElement& y, std::size_t depth = 8,
                                 std::size_t node_budget = 100000) {
  validate_graded_element(g, x);
  validate_graded_element(g, y);
  if (x == y) return EqResult::Yes;
  if (x.empty() != y.empty()) return EqResult::No;
  if (hereditary_saturated_closure(g, support(project(x))) !=
      hereditary_saturated_closure(g, support(project(y))))
    return EqResult::No;
  std::set<GradedElement> seen_x{x}, seen_y{y};
  std::vector<GradedElement> fx{x}, fy{y};
  std::size_t nodes = 2;
  auto expand = [&](std::vector<GradedElement>& frontier, std::set<GradedElement>& seen,
                    const std::set<GradedElement>& other) -> std::optional<bool> {
    std::vector<GradedElement> next;
    for (const auto& cur : frontier)
      for (const auto& [k, c] : cur) {
        if (!g.is_regular(g.vertex_index(k.first))) continue;
        GradedElement succ = gstep(g, cur, k.first, k.second);
        if (!seen.insert(succ).second) continue;
        if (other.count(succ)) return true;
        if (++nodes > node_budget) return std::nullopt;
        next.push_back(std::move(succ));
      }
    frontier = std::move(next);
    return false;
  };
  for (std::size_t d = 0; d < depth; ++d) {
    auto rx = expand(fx, seen_x, seen_y);
    if (!rx) return EqResult::Unknown;
    if (*rx) return EqResult::Yes;
    auto ry = expand(fy, seen_y, seen_x);
    if (!ry) return EqResult::Unknown;
    if (*ry) return EqResult::Yes;
    if (fx.empty() && fy.empty()) break;
  }
  return EqResult::Unknown;
}

/// The Z-closed order-ideals of M_E^gr are exactly the preimages under the
/// projection of the order-ideals of M_E, so they are again indexed by the
/// hereditary saturated subsets.
struct GradedIdealLattice {
  std::vector<std::set<std::string>> ideals;
  std::size_t size() const { return ideals.size(); }
};

inline GradedIdealLattice graded_ideal_lattice(const Graph& g, std::size_t bound = 16) {
  return GradedIdealLattice{enumerate_hereditary_saturated(g, bound)};
}

inline bool graded_ideal_contains(const Graph&, const std::set<std::string>& h,
                                  const GradedElement& x) {
  for (const auto& [k, c] : x)
    if (!h.count(k.first)) return false;
  return true;
}

// ---- graded K0 -------------------------------------------------------------

/// A class of K0^gr presented as (level, integer vector over the vertices).
struct Kgr0Class {
  long long level = 0;
  std::map<std::string, long long> vec;  // integer multiplicities, may be negative
};

/// Presentation of K0^gr(L_Q(E)) for unit weights: group completion data with
/// a decidable equality (the kernel machinery on differences), the
/// Z[x,x^-1]-action by level shift, and a depth-bounded positivity test.
class Kgr0 {
 public:
  explicit Kgr0(const Graph& g) : graph_(g), ctx_(g) {
    detail::require_unit_weights(g, "kgr0");
  }

  const std::vector<std::size_t>& regular_indices() const { return ctx_.regs; }
  const std::vector<std::size_t>& sink_indices() const { return ctx_.sinks; }
  const ZMat& descent_matrix() const { return ctx_.descent; }
  const ZMat& emission_matrix() const { return ctx_.emission; }
  std::size_t stabilization_index() const { return ctx_.stabilization; }

  GradedZMap to_zmap(const Kgr0Class& c) const {
    GradedZMap m;
    for (const auto& [v, k] : c.vec) {
      if (!graph_.has_vertex(v)) throw std::invalid_argument("unknown vertex: " + v);
      if (k != 0) m[{v, c.level}] = k;
    }
    return m;
  }

  bool equal(const Kgr0Class& a, const Kgr0Class& b) const {
    GradedZMap diff = to_zmap(a);
    for (const auto& [k, c] : to_zmap(b)) {
      diff[k] -= c;
      if (diff[k] == 0) diff.erase(k);
    }
    return detail::zmap_is_null(graph_, ctx_, diff);
  }

  static Kgr0Class shift(long long m, const Kgr0Class& c) {
    return Kgr0Class{c.level + m, c.vec};
  }

  /// Positive iff some bounded descent exhibits an honest monoid element:
  /// Yes when, after j <= depth full descents, every entry of the rewritten
  /// profile is nonnegative.  No is only "not found up to depth".
  EqResult positive(const Kgr0Class& c, std::size_t depth = 8) const {
    GradedZMap m = to_zmap(c);
    if (m.empty()) return EqResult::Yes;
    long long lo = m.begin()->first.second;
    for (const auto& [k, v] : m) lo = std::min(lo, k.second);
    for (std::size_t j = 0; j <= depth; ++j) {
      GradedZMap f = detail::floor_zmap(graph_, m, lo - static_cast<long long>(j));
      bool ok = true;
      for (const auto& [k, v] : f)
        if (v < 0) ok = false;
      if (ok) return EqResult::Yes;
    }
    return EqResult::Unknown;
  }

 private:
  Graph graph_;
  detail::GradedContext ctx_;
};

}  // namespace leavitt

#endif
