#ifndef LEAVITT_SMASH_HPP
#define LEAVITT_SMASH_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "linalg.hpp"
#include "lpa.hpp"
#include "rng.hpp"

namespace leavitt {

/// Element of the smash product L_Q(E) # Z: a finitely supported map from
/// integer indices to algebra elements, the value at beta being the
/// coefficient of p_beta.  The symbols p_beta are bookkeeping only; they are
/// not themselves elements of the (non-unital) ring.
class SmashElement {
 public:
  SmashElement() = default;
  explicit SmashElement(std::shared_ptr<const Graph> g) : graph_(std::move(g)) {}

  static SmashElement zero(std::shared_ptr<const Graph> g) {
    return SmashElement(std::move(g));
  }

  static SmashElement single(long long beta, const Element& a) {
    SmashElement out(a.graph());
    if (!a.is_zero()) out.parts_[beta] = a;
    return out;
  }

  const std::shared_ptr<const Graph>& graph() const { return graph_; }
  const std::map<long long, Element>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  void add_part(long long beta, const Element& a) {
    if (a.is_zero()) return;
    auto it = parts_.find(beta);
    if (it == parts_.end()) {
      parts_.emplace(beta, a);
      return;
    }
    it->second = it->second + a;
    if (it->second.is_zero()) parts_.erase(it);
  }

  bool same_graph(const SmashElement& o) const {
    if (graph_ == o.graph_) return true;
    return graph_ && o.graph_ && *graph_ == *o.graph_;
  }

  friend bool operator==(const SmashElement& a, const SmashElement& b) {
    if (a.parts_.empty() && b.parts_.empty()) return true;
    return a.same_graph(b) && a.parts_ == b.parts_;
  }

  friend SmashElement operator+(const SmashElement& a, const SmashElement& b) {
    if (!a.parts_.empty() && !b.parts_.empty() && !a.same_graph(b))
      throw std::invalid_argument("smash elements over mismatched graphs");
    SmashElement out(a.graph_ ? a.graph_ : b.graph_);
    out.parts_ = a.parts_;
    for (const auto& [beta, elem] : b.parts_) out.add_part(beta, elem);
    return out;
  }

  friend SmashElement operator-(const SmashElement& a, const SmashElement& b) {
    return a + (Rat(-1) * b);
  }

  friend SmashElement operator*(const Rat& c, const SmashElement& a) {
    SmashElement out(a.graph_);
    if (c == 0) return out;
    for (const auto& [beta, elem] : a.parts_) out.parts_[beta] = c * elem;
    return out;
  }

 private:
  std::shared_ptr<const Graph> graph_;
  std::map<long long, Element> parts_;
};

/// (r p_alpha)(s p_beta) = r s_{alpha-beta} p_beta, extended bilinearly.
inline SmashElement smash_mul(const SmashElement& x, const SmashElement& y) {
  if (!x.parts().empty() && !y.parts().empty() && !x.same_graph(y))
    throw std::invalid_argument("smash_mul: mismatched graphs");
  SmashElement out(x.graph() ? x.graph() : y.graph());
  for (const auto& [beta, s] : y.parts()) {
    auto comps = degree_decompose(s);
    for (const auto& [alpha, r] : x.parts()) {
      auto it = comps.find(alpha - beta);
      if (it == comps.end()) continue;
      out.add_part(beta, mul(r, it->second));
    }
  }
  return out;
}

/// The shift automorphism S^alpha: s p_beta -> s p_{beta+alpha}.
inline SmashElement shift(long long alpha, const SmashElement& x) {
  SmashElement out(x.graph());
  for (const auto& [beta, elem] : x.parts()) out.add_part(beta + alpha, elem);
  return out;
}

/// Degree of a nonzero homogeneous smash element: every stored part must be
/// homogeneous of the same degree.
inline std::optional<long long> smash_degree(const SmashElement& x) {
  std::optional<long long> d;
  for (const auto& [beta, elem] : x.parts()) {
    auto comps = degree_decompose(elem);
    if (comps.size() != 1) return std::nullopt;
    if (d && *d != comps.begin()->first) return std::nullopt;
    d = comps.begin()->first;
  }
  return d;
}

/// The degree-gamma homogeneous component (sum over all p-indices).
inline SmashElement smash_component(const SmashElement& x, long long gamma) {
  SmashElement out(x.graph());
  for (const auto& [beta, elem] : x.parts()) {
    auto comps = degree_decompose(elem);
    auto it = comps.find(gamma);
    if (it != comps.end()) out.add_part(beta, it->second);
  }
  return out;
}

inline std::string to_string(const SmashElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [beta, elem] : x.parts()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(elem) + ")p[" + std::to_string(beta) + "]";
  }
  return s;
}

/// The graded isomorphism phi' between the path algebra of a covering window
/// and the smash product of the base algebra, on generators:
///   v_beta -> v p_beta,  e_alpha -> e p_{alpha - w(e)},  (e_alpha)* -> e* p_alpha.
class CoveringIso {
 public:
  CoveringIso(std::shared_ptr<const Graph> base, long long lo, long long hi)
      : base_(std::move(base)),
        window_(covering_window(*base_, lo, hi)),
        window_graph_(std::make_shared<const Graph>(window_.graph)) {}

  const std::shared_ptr<const Graph>& base() const { return base_; }
  const std::shared_ptr<const Graph>& window_graph() const { return window_graph_; }
  const CoverWindow& window() const { return window_; }

  SmashElement image_vertex(const std::string& wid) const {
    if (!window_graph_->has_vertex(wid))
      throw std::invalid_argument("phi': vertex level outside window: " + wid);
    auto [v, n] = split_level_id(wid);
    return SmashElement::single(n, Element::vertex(base_, v));
  }

  SmashElement image_edge(const std::string& wid) const {
    if (!window_graph_->has_edge(wid))
      throw std::invalid_argument("phi': edge level outside window: " + wid);
    auto [e, n] = split_level_id(wid);
    return SmashElement::single(n - base_->edge(base_->edge_index(e)).weight,
                                Element::edge(base_, e));
  }

  SmashElement image_ghost(const std::string& wid) const {
    if (!window_graph_->has_edge(wid))
      throw std::invalid_argument("phi': edge level outside window: " + wid);
    auto [e, n] = split_level_id(wid);
    return SmashElement::single(n, Element::ghost(base_, e));
  }

  /// phi' of an element of L_Q(window), extended multiplicatively and
  /// linearly from the generator images.
  SmashElement apply(const Element& x) const {
    if (!x.is_zero() && !(x.graph() && *x.graph() == *window_graph_))
      throw std::invalid_argument("phi': element is not over this window");
    SmashElement out = SmashElement::zero(base_->vertex_count() ? base_ : base_);
    for (const auto& [m, c] : x.terms()) {
      SmashElement left = m.mu.trivial()
                              ? image_vertex(window_graph_->vertex(m.mu.start))
                              : image_edge(window_graph_->edge(m.mu.edges[0]).id);
      for (std::size_t i = 1; i < m.mu.edges.size(); ++i)
        left = smash_mul(left, image_edge(window_graph_->edge(m.mu.edges[i]).id));
      SmashElement right = m.nu.trivial()
                               ? image_vertex(window_graph_->vertex(m.nu.start))
                               : image_ghost(
                                     window_graph_->edge(m.nu.edges.back()).id);
      for (std::size_t i = m.nu.edges.size(); i-- > 1;)
        right = smash_mul(right, image_ghost(window_graph_->edge(m.nu.edges[i - 1]).id));
      out = out + c * smash_mul(left, right);
    }
    return out;
  }

 private:
  std::shared_ptr<const Graph> base_;
  CoverWindow window_;
  std::shared_ptr<const Graph> window_graph_;
};

struct IsoRelationReport {
  std::size_t checked = 0;
  std::size_t skipped_partial_ck2 = 0;  // vertices with a truncated edge set
  std::size_t failures = 0;
};

/// Checks that phi' annihilates every defining relation of the covering
/// algebra that is fully instantiated inside the window: (0) orthogonal
/// vertex idempotents, (1)-(2) unit actions on edges and ghosts, (3) ghost
/// contraction, (4) CK2 at every window vertex carrying its complete lifted
/// edge set.
inline IsoRelationReport check_covering_relations(const CoveringIso& iso) {
  IsoRelationReport rep;
  const Graph& w = *iso.window_graph();
  auto expect = [&](const SmashElement& got, const SmashElement& want) {
    ++rep.checked;
    if (!(got == want)) ++rep.failures;
  };
  for (std::size_t a = 0; a < w.vertex_count(); ++a)
    for (std::size_t b = 0; b < w.vertex_count(); ++b) {
      SmashElement va = iso.image_vertex(w.vertex(a)), vb = iso.image_vertex(w.vertex(b));
      expect(smash_mul(va, vb), a == b ? vb : SmashElement::zero(iso.base()));
    }
  for (const Edge& ed : w.edges()) {
    SmashElement e = iso.image_edge(ed.id), es = iso.image_ghost(ed.id);
    SmashElement s = iso.image_vertex(ed.src), r = iso.image_vertex(ed.tgt);
    expect(smash_mul(s, e), e);
    expect(smash_mul(e, r), e);
    expect(smash_mul(r, es), es);
    expect(smash_mul(es, s), es);
    for (const Edge& fd : w.edges())
      expect(smash_mul(es, iso.image_edge(fd.id)),
             ed.id == fd.id ? r : SmashElement::zero(iso.base()));
  }
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    auto [bv, n] = split_level_id(w.vertex(v));
    std::size_t full = iso.base()->out(iso.base()->vertex_index(bv)).size();
    if (w.out(v).size() != full) {
      if (!w.out(v).empty()) ++rep.skipped_partial_ck2;
      continue;  // sinks have no CK2; partial vertices are not instantiated
    }
    SmashElement sum = SmashElement::zero(iso.base());
    for (std::size_t e : w.out(v)) {
      const std::string& id = w.edge(e).id;
      sum = sum + smash_mul(iso.image_edge(id), iso.image_ghost(id));
    }
    expect(sum, iso.image_vertex(w.vertex(v)));
  }
  return rep;
}

struct ProductCheckReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
};

/// Samples pairs of window monomials and checks multiplicativity of phi'.
/// Requires a CK2-clean window: reductions in the window algebra must only
/// use relations that hold in the full covering algebra.
inline ProductCheckReport check_product_preservation(const CoveringIso& iso,
                                                     std::size_t samples,
                                                     std::uint64_t seed = 0,
                                                     std::size_t maxlen = 3) {
  if (!iso.window().ck2_clean())
    throw std::invalid_argument(
        "check_product_preservation: window truncates an edge set; widen the window");
  const auto& wg = iso.window_graph();
  Rng rng(seed);
  auto random_path_into = [&](std::size_t v, std::size_t len) -> Path {
    std::size_t at = v;
    std::vector<std::size_t> edges;  // collected back-to-front
    for (std::size_t i = 0; i < len; ++i) {
      const auto& in = wg->in(at);
      if (in.empty()) break;
      std::size_t e = in[rng.below(in.size())];
      edges.push_back(e);
      at = wg->src_index(e);
    }
    return Path{at, {edges.rbegin(), edges.rend()}};
  };
  auto random_monomial = [&]() -> Element {
    Path mu = random_path_into(rng.below(wg->vertex_count()), rng.below(maxlen + 1));
    Path nu = random_path_into(path_end(*wg, mu), rng.below(maxlen + 1));
    return Element::monomial(wg, mu, nu);
  };
  ProductCheckReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    Element x = random_monomial(), y = random_monomial();
    ++rep.pairs;
    if (!(iso.apply(mul(x, y)) == smash_mul(iso.apply(x), iso.apply(y)))) ++rep.failures;
  }
  return rep;
}

// ---- matricial block embedding ---------------------------------------------

/// The image of a homogeneous a p_m inside a finite corner of the matricial
/// block: a square matrix over all paths of length <= N - m.  Row paths are
/// lifted to start at level m + deg(a), column paths at level m, and every
/// nonzero entry pairs paths with a common range; entries are produced by
/// expanding each monomial mu nu* with all path extensions down to the common
/// end level.
struct BlockEmbedding {
  std::shared_ptr<const Graph> graph;
  long long anchor = 0;  // m
  long long reach = 0;   // N - m
  long long deg = 0;
  std::vector<Path> index;
  QMat mat;
};

namespace detail {

inline std::map<Path, std::size_t> index_positions(const std::vector<Path>& index) {
  std::map<Path, std::size_t> pos;
  for (std::size_t i = 0; i < index.size(); ++i) pos[index[i]] = i;
  return pos;
}

}  // namespace detail

inline BlockEmbedding block_embed(const Element& a, long long m, long long big_n) {
  const auto& gp = a.graph();
  if (!gp) throw std::invalid_argument("block_embed: element has no graph");
  const Graph& g = *gp;
  if (!g.all_unit_weights())
    throw std::invalid_argument("block_embed: requires unit weights");
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) throw std::invalid_argument("block_embed: sink present");
  long long reach = big_n - m;
  if (reach < 0) throw std::invalid_argument("block_embed: N too small");
  long long d = 0;
  if (!a.is_zero()) {
    d = degree(a);  // throws unless homogeneous
    for (const auto& [mono, c] : a.terms())
      if (static_cast<long long>(mono.mu.length()) > reach ||
          static_cast<long long>(mono.nu.length()) > reach)
        throw std::invalid_argument("block_embed: N too small");
  }
  BlockEmbedding out;
  out.graph = gp;
  out.anchor = m;
  out.reach = reach;
  out.deg = d;
  out.index = all_paths_up_to(g, static_cast<std::size_t>(reach));
  auto pos = detail::index_positions(out.index);
  out.mat = QMat(out.index.size(), out.index.size());
  // uniform column length: ghosts padded to Q, rows to Q + d
  long long q = d >= 0 ? reach - d : reach;
  for (const auto& [mono, c] : a.terms()) {
    std::size_t extend = static_cast<std::size_t>(q - mono.nu.length());
    for (const Path& ext : paths_from(g, path_end(g, mono.mu), extend)) {
      Path row = concat(g, mono.mu, ext);
      Path col = concat(g, mono.nu, ext);
      out.mat(pos.at(row), pos.at(col)) += c;
    }
  }
  return out;
}

/// Reads a matrix over the path index back into the algebra:
/// sum of entries M[i][j] * index[i] index[j]*.
inline Element element_from_block(const std::shared_ptr<const Graph>& gp,
                                  const std::vector<Path>& index, const QMat& mat) {
  const Graph& g = *gp;
  Element out = Element::zero(gp);
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (mat(i, j) == 0) continue;
      if (path_end(g, index[i]) != path_end(g, index[j]))
        throw std::logic_error("block matrix pairs paths with different ranges");
      out = out + Element::monomial(gp, index[i], index[j], mat(i, j));
    }
  return out;
}

inline Element unembed(const BlockEmbedding& be) {
  return element_from_block(be.graph, be.index, be.mat);
}

/// For homogeneous a over a finite graph with no sinks, returns b with
/// a b a = a and deg(b) = -deg(a): embed a p_0 into a matricial corner, take
/// the exact generalized inverse there, and read it back.  The identity and
/// the degree are verified on every call.
inline Element graded_regular_witness(const Element& a) {
  if (a.is_zero()) return a;
  long long d = degree(a);
  long long reach = 0;
  for (const auto& [mono, c] : a.terms())
    reach = std::max({reach, static_cast<long long>(mono.mu.length()),
                      static_cast<long long>(mono.nu.length())});
  BlockEmbedding be = block_embed(a, 0, reach);
  QMat x = generalized_inverse(be.mat);
  Element b = element_from_block(be.graph, be.index, x);
  if (!(mul(mul(a, b), a) == a))
    throw std::logic_error("graded_regular_witness: a b a != a");
  if (!b.is_zero() && !(is_homogeneous(b) && degree(b) == -d))
    throw std::logic_error("graded_regular_witness: wrong witness degree");
  return b;
}

}  // namespace leavitt

#endif
