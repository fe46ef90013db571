#ifndef LEAVITT_LPA_HPP
#define LEAVITT_LPA_HPP

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace leavitt {

/// A finite path: an anchor vertex plus a composable edge sequence
/// (r(a_i) = s(a_{i+1})).  The empty path at a vertex is the vertex itself.
/// Edge indices sort like edge ids, so index order is id order.
struct Path {
  std::size_t start = 0;               // vertex index
  std::vector<std::size_t> edges;      // edge indices

  std::size_t length() const { return edges.size(); }
  bool trivial() const { return edges.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

inline Path vertex_path(const Graph&, std::size_t v) { return Path{v, {}}; }

inline Path edge_path(const Graph& g, std::size_t e) {
  return Path{g.src_index(e), {e}};
}

inline std::size_t path_end(const Graph& g, const Path& p) {
  return p.edges.empty() ? p.start : g.tgt_index(p.edges.back());
}

inline bool path_valid(const Graph& g, const Path& p) {
  if (p.start >= g.vertex_count()) return false;
  std::size_t at = p.start;
  for (std::size_t e : p.edges) {
    if (e >= g.edge_count() || g.src_index(e) != at) return false;
    at = g.tgt_index(e);
  }
  return true;
}

inline Path concat(const Graph& g, const Path& a, const Path& b) {
  if (path_end(g, a) != b.start)
    throw std::invalid_argument("concat: paths not composable");
  Path p = a;
  p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
  return p;
}

inline long long path_weight(const Graph& g, const Path& p) {
  long long w = 0;
  for (std::size_t e : p.edges) w += g.edge(e).weight;
  return w;
}

inline std::string path_to_string(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.vertex(p.start);
  std::string s;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += '.';
    s += g.edge(p.edges[i]).id;
  }
  return s;
}

/// All paths of the given exact length starting at v.
inline std::vector<Path> paths_from(const Graph& g, std::size_t v, std::size_t len) {
  std::vector<Path> out;
  Path cur = vertex_path(g, v);
  auto rec = [&](auto&& self, std::size_t at, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t e : g.out(at)) {
      cur.edges.push_back(e);
      self(self, g.tgt_index(e), remaining - 1);
      cur.edges.pop_back();
    }
  };
  rec(rec, v, len);
  return out;
}

/// All paths of the given exact length ending at v.
inline std::vector<Path> paths_into(const Graph& g, std::size_t v, std::size_t len) {
  std::vector<Path> out;
  std::vector<std::size_t> rev;  // edges collected back-to-front
  auto rec = [&](auto&& self, std::size_t at, std::size_t remaining) -> void {
    if (remaining == 0) {
      Path p{at, {rev.rbegin(), rev.rend()}};
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t e : g.in(at)) {
      rev.push_back(e);
      self(self, g.src_index(e), remaining - 1);
      rev.pop_back();
    }
  };
  rec(rec, v, len);
  return out;
}

/// All paths with length <= maxlen, in canonical order.
inline std::vector<Path> all_paths_up_to(const Graph& g, std::size_t maxlen) {
  std::vector<Path> out;
  for (std::size_t len = 0; len <= maxlen; ++len)
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      for (auto& p : paths_from(g, v, len)) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.start < b.start;
  });
  return out;
}

/// A basis monomial mu nu* with r(mu) = r(nu).  Normal form: mu and nu do not
/// both end in the same special edge (the largest-id out-edge of its source).
struct Monomial {
  Path mu;
  Path nu;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // canonical term order: (|mu|, |nu|, mu ids, nu ids, anchors)
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.mu.length() != b.mu.length()) return a.mu.length() < b.mu.length();
    if (a.nu.length() != b.nu.length()) return a.nu.length() < b.nu.length();
    if (a.mu.edges != b.mu.edges) return a.mu.edges < b.mu.edges;
    if (a.nu.edges != b.nu.edges) return a.nu.edges < b.nu.edges;
    if (a.mu.start != b.mu.start) return a.mu.start < b.mu.start;
    return a.nu.start < b.nu.start;
  }
};

inline long long monomial_degree(const Graph& g, const Monomial& m) {
  return path_weight(g, m.mu) - path_weight(g, m.nu);
}

namespace detail {

inline bool monomial_valid(const Graph& g, const Monomial& m) {
  return path_valid(g, m.mu) && path_valid(g, m.nu) &&
         path_end(g, m.mu) == path_end(g, m.nu);
}

using TermMap = std::map<Monomial, Rat>;

inline void accumulate(TermMap& out, const Monomial& m, const Rat& c) {
  auto it = out.find(m);
  if (it == out.end()) {
    if (c != 0) out.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) out.erase(it);
}

// Insert c * (mu nu*) after rewriting to normal form.  The single rewrite is
//   mu0 sp (nu0 sp)*  ->  mu0 nu0* - sum_{e in s^-1(v), e != sp} mu0 e (nu0 e)*
// where sp = sp(v) is the special edge; the subtracted terms are already
// normal at the tail, the shortened head may rewrite again.
inline void add_reduced(TermMap& out, const Graph& g, Monomial m, Rat c) {
  if (c == 0) return;
  while (!m.mu.trivial() && !m.nu.trivial() && m.mu.edges.back() == m.nu.edges.back() &&
         m.mu.edges.back() == g.special_edge(g.src_index(m.mu.edges.back()))) {
    std::size_t sp = m.mu.edges.back();
    std::size_t v = g.src_index(sp);
    m.mu.edges.pop_back();
    m.nu.edges.pop_back();
    for (std::size_t e : g.out(v)) {
      if (e == sp) continue;
      Monomial ext = m;
      ext.mu.edges.push_back(e);
      ext.nu.edges.push_back(e);
      accumulate(out, ext, -c);
    }
  }
  accumulate(out, m, c);
}

}  // namespace detail

/// An element of the Leavitt path algebra L_Q(E): a rational combination of
/// normal-form monomials mu nu*.  Immutable value; all operations are pure.
class Element {
 public:
  using Terms = detail::TermMap;

  Element() = default;
  explicit Element(std::shared_ptr<const Graph> g) : graph_(std::move(g)) {}

  static Element zero(std::shared_ptr<const Graph> g) { return Element(std::move(g)); }

  static Element vertex(std::shared_ptr<const Graph> g, const std::string& v) {
    Element e(g);
    std::size_t vi = g->vertex_index(v);
    e.terms_[{vertex_path(*g, vi), vertex_path(*g, vi)}] = 1;
    return e;
  }

  static Element edge(std::shared_ptr<const Graph> g, const std::string& id) {
    Element out(g);
    std::size_t e = g->edge_index(id);
    out.terms_[{edge_path(*g, e), vertex_path(*g, g->tgt_index(e))}] = 1;
    return out;
  }

  static Element ghost(std::shared_ptr<const Graph> g, const std::string& id) {
    Element out(g);
    std::size_t e = g->edge_index(id);
    out.terms_[{vertex_path(*g, g->tgt_index(e)), edge_path(*g, e)}] = 1;
    return out;
  }

  /// c * mu nu*, rewritten to normal form.
  static Element monomial(std::shared_ptr<const Graph> g, const Path& mu, const Path& nu,
                          const Rat& c = 1) {
    Element out(g);
    Monomial m{mu, nu};
    if (!detail::monomial_valid(*g, m))
      throw std::invalid_argument("monomial: invalid or non-matching paths");
    detail::add_reduced(out.terms_, *g, std::move(m), c);
    return out;
  }

  const std::shared_ptr<const Graph>& graph() const { return graph_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.same_graph(b) && a.terms_ == b.terms_;
  }

  bool same_graph(const Element& o) const {
    if (graph_ == o.graph_) return true;
    return graph_ && o.graph_ && *graph_ == *o.graph_;
  }

  friend Element operator+(const Element& a, const Element& b) {
    Element out = a.pick_graph(b);
    out.terms_ = a.terms_;
    a.require_compatible(b);
    for (const auto& [m, c] : b.terms_) detail::accumulate(out.terms_, m, c);
    return out;
  }

  friend Element operator-(const Element& a, const Element& b) {
    Element out = a.pick_graph(b);
    out.terms_ = a.terms_;
    a.require_compatible(b);
    for (const auto& [m, c] : b.terms_) detail::accumulate(out.terms_, m, -c);
    return out;
  }

  friend Element operator*(const Rat& c, const Element& a) {
    Element out(a.graph_);
    if (c == 0) return out;
    out.terms_ = a.terms_;
    for (auto& [m, coeff] : out.terms_) coeff *= c;
    return out;
  }

 private:
  Element pick_graph(const Element& o) const { return Element(graph_ ? graph_ : o.graph_); }
  void require_compatible(const Element& o) const {
    if (!terms_.empty() && !o.terms_.empty() && !same_graph(o))
      throw std::invalid_argument("elements over mismatched graphs");
  }

  std::shared_ptr<const Graph> graph_;
  Terms terms_;

  friend Element mul(const Element&, const Element&);
  friend Element involution(const Element&);
};

/// Product in L_Q(E): ghost-edge contraction nu* alpha followed by
/// normal-form rewriting.  Associative and Q-bilinear.
inline Element mul(const Element& a, const Element& b) {
  if (!a.graph() && !b.graph()) return Element();
  if (a.graph() && b.graph() && !a.same_graph(b))
    throw std::invalid_argument("mul: elements over mismatched graphs");
  const Graph& g = *(a.graph() ? a.graph() : b.graph());
  Element out(a.graph() ? a.graph() : b.graph());
  for (const auto& [m1, c1] : a.terms()) {
    for (const auto& [m2, c2] : b.terms()) {
      const Path& nu = m1.nu;
      const Path& al = m2.mu;
      if (nu.start != al.start) continue;
      if (nu.length() <= al.length() &&
          std::equal(nu.edges.begin(), nu.edges.end(), al.edges.begin())) {
        // nu* alpha = alpha', the tail of alpha past nu
        Path mid{path_end(g, nu), {al.edges.begin() + nu.length(), al.edges.end()}};
        detail::add_reduced(out.terms_, g, {concat(g, m1.mu, mid), m2.nu}, c1 * c2);
      } else if (al.length() < nu.length() &&
                 std::equal(al.edges.begin(), al.edges.end(), nu.edges.begin())) {
        // nu* alpha = (tail of nu past alpha)*
        Path rest{path_end(g, al), {nu.edges.begin() + al.length(), nu.edges.end()}};
        detail::add_reduced(out.terms_, g, {m1.mu, concat(g, m2.nu, rest)}, c1 * c2);
      }
    }
  }
  return out;
}

/// The *-involution mu nu* -> nu mu*, extended linearly over Q.
inline Element involution(const Element& a) {
  Element out(a.graph());
  for (const auto& [m, c] : a.terms()) out.terms_[{m.nu, m.mu}] = c;
  return out;
}

/// Partition of the terms by degree w(mu) - w(nu); summing the components
/// recovers the element and each component is homogeneous.
inline std::map<long long, Element> degree_decompose(const Element& a) {
  std::map<long long, Element> out;
  for (const auto& [m, c] : a.terms()) {
    long long d = monomial_degree(*a.graph(), m);
    auto it = out.find(d);
    if (it == out.end()) {
      Element comp(a.graph());
      it = out.emplace(d, std::move(comp)).first;
    }
    it->second = it->second + Element::monomial(a.graph(), m.mu, m.nu, c);
  }
  return out;
}

inline bool is_homogeneous(const Element& a) { return degree_decompose(a).size() <= 1; }

/// Degree of a nonzero homogeneous element.
inline long long degree(const Element& a) {
  auto d = degree_decompose(a);
  if (d.size() != 1) throw std::invalid_argument("degree: not homogeneous nonzero");
  return d.begin()->first;
}

/// Number of normal-form monomials mu nu* with |mu|, |nu| <= len_bound.
/// For a finite acyclic graph with bound >= longest path this equals the
/// dimension sum over sinks v of |E* v|^2.
inline Int basis_count(const Graph& g, std::size_t len_bound) {
  std::size_t n = g.vertex_count();
  // cnt[l][v] = number of paths of length l ending at v
  std::vector<std::vector<Int>> cnt(len_bound + 1, std::vector<Int>(n, Int(0)));
  for (std::size_t v = 0; v < n; ++v) cnt[0][v] = 1;
  for (std::size_t l = 1; l <= len_bound; ++l)
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      cnt[l][g.tgt_index(e)] += cnt[l - 1][g.src_index(e)];
  std::vector<Int> ending(n, Int(0));  // paths of length <= bound ending at v
  std::vector<Int> shorter(n, Int(0)); // ... of length <= bound - 1
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t l = 0; l <= len_bound; ++l) {
      ending[v] += cnt[l][v];
      if (l + 1 <= len_bound) shorter[v] += cnt[l][v];
    }
  Int total = 0;
  for (std::size_t v = 0; v < n; ++v) total += ending[v] * ending[v];
  // pairs (mu, nu) both ending in the special edge sp(v) are not normal;
  // each corresponds to a pair of length <= bound-1 paths ending at v
  for (std::size_t v = 0; v < n; ++v) {
    if (!g.is_regular(v)) continue;
    Int k = shorter[v];
    total -= k * k;
  }
  return total;
}

// ---- textual element syntax ------------------------------------------------
//
//   element := term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := rational | path | path '^' path | path '^' | '^' path
//   path    := id ('.' id)*
//
// '.' concatenates edges, '^' separates mu from nu in mu nu* (a trailing or
// leading '^' makes the path a pure ghost), vertices stand alone.  Factors
// multiply in the algebra, so `3/2*e.f*g^` is (3/2) (ef) g*.

namespace detail {

inline Path parse_path_ids(const Graph& g, const std::string& s, bool& is_vertex) {
  std::vector<std::string> ids;
  std::string cur;
  for (char ch : s) {
    if (ch == '.') {
      ids.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  ids.push_back(cur);
  is_vertex = false;
  if (ids.size() == 1 && !g.has_edge(ids[0])) {
    if (!g.has_vertex(ids[0]))
      throw std::invalid_argument("unknown id '" + ids[0] + "'");
    is_vertex = true;
    return vertex_path(g, g.vertex_index(ids[0]));
  }
  if (ids.size() == 1 && g.has_edge(ids[0]) && g.has_vertex(ids[0]))
    throw std::invalid_argument("ambiguous id '" + ids[0] + "' (vertex and edge)");
  Path p;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t e = g.edge_index(ids[i]);
    if (i == 0) {
      p = edge_path(g, e);
    } else {
      if (path_end(g, p) != g.src_index(e))
        throw std::invalid_argument("non-composable path at '" + ids[i] + "'");
      p.edges.push_back(e);
    }
  }
  return p;
}

inline Element parse_factor(const std::shared_ptr<const Graph>& g, const std::string& s) {
  auto caret = s.find('^');
  if (caret == std::string::npos) {
    bool isv = false;
    Path p = parse_path_ids(*g, s, isv);
    return Element::monomial(g, p, vertex_path(*g, path_end(*g, p)));
  }
  if (s.find('^', caret + 1) != std::string::npos)
    throw std::invalid_argument("more than one '^' in '" + s + "'");
  std::string left = s.substr(0, caret), right = s.substr(caret + 1);
  if (left.empty() && right.empty()) throw std::invalid_argument("bare '^'");
  if (left.empty() || right.empty()) {
    // pure ghost part
    const std::string& body = left.empty() ? right : left;
    bool isv = false;
    Path p = parse_path_ids(*g, body, isv);
    return Element::monomial(g, vertex_path(*g, path_end(*g, p)), p);
  }
  bool isv = false;
  Path mu = parse_path_ids(*g, left, isv);
  Path nu = parse_path_ids(*g, right, isv);
  if (path_end(*g, mu) != path_end(*g, nu))
    throw std::invalid_argument("mu and nu must share a range in '" + s + "'");
  return Element::monomial(g, mu, nu);
}

}  // namespace detail

/// Sum of all vertex idempotents: the identity of L_Q(E) for finite E.
inline Element unit_on(const std::shared_ptr<const Graph>& g) {
  Element out = Element::zero(g);
  for (const auto& v : g->vertices()) out = out + Element::vertex(g, v);
  return out;
}

inline Element parse_element(const std::shared_ptr<const Graph>& g, const std::string& input) {
  std::string s;
  for (char ch : input)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty() || s == "0") return Element::zero(g);
  Element total = Element::zero(g);
  std::size_t i = 0;
  while (i < s.size()) {
    Rat sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("empty term in element");
    Element value = Element::zero(g);
    bool first = true;
    std::size_t k = 0;
    while (k <= term.size()) {
      std::size_t star = term.find('*', k);
      if (star == std::string::npos) star = term.size();
      std::string factor = term.substr(k, star - k);
      if (factor.empty()) throw std::invalid_argument("empty factor in '" + term + "'");
      Element fe = Element::zero(g);
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        // rational coefficient; vertices/edges may not start with a digit here
        fe = parse_rational(factor) * unit_on(g);
      } else {
        fe = detail::parse_factor(g, factor);
      }
      value = first ? fe : mul(value, fe);
      first = false;
      k = star + 1;
      if (star == term.size()) break;
    }
    total = total + sign * value;
    i = j;
  }
  return total;
}

inline std::string monomial_to_string(const Graph& g, const Monomial& m) {
  bool mu_triv = m.mu.trivial(), nu_triv = m.nu.trivial();
  if (mu_triv && nu_triv) return g.vertex(m.mu.start);
  if (nu_triv) return path_to_string(g, m.mu);
  if (mu_triv) return "^" + path_to_string(g, m.nu);
  return path_to_string(g, m.mu) + "^" + path_to_string(g, m.nu);
}

inline std::string to_string(const Element& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) out += "- ";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += monomial_to_string(*a.graph(), m);
    first = false;
  }
  return out;
}

}  // namespace leavitt

#endif
