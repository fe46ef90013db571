#include <catch2/catch_amalgamated.hpp>
#include <leavitt/orbit.hpp>

#include <vector>

#include "desk_graphs.hpp"
#include "element_helpers.hpp"
#include "test_rng.hpp"

using namespace leavitt;

namespace {

using G = std::shared_ptr<const Graph>;

// Edge stream of a RAW (prefix, cycle) pair, no canonicalization involved.
std::size_t raw_edge_at(const Path& prefix, const Path& cycle, std::size_t i) {
  if (i < prefix.length()) return prefix.edges[i];
  return cycle.edges[(i - prefix.length()) % cycle.length()];
}

// Random closed walk starting anywhere; may be a proper power of a cycle.
Path random_closed_walk(const Graph& g, TestRng& rng, std::size_t maxlen = 6) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::size_t v = rng.below(g.vertex_count());
    Path w = random_walk(g, rng, v, 1 + rng.below(maxlen));
    if (!w.trivial() && path_end(g, w) == v) return w;
  }
  throw std::runtime_error("no closed walk found");
}

RationalPath random_rational(const Graph& g, TestRng& rng) {
  Path cycle = random_closed_walk(g, rng);
  auto prefixes = paths_into(g, cycle.start, rng.below(4));
  Path prefix = prefixes.empty() ? vertex_path(g, cycle.start)
                                 : prefixes[rng.below(prefixes.size())];
  return rational_path(g, prefix, cycle);
}

RationalPath rp(const Graph& g, std::initializer_list<const char*> beta,
                std::initializer_list<const char*> cyc) {
  Path prefix, cycle;
  bool first = true;
  for (const char* id : cyc) {
    std::size_t e = g.edge_index(id);
    if (first) cycle = edge_path(g, e);
    else cycle.edges.push_back(e);
    first = false;
  }
  if (beta.size() == 0) {
    prefix = vertex_path(g, cycle.start);
  } else {
    first = true;
    for (const char* id : beta) {
      std::size_t e = g.edge_index(id);
      if (first) prefix = edge_path(g, e);
      else prefix.edges.push_back(e);
      first = false;
    }
  }
  return rational_path(g, prefix, cycle);
}

// Deterministic-walk oracle for interior isotropy: some vertex whose forward
// walk keeps out-degree one for |V| + 1 steps sits on an exitless cycle.
bool oracle_interior_isotropy(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::size_t at = v;
    bool ok = true;
    for (std::size_t s = 0; s <= g.vertex_count() && ok; ++s) {
      if (g.out(at).size() != 1) ok = false;
      else at = g.tgt_index(g.out(at)[0]);
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("canonical form preserves the infinite path and is minimal") {
  TestRng rng(701);
  for (Graph g : {graph_E(), graph_F(), single_loop()}) {
    for (int t = 0; t < 150; ++t) {
      Path cycle = random_closed_walk(g, rng);
      auto prefixes = paths_into(g, cycle.start, rng.below(4));
      Path prefix = prefixes.empty() ? vertex_path(g, cycle.start)
                                     : prefixes[rng.below(prefixes.size())];
      RationalPath q = rational_path(g, prefix, cycle);
      // same infinite edge stream
      for (std::size_t i = 0; i < 2 * (prefix.length() + cycle.length()) + 6; ++i)
        CHECK(edge_at(q, i) == raw_edge_at(prefix, cycle, i));
      // primitive cycle, blocked stripping
      CHECK(q.cycle.length() <= cycle.length());
      if (!q.prefix.trivial())
        CHECK(q.prefix.edges.back() != q.cycle.edges.back());
      // idempotent
      CHECK(rational_path(g, q.prefix, q.cycle) == q);
    }
  }
}

TEST_CASE("canonical equality is exactly stream equality") {
  TestRng rng(702);
  for (Graph g : {graph_E(), graph_F()}) {
    for (int t = 0; t < 200; ++t) {
      RationalPath a = random_rational(g, rng), b = random_rational(g, rng);
      std::size_t depth = 2 * (a.size() + b.size()) + a.cycle.length() + b.cycle.length();
      bool streams_equal = path_source(a) == path_source(b);
      for (std::size_t i = 0; i < depth && streams_equal; ++i)
        if (edge_at(a, i) != edge_at(b, i)) streams_equal = false;
      CHECK((a == b) == streams_equal);
    }
  }
}

TEST_CASE("tail equivalence") {
  Graph f = graph_F();
  RationalPath einf = rp(f, {}, {"e"});
  RationalPath feinf = rp(f, {"f"}, {"e"});
  RationalPath finf = rp(f, {}, {"f"});
  CHECK(tail_equivalent(einf, einf));
  CHECK(tail_equivalent(feinf, einf));
  CHECK_FALSE(tail_equivalent(einf, finf));

  Graph e = graph_E();
  CHECK(tail_equivalent(rp(e, {}, {"f", "g"}), rp(e, {"f"}, {"g", "f"})));

  TestRng rng(703);
  for (int t = 0; t < 100; ++t) {
    RationalPath a = random_rational(e, rng), b = random_rational(e, rng),
                 c = random_rational(e, rng);
    CHECK(tail_equivalent(a, a));
    CHECK(tail_equivalent(a, b) == tail_equivalent(b, a));
    if (tail_equivalent(a, b) && tail_equivalent(b, c)) CHECK(tail_equivalent(a, c));
  }
}

TEST_CASE("generator actions on basis paths") {
  G f = shared(graph_F());
  RationalPath einf = rp(*f, {}, {"e"});
  RationalPath feinf = rp(*f, {"f"}, {"e"});
  std::size_t e = f->edge_index("e"), ff = f->edge_index("f");

  auto act_e = act_path(*f, {Generator::Kind::Edge, e}, einf);
  REQUIRE(act_e.has_value());
  CHECK(*act_e == einf);  // prepending e to e^inf gives the same path

  CHECK_FALSE(act_path(*f, {Generator::Kind::Ghost, e}, feinf).has_value());
  auto act_fg = act_path(*f, {Generator::Kind::Ghost, ff}, feinf);
  REQUIRE(act_fg.has_value());
  CHECK(*act_fg == einf);

  auto act_u = act_path(*f, {Generator::Kind::Vertex, 0}, einf);
  REQUIRE(act_u.has_value());
  CHECK(*act_u == einf);

  // act maps a tail class into itself
  TestRng rng(704);
  for (Graph g : {graph_E(), graph_F()}) {
    for (int t = 0; t < 80; ++t) {
      RationalPath q = random_rational(g, rng);
      for (const Generator& gen : all_generators(g)) {
        auto img = act_path(g, gen, q);
        if (img) CHECK(tail_equivalent(*img, q));
      }
    }
  }
}

TEST_CASE("generator actions satisfy the defining relations") {
  TestRng rng(705);
  for (Graph g : {graph_E(), graph_F(), single_loop()}) {
    std::vector<RationalPath> sample;
    for (int t = 0; t < 25; ++t) sample.push_back(random_rational(g, rng));
    for (const RationalPath& q : sample) {
      auto one = [&](const Generator& gen,
                     const std::optional<RationalPath>& in) -> std::optional<RationalPath> {
        if (!in) return std::nullopt;
        return act_path(g, gen, *in);
      };
      // (0) u v = delta uv
      for (std::size_t u = 0; u < g.vertex_count(); ++u)
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          auto lhs = one({Generator::Kind::Vertex, u},
                         act_path(g, {Generator::Kind::Vertex, v}, q));
          auto rhs = u == v ? act_path(g, {Generator::Kind::Vertex, v}, q) : std::nullopt;
          CHECK(lhs == rhs);
        }
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        // (1) s(e) e = e = e r(e)
        auto eq = act_path(g, {Generator::Kind::Edge, e}, q);
        CHECK(one({Generator::Kind::Vertex, g.src_index(e)}, eq) == eq);
        CHECK(one({Generator::Kind::Edge, e},
                  act_path(g, {Generator::Kind::Vertex, g.tgt_index(e)}, q)) == eq);
        // (3) e* f = delta r(e)
        for (std::size_t ff = 0; ff < g.edge_count(); ++ff) {
          auto lhs = one({Generator::Kind::Ghost, e},
                         act_path(g, {Generator::Kind::Edge, ff}, q));
          auto rhs = e == ff ? act_path(g, {Generator::Kind::Vertex, g.tgt_index(e)}, q)
                             : std::nullopt;
          CHECK(lhs == rhs);
        }
      }
      // (4) sum_e e e* = v on paths based at regular v
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!g.is_regular(v)) continue;
        auto vq = act_path(g, {Generator::Kind::Vertex, v}, q);
        std::optional<RationalPath> hit;
        int hits = 0;
        for (std::size_t e : g.out(v)) {
          auto r = one({Generator::Kind::Edge, e},
                       act_path(g, {Generator::Kind::Ghost, e}, q));
          if (r) {
            ++hits;
            hit = r;
          }
        }
        if (vq) {
          CHECK(hits == 1);
          CHECK(hit == vq);
        } else {
          CHECK(hits == 0);
        }
      }
    }
  }
}

TEST_CASE("module axiom for the algebra action") {
  TestRng rng(706);
  for (Graph base : {graph_E(), graph_F()}) {
    G g = shared(base);
    for (int t = 0; t < 60; ++t) {
      Element a = random_element(g, rng, 2, 2), b = random_element(g, rng, 2, 2);
      OrbitElement m = OrbitElement::basis(g, random_rational(*g, rng));
      CHECK(module_act(mul(a, b), m) == module_act(a, module_act(b, m)));
    }
  }
}

TEST_CASE("ck2 defect annihilates the orbit module") {
  G f = shared(graph_F());
  Element defect = Element::vertex(f, "u");
  for (std::size_t e : f->out(0)) {
    Element ee = Element::edge(f, f->edge(e).id);
    defect = defect - mul(ee, involution(ee));
  }
  CHECK(defect.is_zero());  // the relation already holds in the algebra
  TestRng rng(707);
  for (int t = 0; t < 20; ++t)
    CHECK(module_act(defect, OrbitElement::basis(f, random_rational(*f, rng))).is_zero());
}

TEST_CASE("grading obstruction") {
  Graph f = graph_F();
  auto ob = grading_obstruction(f, rp(f, {}, {"e"}));
  CHECK(path_to_string(f, ob.cycle) == "e");
  CHECK(ob.degree == 1);

  Graph e = graph_E();
  auto ob2 = grading_obstruction(e, rp(e, {}, {"f", "g"}));
  CHECK(path_to_string(e, ob2.cycle) == "f.g");
  CHECK(ob2.degree == 2);

  TestRng rng(708);
  for (int t = 0; t < 50; ++t) {
    RationalPath q = random_rational(e, rng);
    CHECK(grading_obstruction(e, q).cycle.length() >= 1);
    CHECK(grading_obstruction(e, q).degree >= 1);  // unit weights
  }
}

TEST_CASE("orbit basis enumeration") {
  Graph f = graph_F();
  RationalPath einf = rp(f, {}, {"e"});
  auto basis0 = orbit_basis(f, einf, 0);
  CHECK(basis0.empty());
  auto basis4 = orbit_basis(f, einf, 4);
  CHECK(basis4.size() == 8);  // prefixes not ending in e, length <= 3
  for (const auto& q : basis4) {
    CHECK(q.size() <= 4);
    CHECK(tail_equivalent(q, einf));
  }
}

TEST_CASE("simple sweep") {
  Graph f = graph_F();
  SimpleSweepReport rep = simple_sweep(f, rp(f, {}, {"e"}), 4);
  CHECK(rep.basis_size == 8);
  CHECK(rep.transitive);
  CHECK(rep.commutant_dimension == 1);
  CHECK(rep.pass());

  Graph loop = single_loop();
  SimpleSweepReport rl = simple_sweep(loop, rp(loop, {}, {"c"}), 3);
  CHECK(rl.basis_size == 1);
  CHECK(rl.pass());

  SimpleSweepReport r0 = simple_sweep(f, rp(f, {}, {"e"}), 0);
  CHECK(r0.basis_size == 0);
  CHECK(r0.pass());  // vacuous

  Graph e = graph_E();
  SimpleSweepReport re = simple_sweep(e, rp(e, {}, {"f", "g"}), 4);
  CHECK(re.pass());
}

TEST_CASE("no nonzero equivariant maps between distinct tail classes") {
  Graph f = graph_F();
  auto bx = orbit_basis(f, rp(f, {}, {"e"}), 3);
  auto by = orbit_basis(f, rp(f, {}, {"f"}), 3);
  REQUIRE(!bx.empty());
  REQUIRE(!by.empty());
  CHECK(equivariant_dimension(f, bx, by) == 0);
  Graph e = graph_E();
  auto bu = orbit_basis(e, rp(e, {}, {"e"}), 3);
  auto bv = orbit_basis(e, rp(e, {}, {"f", "g"}), 4);
  CHECK(equivariant_dimension(e, bu, bv) == 0);
}

TEST_CASE("annihilator probe") {
  // F plus a disjoint loop at w: w is outside the hereditary closure of {u}
  Graph g2({"u", "w"},
           {{"e", "u", "u", 1}, {"f", "u", "u", 1}, {"h", "w", "w", 1}});
  G gp = shared(g2);
  RationalPath einf = rp(g2, {}, {"e"});
  auto p1 = annihilator_probe(Element::vertex(gp, "w"), einf, 4);
  CHECK_FALSE(p1.refuted);
  CHECK(p1.paths_checked > 0);

  auto p2 = annihilator_probe(Element::vertex(gp, "u"), einf, 4);
  CHECK(p2.refuted);
  REQUIRE(p2.witness.has_value());
  CHECK(!module_act(Element::vertex(gp, "u"), OrbitElement::basis(gp, *p2.witness))
             .is_zero());

  // the zero element is consistent at any depth
  auto p3 = annihilator_probe(Element::zero(gp), einf, 5);
  CHECK_FALSE(p3.refuted);
}

TEST_CASE("effectiveness criterion with isotropy oracle") {
  CHECK(is_effective_graph_groupoid(graph_F()));
  CHECK_FALSE(is_effective_graph_groupoid(single_loop()));
  CHECK(is_effective_graph_groupoid(line_graph(4)));

  TestRng rng(709);
  for (int t = 0; t < 200; ++t) {
    int nv = 1 + static_cast<int>(rng.below(3));
    std::vector<std::string> vs;
    for (int i = 0; i < nv; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<Edge> es;
    int ne = static_cast<int>(rng.below(5));
    for (int i = 0; i < ne; ++i)
      es.push_back({"e" + std::to_string(i), vs[rng.below(nv)], vs[rng.below(nv)], 1});
    Graph g(vs, es);
    CHECK(is_effective_graph_groupoid(g) == !oracle_interior_isotropy(g));
  }
}

TEST_CASE("rational path text form") {
  Graph f = graph_F();
  RationalPath q = parse_rational_path(f, "beta=f;cycle=e");
  CHECK(q == rp(f, {"f"}, {"e"}));
  CHECK(parse_rational_path(f, "beta=;cycle=e") == rp(f, {}, {"e"}));
  CHECK(parse_rational_path(f, "beta=u;cycle=e") == rp(f, {}, {"e"}));
  CHECK(parse_rational_path(f, to_string(f, q)) == q);
  CHECK_THROWS(parse_rational_path(f, "beta=f"));
  CHECK_THROWS(parse_rational_path(f, "beta=;cycle=u"));
  Graph e = graph_E();
  CHECK_THROWS(parse_rational_path(e, "beta=;cycle=f"));  // f is not closed
}
