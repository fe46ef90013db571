#include <catch2/catch_amalgamated.hpp>
#include <leavitt/graded_monoid.hpp>
#include <leavitt/kgraph.hpp>

#include "desk_graphs.hpp"
#include "test_rng.hpp"

using namespace leavitt;

namespace {

ZMat m1x1(long long v) {
  ZMat m(1, 1);
  m(0, 0) = v;
  return m;
}

ZMat m2x2(long long a, long long b, long long c, long long d) {
  ZMat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Brute-force limit equality: push to the common max level, then try all
// diagonal advances t <= bound.
bool brute_equal(const KGraphSpec& spec, const LimitVector& a, const LimitVector& b,
                 long long bound = 6) {
  auto n = level_max(a, b);
  LimitVector pa = push_to(spec, a, n), pb = push_to(spec, b, n);
  std::vector<Int> d(spec.vertices);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa.vec[i] - pb.vec[i];
  ZMat p = spec.diagonal();
  ZMat pt(spec.vertices, spec.vertices);
  for (std::size_t r = 0; r < spec.vertices; ++r)
    for (std::size_t c = 0; c < spec.vertices; ++c) pt(r, c) = p(c, r);
  for (long long t = 0; t <= bound; ++t) {
    if (is_zero(d)) return true;
    d = pt.apply(d);
  }
  return is_zero(d);
}

}  // namespace

TEST_CASE("k-graph spec validation") {
  CHECK_THROWS(KGraphSpec(1, {}));
  CHECK_THROWS(KGraphSpec(1, {m1x1(0)}));  // zero row: source
  CHECK_THROWS(KGraphSpec(2, {m2x2(1, 0, 0, 1), m2x2(0, 0, 1, 1)}));  // zero row
  // non-commuting pair rejected
  CHECK_THROWS(KGraphSpec(2, {m2x2(1, 1, 0, 1), m2x2(1, 0, 1, 1)}));
  // valid pairs accepted
  KGraphSpec ok(2, {m2x2(1, 1, 0, 1), m2x2(2, 1, 0, 2)});
  CHECK(ok.rank() == 2);
}

TEST_CASE("phi examples") {
  KGraphSpec two(1, {m1x1(2)});
  CHECK(phi(two, {0}, {1}, {Int(1)}) == std::vector<Int>{Int(2)});
  CHECK(phi(two, {3}, {3}, {Int(5)}) == std::vector<Int>{Int(5)});
  KGraphSpec k2(1, {m1x1(2), m1x1(3)});
  CHECK(phi(k2, {0, 0}, {1, 1}, {Int(1)}) == std::vector<Int>{Int(6)});
  CHECK_THROWS(phi(two, {1}, {0}, {Int(1)}));

  // the convention: phi on the basis vector of v yields sum |v Lambda^1 w| w
  KGraphSpec pair(2, {m2x2(1, 2, 3, 4)});
  std::vector<Int> ev{Int(1), Int(0)};
  CHECK(phi(pair, {0}, {1}, ev) == std::vector<Int>{Int(1), Int(2)});
}

TEST_CASE("phi is functorial") {
  TestRng rng(601);
  KGraphSpec spec(2, {m2x2(1, 1, 0, 1), m2x2(2, 1, 0, 2)});
  for (int t = 0; t < 60; ++t) {
    std::vector<long long> m{rng.range(0, 2), rng.range(0, 2)};
    std::vector<long long> n{m[0] + rng.range(0, 2), m[1] + rng.range(0, 2)};
    std::vector<long long> p{n[0] + rng.range(0, 2), n[1] + rng.range(0, 2)};
    std::vector<Int> x{Int(rng.range(0, 4)), Int(rng.range(0, 4))};
    CHECK(phi(spec, n, p, phi(spec, m, n, x)) == phi(spec, m, p, x));
  }
}

TEST_CASE("limit equality examples") {
  KGraphSpec two(1, {m1x1(2)});
  // v at level 0 equals 2v at level 1 (one phi application)
  CHECK(limit_equal(two, {{0}, {Int(1)}}, {{1}, {Int(2)}}));
  CHECK_FALSE(limit_equal(two, {{0}, {Int(2)}}, {{1}, {Int(1)}}));
  CHECK(limit_equal(two, {{0}, {Int(2)}}, {{0}, {Int(2)}}));
  CHECK_FALSE(limit_equal(two, {{0}, {Int(1)}}, {{0}, {Int(2)}}));
}

TEST_CASE("limit equality agrees with brute force") {
  std::vector<KGraphSpec> specs;
  specs.push_back(KGraphSpec(1, {m1x1(2), m1x1(3)}));
  specs.push_back(KGraphSpec(1, {m1x1(2)}));
  specs.push_back(KGraphSpec(2, {m2x2(1, 1, 0, 1), m2x2(2, 1, 0, 2)}));
  for (const auto& spec : specs) {
    std::vector<LimitVector> pts;
    // all vectors with entries <= 3 at levels {0,1}^k
    std::vector<long long> lv(spec.rank(), 0);
    while (true) {
      std::vector<Int> vec(spec.vertices, Int(0));
      while (true) {
        pts.push_back({lv, vec});
        std::size_t i = 0;
        while (i < vec.size() && vec[i] == 3) vec[i++] = 0;
        if (i == vec.size()) break;
        vec[i] += 1;
      }
      std::size_t i = 0;
      while (i < lv.size() && lv[i] == 1) lv[i++] = 0;
      if (i == lv.size()) break;
      lv[i] += 1;
    }
    for (const auto& a : pts)
      for (const auto& b : pts) CHECK(limit_equal(spec, a, b) == brute_equal(spec, a, b));
  }
}

TEST_CASE("cancellation sweep") {
  KGraphSpec k2(1, {m1x1(2), m1x1(3)});
  SweepReport rep = kgraph_cancellation_sweep(k2, 200, 7);
  CHECK(rep.samples == 200);
  CHECK(rep.violations == 0);

  KGraphSpec pair(2, {m2x2(1, 1, 0, 1), m2x2(2, 1, 0, 2)});
  SweepReport rep2 = kgraph_cancellation_sweep(pair, 200, 11);
  CHECK(rep2.violations == 0);

  // z = 0 triples: the implication is exact by reflexivity
  KGraphSpec two(1, {m1x1(2)});
  LimitVector zero{{0}, {Int(0)}};
  for (long long a = 0; a <= 3; ++a)
    for (long long b = 0; b <= 3; ++b) {
      LimitVector x{{0}, {Int(a)}}, y{{1}, {Int(b)}};
      bool lhs = limit_equal(two, limit_add(two, x, zero), limit_add(two, y, zero));
      CHECK(lhs == limit_equal(two, x, y));
    }
}

TEST_CASE("k = 1 matches the graded monoid machinery") {
  // dictionary: (v, limit level j) corresponds to a_v(-j)
  for (Graph g : {graph_F(), graph_E()}) {
    std::size_t n = g.vertex_count();
    ZMat b(n, n);
    for (std::size_t e = 0; e < g.edge_count(); ++e) b(g.src_index(e), g.tgt_index(e)) += 1;
    KGraphSpec spec(n, {b});
    TestRng rng(602);
    for (int t = 0; t < 80; ++t) {
      LimitVector x = {{rng.range(0, 2)}, {}}, y = {{rng.range(0, 2)}, {}};
      GradedElement gx, gy;
      for (std::size_t v = 0; v < n; ++v) {
        long long cx = rng.range(0, 2), cy = rng.range(0, 2);
        x.vec.push_back(Int(cx));
        y.vec.push_back(Int(cy));
        if (cx) gx[{g.vertex(v), -x.level[0]}] = cx;
        if (cy) gy[{g.vertex(v), -y.level[0]}] = cy;
      }
      CHECK(limit_equal(spec, x, y) == gequal(g, gx, gy));
    }
  }
}
