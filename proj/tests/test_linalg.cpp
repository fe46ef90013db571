#include <catch2/catch_amalgamated.hpp>
#include <leavitt/linalg.hpp>

#include "test_rng.hpp"

using namespace leavitt;

namespace {

QMat random_qmat(TestRng& rng, std::size_t maxdim = 6) {
  std::size_t r = 1 + rng.below(maxdim), c = 1 + rng.below(maxdim);
  QMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng.below(3)) m(i, j) = Rat(rng.range(-4, 4), 1 + rng.below(3));
  return m;
}

ZMat random_zmat(TestRng& rng, std::size_t n) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.below(2)) m(i, j) = rng.range(-3, 3);
  return m;
}

std::size_t qrank(const QMat& m) { return rank_factorize(m).pivot_cols.size(); }

QMat to_qmat(const ZMat& z) {
  QMat q(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) q(i, j) = Rat(z(i, j));
  return q;
}

// Membership of v in the row lattice with Hermite basis `hnf`.
bool in_lattice(std::vector<Int> v, const std::vector<std::vector<Int>>& hnf) {
  for (const auto& row : hnf) {
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    if (c == row.size()) continue;
    if (v[c] % row[c] != 0) return false;
    Int q = v[c] / row[c];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
  }
  return is_zero(v);
}

}  // namespace

TEST_CASE("rank factorization reconstructs the matrix") {
  TestRng rng(101);
  for (int t = 0; t < 200; ++t) {
    QMat m = random_qmat(rng);
    RankFactorization f = rank_factorize(m);
    CHECK(f.p * f.q == m);
    CHECK(f.p.cols() == f.q.rows());
  }
}

TEST_CASE("inverse") {
  TestRng rng(102);
  int done = 0;
  while (done < 50) {
    std::size_t n = 1 + rng.below(5);
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(rng.range(-4, 4));
    if (qrank(m) != n) continue;
    CHECK(m * inverse(m) == QMat::identity(n));
    CHECK(inverse(m) * m == QMat::identity(n));
    ++done;
  }
  QMat sing(2, 2);
  sing(0, 0) = 1;
  sing(1, 0) = 2;
  CHECK_THROWS(inverse(sing));
}

TEST_CASE("generalized inverse satisfies MXM = M and XMX = X") {
  TestRng rng(103);
  for (int t = 0; t < 150; ++t) {
    QMat m = random_qmat(rng);
    QMat x = generalized_inverse(m);
    CHECK(m * x * m == m);
    CHECK(x * m * x == x);
  }
  QMat z(3, 2);
  QMat xz = generalized_inverse(z);
  CHECK(xz.rows() == 2);
  CHECK(xz.cols() == 3);
  CHECK(xz.is_zero());
}

TEST_CASE("integer kernel basis is correct and complete") {
  TestRng rng(104);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 1 + rng.below(4);
    ZMat a = random_zmat(rng, n);
    auto basis = integer_kernel(a);
    for (const auto& v : basis) CHECK(is_zero(a.apply(v)));
    CHECK(basis.size() == n - qrank(to_qmat(a)));
    // saturation: every small integer kernel vector lies in the lattice
    auto hnf = lattice_hnf(basis);
    std::vector<Int> v(n, Int(-2));
    while (true) {
      if (is_zero(a.apply(v))) CHECK(in_lattice(v, hnf));
      std::size_t i = 0;
      while (i < n && v[i] == 2) v[i++] = -2;
      if (i == n) break;
      v[i] += 1;
    }
  }
}

TEST_CASE("lattice HNF is a canonical form") {
  TestRng rng(105);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 2 + rng.below(3), k = 1 + rng.below(3);
    std::vector<std::vector<Int>> basis(k, std::vector<Int>(n, Int(0)));
    for (auto& row : basis)
      for (auto& x : row) x = rng.range(-4, 4);
    auto transformed = basis;
    for (int op = 0; op < 8; ++op) {
      std::size_t i = rng.below(k), j = rng.below(k);
      switch (rng.below(3)) {
        case 0:
          if (i != j) {
            Int f = rng.range(-2, 2);
            for (std::size_t c = 0; c < n; ++c)
              transformed[i][c] += f * transformed[j][c];
          }
          break;
        case 1:
          std::swap(transformed[i], transformed[j]);
          break;
        default:
          for (std::size_t c = 0; c < n; ++c) transformed[i][c] = -transformed[i][c];
      }
    }
    CHECK(lattice_hnf(basis) == lattice_hnf(transformed));
  }
}

TEST_CASE("kernel chain stabilization matches the rank oracle") {
  TestRng rng(106);
  for (int t = 0; t < 120; ++t) {
    std::size_t n = 1 + rng.below(4);
    ZMat a = random_zmat(rng, n);
    std::size_t got = kernel_stabilization_index(a);
    // oracle: first j with rank(A^j) == rank(A^(j+1)), ranks over Q
    QMat q = to_qmat(a), power = QMat::identity(n);
    std::size_t expect = 0;
    while (qrank(power) != qrank(power * q)) {
      power = power * q;
      ++expect;
    }
    CHECK(got == expect);
  }
  ZMat zero(1, 1);
  CHECK(kernel_stabilization_index(zero) == 1);
  ZMat two(1, 1);
  two(0, 0) = 2;
  CHECK(kernel_stabilization_index(two) == 0);
}
