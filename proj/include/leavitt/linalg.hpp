#ifndef LEAVITT_LINALG_HPP
#define LEAVITT_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace leavitt {

/// Dense matrix of exact rationals.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_zero() const {
    for (const Rat& x : a_)
      if (x != 0) return false;
    return true;
  }

  QMat transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend QMat operator*(const QMat& a, const QMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("QMat: shape mismatch");
    QMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend bool operator==(const QMat& a, const QMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

struct RankFactorization {
  QMat p;  // rows x rank, full column rank (pivot columns of the input)
  QMat q;  // rank x cols, full row rank (nonzero rows of the RREF)
  std::vector<std::size_t> pivot_cols;
};

/// M = P * Q with P the pivot columns of M and Q the nonzero rows of the
/// reduced row echelon form of M.
inline RankFactorization rank_factorize(const QMat& m) {
  QMat r = m;
  std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    std::size_t sel = row;
    while (sel < nr && r(sel, col) == 0) ++sel;
    if (sel == nr) continue;
    for (std::size_t j = 0; j < nc; ++j) std::swap(r(row, j), r(sel, j));
    Rat inv = Rat(1) / r(row, col);
    for (std::size_t j = col; j < nc; ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == row || r(i, col) == 0) continue;
      Rat f = r(i, col);
      for (std::size_t j = col; j < nc; ++j) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  std::size_t rank = pivots.size();
  QMat p(nr, rank), q(rank, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < rank; ++k) p(i, k) = m(i, pivots[k]);
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t j = 0; j < nc; ++j) q(k, j) = r(k, j);
  return {std::move(p), std::move(q), std::move(pivots)};
}

/// Inverse of a nonsingular rational matrix (Gauss-Jordan).
inline QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  std::size_t n = m.rows();
  QMat a = m, inv = QMat::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a(sel, col) == 0) ++sel;
    if (sel == n) throw std::invalid_argument("inverse: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(sel, j));
      std::swap(inv(col, j), inv(sel, j));
    }
    Rat d = Rat(1) / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= d;
      inv(col, j) *= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Generalized inverse via rank factorization: for M = PQ,
/// X = Q^T (QQ^T)^-1 (P^T P)^-1 P^T satisfies M X M = M.  Exact and
/// deterministic; X is the Moore-Penrose pseudoinverse over Q.
inline QMat generalized_inverse(const QMat& m) {
  RankFactorization f = rank_factorize(m);
  if (f.pivot_cols.empty()) return QMat(m.cols(), m.rows());
  QMat pt = f.p.transpose();
  QMat qt = f.q.transpose();
  return qt * inverse(f.q * qt) * inverse(pt * f.p) * pt;
}

/// Dense integer matrix.
class ZMat {
 public:
  ZMat() = default;
  ZMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static ZMat identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend ZMat operator*(const ZMat& a, const ZMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ZMat: shape mismatch");
    ZMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += x * b(k, j);
      }
    return c;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("ZMat::apply: size mismatch");
    std::vector<Int> y(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  friend bool operator==(const ZMat& a, const ZMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

inline bool is_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

/// Basis of the integer kernel {x in Z^n : A x = 0}, one vector per basis
/// element.  Computed by column elimination with a unimodular transform, so
/// the basis generates the full (saturated) kernel lattice.
inline std::vector<std::vector<Int>> integer_kernel(const ZMat& a) {
  std::size_t nr = a.rows(), nc = a.cols();
  ZMat h = a, u = ZMat::identity(nc);
  std::size_t pivot = 0;
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < nr; ++i) h(i, dst) -= f * h(i, src);
    for (std::size_t i = 0; i < nc; ++i) u(i, dst) -= f * u(i, src);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < nr; ++i) std::swap(h(i, x), h(i, y));
    for (std::size_t i = 0; i < nc; ++i) std::swap(u(i, x), u(i, y));
  };
  for (std::size_t row = 0; row < nr && pivot < nc; ++row) {
    // Euclid on the entries of this row across columns pivot..nc-1
    while (true) {
      std::size_t nonzero = nc;
      int count = 0;
      for (std::size_t j = pivot; j < nc; ++j)
        if (h(row, j) != 0) {
          ++count;
          if (nonzero == nc || abs(h(row, j)) < abs(h(row, nonzero))) nonzero = j;
        }
      if (count == 0) break;
      if (count == 1) {
        col_swap(pivot, nonzero);
        ++pivot;
        break;
      }
      for (std::size_t j = pivot; j < nc; ++j) {
        if (j == nonzero || h(row, j) == 0) continue;
        Int q = h(row, j) / h(row, nonzero);  // truncated division is fine here
        if (q != 0) col_sub(j, nonzero, q);
      }
    }
  }
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = pivot; j < nc; ++j) {
    std::vector<Int> v(nc);
    for (std::size_t i = 0; i < nc; ++i) v[i] = u(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Row Hermite normal form of the lattice spanned by the given vectors:
/// a canonical basis, so two spans are equal iff their HNFs are identical.
inline std::vector<std::vector<Int>> lattice_hnf(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  std::size_t nc = rows[0].size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < nc && top < rows.size(); ++col) {
    // Euclid down the column
    while (true) {
      std::size_t best = rows.size();
      int count = 0;
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][col] != 0) {
          ++count;
          if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
        }
      if (count == 0) break;
      std::swap(rows[top], rows[best]);
      if (count == 1) break;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[top][col];
        if (q != 0)
          for (std::size_t j = 0; j < nc; ++j) rows[i][j] -= q * rows[top][j];
      }
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (std::size_t j = 0; j < nc; ++j) rows[top][j] = -rows[top][j];
    // reduce the rows above into canonical residues
    for (std::size_t i = 0; i < top; ++i) {
      Int q = rows[i][col] / rows[top][col];
      if (rows[i][col] - q * rows[top][col] < 0) q -= 1;  // floor division
      if (q != 0)
        for (std::size_t j = 0; j < nc; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

/// First index j >= 0 with ker(A^j) = ker(A^(j+1)); the kernel chain
/// ker A <= ker A^2 <= ... is an ascending chain of saturated sublattices of
/// Z^n, so it stabilizes after at most n steps.  Detection compares canonical
/// Hermite bases of consecutive kernel lattices.
inline std::size_t kernel_stabilization_index(const ZMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("kernel chain: not square");
  std::size_t n = a.rows();
  ZMat power = ZMat::identity(n);
  auto prev = lattice_hnf(integer_kernel(power));  // ker A^0 = 0
  for (std::size_t j = 0;; ++j) {
    power = power * a;
    auto cur = lattice_hnf(integer_kernel(power));
    if (cur == prev) return j;
    prev = std::move(cur);
    if (j > n + 1) throw std::logic_error("kernel chain failed to stabilize");
  }
}

}  // namespace leavitt

#endif
