#ifndef LEAVITT_KGRAPH_HPP
#define LEAVITT_KGRAPH_HPP

#include <stdexcept>
#include <vector>

#include "linalg.hpp"
#include "rng.hpp"

namespace leavitt {

/// A k-graph presented by its family of vertex matrices: M_i(v, w) is the
/// number of degree-e_i paths from v to w.  The matrices must pairwise
/// commute (the factorisation property at the counting level) and every row
/// must be nonzero (row-finite with no sources).
struct KGraphSpec {
  std::size_t vertices = 0;
  std::vector<ZMat> mats;

  KGraphSpec(std::size_t vertex_count, std::vector<ZMat> matrices)
      : vertices(vertex_count), mats(std::move(matrices)) {
    if (mats.empty()) throw std::invalid_argument("kgraph: need at least one matrix");
    for (const ZMat& m : mats) {
      if (m.rows() != vertices || m.cols() != vertices)
        throw std::invalid_argument("kgraph: matrix dimensions must match vertex count");
      for (std::size_t i = 0; i < vertices; ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < vertices; ++j) {
          if (m(i, j) < 0) throw std::invalid_argument("kgraph: negative entry");
          if (m(i, j) != 0) nonzero = true;
        }
        if (!nonzero)
          throw std::invalid_argument("kgraph: zero row (graph has a source)");
      }
    }
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i + 1; j < mats.size(); ++j)
        if (!(mats[i] * mats[j] == mats[j] * mats[i]))
          throw std::invalid_argument("kgraph: matrices do not commute");
  }

  std::size_t rank() const { return mats.size(); }

  /// Product of all matrices: one full diagonal step.
  ZMat diagonal() const {
    ZMat p = mats[0];
    for (std::size_t i = 1; i < mats.size(); ++i) p = p * mats[i];
    return p;
  }
};

/// A point of the direct limit: a natural-number vector sitting in the copy
/// of N^(Lambda^0) at a k-tuple level.
struct LimitVector {
  std::vector<long long> level;
  std::vector<Int> vec;

  friend bool operator==(const LimitVector&, const LimitVector&) = default;
};

inline void validate_limit_vector(const KGraphSpec& spec, const LimitVector& a) {
  if (a.level.size() != spec.rank())
    throw std::invalid_argument("limit vector: level arity mismatch");
  if (a.vec.size() != spec.vertices)
    throw std::invalid_argument("limit vector: vector length mismatch");
  for (const Int& x : a.vec)
    if (x < 0) throw std::invalid_argument("limit vector: negative entry");
}

/// phi_{m,n}(x) = (prod_i M_i^(n_i - m_i))^T x, the connecting map of the
/// directed system; on the basis vector of v it produces
/// sum_w |v Lambda^(n-m) w| w.  Order of factors is irrelevant by commutation.
inline std::vector<Int> phi(const KGraphSpec& spec, const std::vector<long long>& m,
                            const std::vector<long long>& n, std::vector<Int> x) {
  if (m.size() != spec.rank() || n.size() != spec.rank())
    throw std::invalid_argument("phi: level arity mismatch");
  if (x.size() != spec.vertices) throw std::invalid_argument("phi: vector length mismatch");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > n[i]) throw std::invalid_argument("phi: m must be <= n componentwise");
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    ZMat t(spec.vertices, spec.vertices);
    for (std::size_t r = 0; r < spec.vertices; ++r)
      for (std::size_t c = 0; c < spec.vertices; ++c) t(r, c) = spec.mats[i](c, r);
    for (long long step = 0; step < n[i] - m[i]; ++step) x = t.apply(x);
  }
  return x;
}

/// Push a to the componentwise-larger level n.
inline LimitVector push_to(const KGraphSpec& spec, const LimitVector& a,
                           const std::vector<long long>& n) {
  return LimitVector{n, phi(spec, a.level, n, a.vec)};
}

inline std::vector<long long> level_max(const LimitVector& a, const LimitVector& b) {
  std::vector<long long> n(a.level.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::max(a.level[i], b.level[i]);
  return n;
}

/// Addition in the limit monoid: align levels, then add entrywise.
inline LimitVector limit_add(const KGraphSpec& spec, const LimitVector& a,
                             const LimitVector& b) {
  auto n = level_max(a, b);
  LimitVector pa = push_to(spec, a, n), pb = push_to(spec, b, n);
  for (std::size_t i = 0; i < pa.vec.size(); ++i) pa.vec[i] += pb.vec[i];
  return pa;
}

/// Equality in the direct limit: push both to the componentwise max level and
/// decide whether some further application of prod_i M_i kills the
/// difference.  Advancing along the diagonal suffices: the kernels over
/// t in N^k form a directed union and each lies in a diagonal kernel.  The
/// diagonal chain stabilizes, so membership in the stabilized kernel decides.
inline bool limit_equal(const KGraphSpec& spec, const LimitVector& a, const LimitVector& b) {
  validate_limit_vector(spec, a);
  validate_limit_vector(spec, b);
  auto n = level_max(a, b);
  LimitVector pa = push_to(spec, a, n), pb = push_to(spec, b, n);
  std::vector<Int> d(spec.vertices);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = pa.vec[i] - pb.vec[i];
  ZMat p = spec.diagonal();
  ZMat pt(spec.vertices, spec.vertices);
  for (std::size_t r = 0; r < spec.vertices; ++r)
    for (std::size_t c = 0; c < spec.vertices; ++c) pt(r, c) = p(c, r);
  std::size_t stab = kernel_stabilization_index(pt);
  for (std::size_t j = 0; j <= stab; ++j) {
    if (is_zero(d)) return true;
    d = pt.apply(d);
  }
  return is_zero(d);
}

struct SweepReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
};

inline LimitVector random_limit_vector(const KGraphSpec& spec, Rng& rng,
                                       long long maxentry = 3, long long maxlevel = 2) {
  LimitVector v;
  for (std::size_t i = 0; i < spec.rank(); ++i) v.level.push_back(rng.range(0, maxlevel));
  for (std::size_t i = 0; i < spec.vertices; ++i)
    v.vec.push_back(Int(rng.range(0, maxentry)));
  return v;
}

/// Samples triples and checks the cancellation implication
/// x + z ~ y + z  =>  x ~ y; the limit monoid is cancellative, so the
/// expected violation count is zero.
inline SweepReport kgraph_cancellation_sweep(const KGraphSpec& spec, std::size_t samples,
                                             std::uint64_t seed = 0, long long maxentry = 3,
                                             long long maxlevel = 2) {
  Rng rng(seed);
  SweepReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    LimitVector x = random_limit_vector(spec, rng, maxentry, maxlevel);
    LimitVector y = random_limit_vector(spec, rng, maxentry, maxlevel);
    LimitVector z = random_limit_vector(spec, rng, maxentry, maxlevel);
    ++rep.samples;
    if (limit_equal(spec, limit_add(spec, x, z), limit_add(spec, y, z)) &&
        !limit_equal(spec, x, y))
      ++rep.violations;
  }
  return rep;
}

}  // namespace leavitt

#endif
