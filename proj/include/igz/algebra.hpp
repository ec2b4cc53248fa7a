#pragma once

/**
 * Frobenius and Clifford algebras over exact rationals, the paracomplex
 * plane and its module splitting, the Frobenius-module tensors (metric,
 * symmetric 3-tensor, multiplication), and the quadratic-algebra calculus
 * with black/white products and Koszul-style dualization.
 *
 * Everything here is exact: no floating point enters this module.
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "igz/common.hpp"

namespace igz {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major

inline QMat qmat(int rows, int cols) { return QMat(rows, QVec(cols, Rat(0))); }

/// Reduced row echelon form; the canonical representation of a row space.
inline QMat rref(QMat m) {
  if (m.empty()) return m;
  const size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Rat inv = Rat(1) / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  m.resize(rank);
  return m;
}

inline int qrank(const QMat& m) { return static_cast<int>(rref(m).size()); }

/// Basis of the null space {x : m x = 0}, in RREF.
inline QMat null_space(const QMat& m, int cols) {
  QMat r = rref(m);
  std::vector<int> pivot(cols, -1);
  for (size_t row = 0; row < r.size(); ++row)
    for (int c = 0; c < cols; ++c)
      if (r[row][c] != 0) {
        pivot[c] = static_cast<int>(row);
        break;
      }
  QMat basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot[c] >= 0) continue;
    QVec b(cols, Rat(0));
    b[c] = Rat(1);
    for (int cc = 0; cc < cols; ++cc)
      if (pivot[cc] >= 0) b[cc] = -r[pivot[cc]][c];
    basis.push_back(std::move(b));
  }
  return rref(basis);
}

inline QMat qmat_inverse(const QMat& a) {
  const size_t n = a.size();
  QMat aug = qmat(static_cast<int>(n), static_cast<int>(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = Rat(1);
  }
  aug = rref(std::move(aug));
  if (aug.size() != n) throw ValidationError("qmat_inverse: singular matrix");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (aug[i][j] != (i == j ? Rat(1) : Rat(0)))
        throw ValidationError("qmat_inverse: singular matrix");
  QMat inv = qmat(static_cast<int>(n), static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------
// Frobenius algebras
// ---------------------------------------------------------------------------

/// Commutative-or-not finite-dimensional algebra with structure constants
/// gamma[i][j][k] (B_i B_j = sum_k gamma_ijk B_k), a counit vector eta, and
/// the induced form sigma_ij = sum_s gamma_ij^s eta_s.
struct FrobeniusAlgebra {
  int n = 0;
  std::vector<QMat> gamma;  // gamma[i][j][k]
  QVec counit;
  int unit_index = 0;

  QMat form() const {
    QMat sigma = qmat(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) sigma[i][j] += gamma[i][j][s] * counit[s];
    return sigma;
  }

  QVec mul(const QVec& a, const QVec& b) const {
    QVec out(n, Rat(0));
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        for (int k = 0; k < n; ++k) out[k] += a[i] * b[j] * gamma[i][j][k];
      }
    }
    return out;
  }

  bool is_commutative() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (gamma[i][j][k] != gamma[j][i][k]) return false;
    return true;
  }

  /// The three 2-dimensional real algebras; basis (1, b) with b^2 = square.
  static FrobeniusAlgebra two_dim(int64_t b_square, QVec counit) {
    FrobeniusAlgebra a;
    a.n = 2;
    a.gamma.assign(2, qmat(2, 2));
    a.gamma[0][0][0] = 1;
    a.gamma[0][1][1] = 1;
    a.gamma[1][0][1] = 1;
    a.gamma[1][1][0] = Rat(b_square);
    a.counit = std::move(counit);
    return a;
  }
  static FrobeniusAlgebra complex_numbers() { return two_dim(-1, {Rat(1), Rat(0)}); }
  static FrobeniusAlgebra paracomplex_numbers() { return two_dim(1, {Rat(1), Rat(0)}); }
  static FrobeniusAlgebra dual_numbers() { return two_dim(0, {Rat(0), Rat(1)}); }
};

inline QMat frobenius_form(const FrobeniusAlgebra& a) { return a.form(); }

/// sigma(ab, c) = sigma(a, bc) on every basis triple, exactly, and sigma
/// has full rank.
inline bool frobenius_check(const FrobeniusAlgebra& a) {
  QMat sigma = a.form();
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      for (int k = 0; k < a.n; ++k) {
        Rat lhs(0), rhs(0);
        for (int s = 0; s < a.n; ++s) {
          lhs += a.gamma[i][j][s] * sigma[s][k];
          rhs += a.gamma[j][k][s] * sigma[i][s];
        }
        if (lhs != rhs) return false;
      }
  return qrank(sigma) == a.n;
}

// ---------------------------------------------------------------------------
// Clifford algebras
// ---------------------------------------------------------------------------

/// Cl_{p,q}: generators B_1..B_{p+q}, the first p squaring to +1, the rest
/// to -1; basis blades indexed by subsets of {1..p+q} as bitmasks.
struct CliffordAlgebra {
  int p = 0, q = 0;

  int gens() const { return p + q; }
  size_t dim() const { return size_t(1) << gens(); }

  int metric(int i) const { return i < p ? 1 : -1; }  // B_{i+1}^2

  /// Product of basis blades: sign and resulting blade.
  std::pair<int64_t, uint32_t> blade_mul(uint32_t a, uint32_t b) const {
    int64_t sign = 1;
    // reordering sign: for each generator in b, count generators of a above it
    for (int i = 0; i < gens(); ++i) {
      if (!(b & (1u << i))) continue;
      uint32_t higher = a >> (i + 1);
      int swaps = std::popcount(higher);
      if (swaps & 1) sign = -sign;
    }
    // squared generators contribute the metric
    uint32_t common = a & b;
    for (int i = 0; i < gens(); ++i)
      if (common & (1u << i)) sign *= metric(i);
    return {sign, a ^ b};
  }

  std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    std::vector<Rat> out(dim(), Rat(0));
    for (uint32_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (uint32_t j = 0; j < dim(); ++j) {
        if (b[j] == 0) continue;
        auto [sign, blade] = blade_mul(i, j);
        out[blade] += Rat(sign) * a[i] * b[j];
      }
    }
    return out;
  }

  std::vector<Rat> basis_elem(uint32_t blade) const {
    std::vector<Rat> e(dim(), Rat(0));
    e[blade] = Rat(1);
    return e;
  }
  std::vector<Rat> generator(int i) const { return basis_elem(1u << i); }

  /// View as a Frobenius algebra with the trace form (counit = coefficient
  /// of the empty blade).
  FrobeniusAlgebra to_frobenius() const {
    FrobeniusAlgebra f;
    f.n = static_cast<int>(dim());
    f.gamma.assign(f.n, qmat(f.n, f.n));
    for (uint32_t i = 0; i < dim(); ++i)
      for (uint32_t j = 0; j < dim(); ++j) {
        auto [sign, blade] = blade_mul(i, j);
        f.gamma[i][j][blade] = Rat(sign);
      }
    f.counit.assign(f.n, Rat(0));
    f.counit[0] = Rat(1);
    return f;
  }
};

inline std::vector<Rat> clifford_mul(const CliffordAlgebra& cl,
                                     const std::vector<Rat>& a,
                                     const std::vector<Rat>& b) {
  if (a.size() != cl.dim() || b.size() != cl.dim())
    throw ValidationError("clifford_mul: element of a different algebra");
  return cl.mul(a, b);
}

/// Anticommutation relations B_i B_j + B_j B_i = 2 <B_i,B_j> and
/// associativity on all basis-blade triples, exactly.
inline bool clifford_check(const CliffordAlgebra& cl) {
  const int n = cl.gens();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto ab = cl.mul(cl.generator(i), cl.generator(j));
      auto ba = cl.mul(cl.generator(j), cl.generator(i));
      for (size_t k = 0; k < cl.dim(); ++k) ab[k] += ba[k];
      // expected: 2 delta_ij metric(i) times the unit blade
      for (size_t k = 0; k < cl.dim(); ++k) {
        Rat expect = (k == 0 && i == j) ? Rat(2 * cl.metric(i)) : Rat(0);
        if (ab[k] != expect) return false;
      }
    }
  for (uint32_t a = 0; a < cl.dim(); ++a)
    for (uint32_t b = 0; b < cl.dim(); ++b)
      for (uint32_t c = 0; c < cl.dim(); ++c) {
        auto [s1, ab] = cl.blade_mul(a, b);
        auto [s2, labc] = cl.blade_mul(ab, c);
        auto [s3, bc] = cl.blade_mul(b, c);
        auto [s4, rabc] = cl.blade_mul(a, bc);
        if (labc != rabc || s1 * s2 != s3 * s4) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Paracomplex numbers and module splitting
// ---------------------------------------------------------------------------

struct Paracomplex {
  double x = 0, y = 0;
};

/// (x,y)(x',y') = (xx' + yy', xy' + yx').
inline Paracomplex para_mul(const Paracomplex& z, const Paracomplex& w) {
  return {z.x * w.x + z.y * w.y, z.x * w.y + z.y * w.x};
}

inline Paracomplex para_conj(const Paracomplex& z) { return {z.x, -z.y}; }

struct ParaSplit {
  QMat plus;   // rows span the +1 eigenspace
  QMat minus;  // rows span the -1 eigenspace
};

/// Splits a module along an involution E (E^2 = I) into the +-1 eigenspaces
/// via the idempotents (I +- E)/2; dims add up to the full dimension and E
/// acts as +-1 on each part, exactly.
inline ParaSplit para_split(const QMat& E) {
  const int n = static_cast<int>(E.size());
  // validate E^2 = I
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat acc(0);
      for (int k = 0; k < n; ++k) acc += E[i][k] * E[k][j];
      if (acc != (i == j ? Rat(1) : Rat(0)))
        throw ValidationError("para_split: E^2 != I");
    }
  auto project = [&](int s) {
    QMat rows = qmat(n, n);  // rows of (I + sE)/2, whose row space is the eigenspace
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rows[i][j] = ((i == j ? Rat(1) : Rat(0)) + Rat(s) * E[i][j]) / 2;
    return rref(std::move(rows));
  };
  ParaSplit out{project(1), project(-1)};
  if (out.plus.size() + out.minus.size() != static_cast<size_t>(n))
    throw ValidationError("para_split: eigenspace dimensions do not add up");
  return out;
}

// ---------------------------------------------------------------------------
// Frobenius-module tensors
// ---------------------------------------------------------------------------

struct ModuleTensors {
  int dim = 0;                      // r * n
  QMat g;                           // blockwise sigma
  std::vector<QMat> a3;             // a3[i][j][k], totally symmetric
  std::function<QVec(const QVec&, const QVec&)> circ;
};

/// Tensors on the rank-r free module over a Frobenius algebra: blockwise
/// metric from sigma, A3_{abc} = sigma(B_a B_b, B_c) in each slot, and the
/// multiplication X o Y = A3 g^{-1} acting slotwise.
inline ModuleTensors module_tensors(const FrobeniusAlgebra& alg, int r) {
  QMat sigma = alg.form();
  if (qrank(sigma) != alg.n)
    throw ValidationError("module_tensors: degenerate Frobenius form");
  const int n = alg.n, N = r * n;
  ModuleTensors mt;
  mt.dim = N;
  mt.g = qmat(N, N);
  mt.a3.assign(N, qmat(N, N));
  for (int s = 0; s < r; ++s)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        mt.g[s * n + a][s * n + b] = sigma[a][b];
        for (int c = 0; c < n; ++c) {
          Rat acc(0);
          for (int u = 0; u < n; ++u) acc += alg.gamma[a][b][u] * sigma[u][c];
          mt.a3[s * n + a][s * n + b][s * n + c] = acc;
        }
      }
  mt.circ = [alg, r, n](const QVec& X, const QVec& Y) {
    QVec out(r * n, Rat(0));
    for (int s = 0; s < r; ++s) {
      QVec xs(X.begin() + s * n, X.begin() + (s + 1) * n);
      QVec ys(Y.begin() + s * n, Y.begin() + (s + 1) * n);
      QVec prod = alg.mul(xs, ys);
      for (int c = 0; c < n; ++c) out[s * n + c] = prod[c];
    }
    return out;
  };
  return mt;
}

// ---------------------------------------------------------------------------
// Quadratic algebras
// ---------------------------------------------------------------------------

/// Quadratic algebra presented by its generator dimension and the relation
/// subspace R in A_1 tensor A_1, stored as an RREF basis matrix with rows
/// of length d^2 (index (i,j) flattened as i*d + j).
struct QuadraticAlgebra {
  int d = 0;
  QMat rel;  // canonical RREF rows

  static QuadraticAlgebra make(int d, QMat rel_rows) {
    for (auto& row : rel_rows)
      if (row.size() != size_t(d) * size_t(d))
        throw ValidationError("QuadraticAlgebra: wrong relation row length");
    return {d, rref(std::move(rel_rows))};
  }

  /// K = k[t]: one generator, no relations.
  static QuadraticAlgebra polynomial_ring() { return {1, {}}; }
  /// 1 = k[tau]/(tau^2): one generator, the full relation space.
  static QuadraticAlgebra unit_algebra() {
    return {1, {{Rat(1)}}};
  }

  friend bool operator==(const QuadraticAlgebra& a, const QuadraticAlgebra& b) {
    return a.d == b.d && a.rel == b.rel;
  }
};

namespace detail {

/// S_23 permutation on a1 x a2 x b1 x b2 -> (a1 b1) x (a2 b2) coordinates.
inline QVec s23(const QVec& u, const QVec& v, int dA, int dB) {
  QVec out(size_t(dA) * dB * dA * dB, Rat(0));
  for (int a1 = 0; a1 < dA; ++a1)
    for (int a2 = 0; a2 < dA; ++a2) {
      Rat uc = u[a1 * dA + a2];
      if (uc == 0) continue;
      for (int b1 = 0; b1 < dB; ++b1)
        for (int b2 = 0; b2 < dB; ++b2) {
          Rat vc = v[b1 * dB + b2];
          if (vc == 0) continue;
          size_t idx = ((size_t(a1) * dB + b1) * dA + a2) * dB + b2;
          out[idx] += uc * vc;
        }
    }
  return out;
}

inline QVec unit_vec(int len, int at) {
  QVec v(len, Rat(0));
  v[at] = Rat(1);
  return v;
}

}  // namespace detail

/// Black product: relations S_23(R(A) tensor R(B)).
inline QuadraticAlgebra quad_black(const QuadraticAlgebra& A,
                                   const QuadraticAlgebra& B) {
  QMat rows;
  for (auto& u : A.rel)
    for (auto& v : B.rel) rows.push_back(detail::s23(u, v, A.d, B.d));
  return QuadraticAlgebra::make(A.d * B.d, std::move(rows));
}

/// White product: relations S_23(R(A) tensor B1^2 + A1^2 tensor R(B)).
inline QuadraticAlgebra quad_white(const QuadraticAlgebra& A,
                                   const QuadraticAlgebra& B) {
  QMat rows;
  const int fullB = B.d * B.d, fullA = A.d * A.d;
  for (auto& u : A.rel)
    for (int e = 0; e < fullB; ++e)
      rows.push_back(detail::s23(u, detail::unit_vec(fullB, e), A.d, B.d));
  for (int e = 0; e < fullA; ++e)
    for (auto& v : B.rel)
      rows.push_back(detail::s23(detail::unit_vec(fullA, e), v, A.d, B.d));
  return QuadraticAlgebra::make(A.d * B.d, std::move(rows));
}

/// Dualization: R(A^!) is the orthogonal complement of R(A) under the
/// coordinate pairing of A1 tensor A1 with its dual.
inline QuadraticAlgebra quad_dual(const QuadraticAlgebra& A) {
  return {A.d, null_space(A.rel, A.d * A.d)};
}

/// (A o B)^! = A^! black B^! as canonical subspaces — equivalently
/// (A black B)^! = A^! white B^!; checked exactly.
inline bool quad_duality_check(const QuadraticAlgebra& A,
                               const QuadraticAlgebra& B) {
  return quad_dual(quad_black(A, B)) == quad_white(quad_dual(A), quad_dual(B));
}

}  // namespace igz
