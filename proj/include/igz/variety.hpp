#pragma once

/**
 * Finite presentations of affine and projective varieties over F_q with a
 * potential f: X -> A^1, plus the enumerations everything downstream is
 * built on: rational points over extensions, closed points (Frobenius
 * orbits), symmetric-product points as effective zero-cycles, and first-jet
 * points.
 *
 * All enumeration is deterministic: field elements are ordered by their
 * base-p digit index, points lexicographically by coordinate tuple, and
 * every derived list inherits that order.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "igz/poly.hpp"

namespace igz {

enum class VKind { Point, AffineSpace, ProjSpace, Affine, Projective };

using PointFq = std::vector<FqElem>;

struct VarietySpec {
  const FieldCtx* ctx = nullptr;
  VKind kind = VKind::Point;
  int ambient = 0;               // affine coordinates; projective uses ambient+1
  std::vector<MPoly> eqs;        // empty for builtins

  static VarietySpec point(const FieldCtx* c) { return {c, VKind::Point, 0, {}}; }
  static VarietySpec affine_space(const FieldCtx* c, int n) {
    if (n < 0) throw ValidationError("affine_space: negative dimension");
    return {c, VKind::AffineSpace, n, {}};
  }
  static VarietySpec proj_space(const FieldCtx* c, int n) {
    if (n < 1) throw ValidationError("proj_space: dimension must be >= 1");
    return {c, VKind::ProjSpace, n, {}};
  }
  static VarietySpec affine(const FieldCtx* c, int n, std::vector<MPoly> eqs) {
    for (auto& e : eqs)
      if (e.nvars() != n || e.ctx() != c)
        throw ValidationError("affine variety: equation over wrong ring");
    VarietySpec v{c, VKind::Affine, n, std::move(eqs)};
    v.normalize();
    return v;
  }
  static VarietySpec projective(const FieldCtx* c, int n, std::vector<MPoly> eqs) {
    for (auto& e : eqs) {
      if (e.nvars() != n + 1 || e.ctx() != c)
        throw ValidationError("projective variety: equation over wrong ring");
      if (!e.is_homogeneous())
        throw ValidationError("projective variety: non-homogeneous equation");
    }
    VarietySpec v{c, VKind::Projective, n, std::move(eqs)};
    v.normalize();
    return v;
  }

  int ncoords() const {
    switch (kind) {
      case VKind::Point: return 0;
      case VKind::AffineSpace:
      case VKind::Affine: return ambient;
      case VKind::ProjSpace:
      case VKind::Projective: return ambient + 1;
    }
    return 0;
  }

  bool is_affine_kind() const {
    return kind == VKind::Point || kind == VKind::AffineSpace ||
           kind == VKind::Affine;
  }

  /// Upper bound on dim X, used for convergence/tail heuristics.
  int dim_hint() const {
    switch (kind) {
      case VKind::Point: return 0;
      case VKind::AffineSpace:
      case VKind::ProjSpace: return ambient;
      case VKind::Affine: return std::max(0, ambient - static_cast<int>(eqs.size()));
      case VKind::Projective:
        return std::max(0, ambient - static_cast<int>(eqs.size()));
    }
    return 0;
  }

  std::string key() const {
    std::string k = std::to_string(ctx->p()) + "^" + std::to_string(ctx->e()) +
                    "|" + std::to_string(static_cast<int>(kind)) + "|" +
                    std::to_string(ambient) + "|";
    for (auto& e : eqs) k += e.key() + "&";
    return k;
  }

 private:
  void normalize() {
    std::sort(eqs.begin(), eqs.end(),
              [](const MPoly& a, const MPoly& b) { return a.key() < b.key(); });
    eqs.erase(std::unique(eqs.begin(), eqs.end()), eqs.end());
    std::erase_if(eqs, [](const MPoly& e) { return e.is_zero(); });
  }
};

using Potential = MPoly;

/// Validates a potential against a variety: variable count, base field, and
/// (for projective kinds) the zero-only restriction.
inline void check_potential(const VarietySpec& X, const Potential& f) {
  if (f.is_zero()) return;
  if (f.ctx() != X.ctx || f.nvars() != X.ncoords())
    throw ValidationError("potential: wrong ring for this variety");
  if (!X.is_affine_kind())
    throw ValidationError(
        "potential: projective varieties only admit the zero potential");
}

inline Potential zero_potential(const VarietySpec& X) {
  return MPoly(X.ctx, X.ncoords());
}

// ---------------------------------------------------------------------------
// Point enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline const FieldCtx* ext_ctx(const VarietySpec& X, uint32_t m) {
  uint32_t ee = X.ctx->e() * m;
  if (ee > 8)
    throw BudgetError("enumeration over F_{p^" + std::to_string(ee) +
                      "} exceeds the desk-scale extension bound (e <= 8)");
  return FieldCtx::get(X.ctx->p(), ee);
}

/// Walk the affine grid ctx^n in lexicographic order (first coordinate most
/// significant), calling visit(span) for each tuple.
template <class Visit>
void grid_walk(const FieldCtx* ctx, int n, Visit&& visit) {
  std::vector<uint64_t> idx(n, 0);
  std::vector<FqElem> pt;
  pt.reserve(n);
  for (int i = 0; i < n; ++i) pt.emplace_back(ctx);
  const uint64_t q = ctx->q();
  for (;;) {
    visit(std::span<const FqElem>(pt));
    int i = n - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < q) {
        pt[i] = FqElem::from_index(ctx, idx[i]);
        break;
      }
      idx[i] = 0;
      pt[i] = FqElem(ctx);
    }
    if (i < 0) break;
  }
}

}  // namespace detail

/// All F_{q^m}-rational points, lexicographic.  Projective points are the
/// normalized representatives with first nonzero coordinate 1.
inline std::vector<PointFq> points(const VarietySpec& X, uint32_t m) {
  if (m < 1) throw ValidationError("points: m must be >= 1");
  std::vector<PointFq> out;
  if (X.kind == VKind::Point) {
    out.emplace_back();  // the unique point, no coordinates, any extension
    return out;
  }
  const FieldCtx* ectx = detail::ext_ctx(X, m);
  const Embedding& emb = embedding(X.ctx, ectx);
  const int nc = X.ncoords();
  checked_pow(ectx->q(), nc, enum_budget(), "points enumeration");
  if (X.kind == VKind::AffineSpace || X.kind == VKind::Affine) {
    detail::grid_walk(ectx, nc, [&](std::span<const FqElem> pt) {
      for (const auto& e : X.eqs)
        if (!e.eval_ext(emb, pt).is_zero()) return;
      out.emplace_back(pt.begin(), pt.end());
    });
    return out;
  }
  // Projective: pivot blocks (0,..,0,1,free...) emitted with pivot
  // descending, which is globally lexicographic.
  for (int pivot = nc - 1; pivot >= 0; --pivot) {
    int free_coords = nc - 1 - pivot;
    detail::grid_walk(ectx, free_coords, [&](std::span<const FqElem> tail) {
      PointFq pt;
      pt.reserve(nc);
      for (int i = 0; i < pivot; ++i) pt.emplace_back(ectx);
      pt.emplace_back(ectx, 1);
      pt.insert(pt.end(), tail.begin(), tail.end());
      for (const auto& e : X.eqs)
        if (!e.eval_ext(emb, pt).is_zero()) return;
      out.push_back(std::move(pt));
    });
  }
  return out;
}

/// card X(F_{q^m}); closed forms for the builtin kinds, enumeration else.
inline uint64_t count_points(const VarietySpec& X, uint32_t m) {
  const uint64_t q = X.ctx->q();
  switch (X.kind) {
    case VKind::Point:
      return 1;
    case VKind::AffineSpace:
      return checked_pow(q, m * X.ambient, uint64_t(1) << 62, "point count");
    case VKind::ProjSpace: {
      uint64_t qm = checked_pow(q, m, uint64_t(1) << 55, "point count");
      uint64_t acc = 0, pw = 1;
      for (int k = 0; k <= X.ambient; ++k) {
        acc += pw;
        pw *= qm;
      }
      return acc;
    }
    default:
      return points(X, m).size();
  }
}

// ---------------------------------------------------------------------------
// Closed points
// ---------------------------------------------------------------------------

struct ClosedPoint {
  int degree = 1;            // size of the Frobenius orbit
  PointFq rep;               // lex-smallest orbit representative, over F_{q^degree}
  FqElem traced_value;       // Tr_{q^r -> q} f(rep), in the base context
};

namespace detail {

inline std::vector<uint64_t> point_index(const PointFq& pt) {
  std::vector<uint64_t> v;
  v.reserve(pt.size());
  for (auto& c : pt) v.push_back(c.index());
  return v;
}

inline PointFq frobenius_point(const VarietySpec& X, const PointFq& pt,
                               uint32_t base_e) {
  PointFq r;
  r.reserve(pt.size());
  for (auto& c : pt) r.push_back(c.frobenius(base_e));
  if (!X.is_affine_kind() && !r.empty()) {
    // re-normalize the projective representative
    size_t piv = 0;
    while (piv < r.size() && r[piv].is_zero()) ++piv;
    FqElem inv = r[piv].inv();
    for (auto& c : r) c = inv * c;
  }
  return r;
}

/// Trace an extension value down to the base context.
inline FqElem trace_to_base(const VarietySpec& X, const FqElem& v, uint32_t m) {
  const FieldCtx* ectx = v.ctx();
  FqElem t = ff_trace(v, X.ctx->e());  // fixed by x -> x^q, still in ext ctx
  (void)m;
  return embedding(X.ctx, ectx).restrict(t);
}

}  // namespace detail

/// Traced value of an arbitrary polynomial g at a closed point:
/// Tr_{q^r -> q} g(rep).  Frobenius-invariant, so representative-independent.
inline FqElem closed_point_value(const VarietySpec& X, const ClosedPoint& cp,
                                 const MPoly& g) {
  if (g.is_zero()) return FqElem(X.ctx);
  const FieldCtx* ectx = FieldCtx::get(X.ctx->p(), X.ctx->e() * cp.degree);
  const Embedding& emb = embedding(X.ctx, ectx);
  FqElem v = g.eval_ext(emb, cp.rep);
  return detail::trace_to_base(X, v, cp.degree);
}

/// One entry per Frobenius orbit of size r <= R, ordered by (degree, rep).
inline std::vector<ClosedPoint> closed_points(const VarietySpec& X,
                                              const Potential& f, uint32_t R) {
  check_potential(X, f);
  std::vector<ClosedPoint> out;
  for (uint32_t r = 1; r <= R; ++r) {
    auto pts = points(X, r);
    std::set<std::vector<uint64_t>> seen;
    for (auto& pt : pts) {
      auto key = detail::point_index(pt);
      if (seen.count(key)) continue;
      // walk the orbit
      PointFq cur = pt, best = pt;
      uint32_t size = 0;
      do {
        seen.insert(detail::point_index(cur));
        if (detail::point_index(cur) < detail::point_index(best)) best = cur;
        cur = detail::frobenius_point(X, cur, X.ctx->e());
        ++size;
      } while (detail::point_index(cur) != key);
      if (size != r) continue;  // counted at its own degree
      ClosedPoint cp;
      cp.degree = static_cast<int>(r);
      cp.rep = std::move(best);
      cp.traced_value = closed_point_value(X, cp, f.is_zero() ? zero_potential(X) : f);
      out.push_back(std::move(cp));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetric products as effective zero-cycles
// ---------------------------------------------------------------------------

struct SymPoint {
  std::vector<std::pair<size_t, int>> parts;  // (closed-point idx, multiplicity)
  int total_degree = 0;
  FqElem value;  // sum of mult * traced_value, in the base context
};

/// Value of an arbitrary potential g on a symmetric-product point, assembled
/// from traced closed-point data.
inline FqElem sym_point_value(const VarietySpec& X, const SymPoint& sp,
                              const std::vector<ClosedPoint>& cps,
                              const MPoly& g) {
  FqElem acc(X.ctx);
  for (auto& [idx, mult] : sp.parts)
    acc += int64_t(mult) * closed_point_value(X, cps[idx], g);
  return acc;
}

/// All multisets of closed points with total degree n; count equals the t^n
/// coefficient of the Hasse-Weil zeta series.
inline std::vector<SymPoint> sym_points(const VarietySpec& X, const Potential& f,
                                        int n, uint32_t R,
                                        const std::vector<ClosedPoint>* cps0 = nullptr) {
  if (n < 0) throw ValidationError("sym_points: negative degree");
  if (R < static_cast<uint32_t>(n))
    throw ValidationError("sym_points: R must be >= n");
  std::vector<ClosedPoint> local;
  const std::vector<ClosedPoint>* cps = cps0;
  if (!cps) {
    local = closed_points(X, f, n == 0 ? 1 : n);
    cps = &local;
  }
  std::vector<SymPoint> out;
  std::vector<std::pair<size_t, int>> stack;

  // multiplicity vectors in ascending lex order over the closed-point list
  auto rec = [&](auto&& self, size_t i, int remaining) -> void {
    if (remaining == 0) {
      SymPoint sp;
      sp.parts = stack;
      sp.total_degree = n;
      FqElem acc(X.ctx);
      for (auto& [idx, mult] : sp.parts)
        acc += int64_t(mult) * (*cps)[idx].traced_value;
      sp.value = acc;
      out.push_back(std::move(sp));
      return;
    }
    if (i >= cps->size()) return;
    int deg = (*cps)[i].degree;
    for (int mult = 0; mult * deg <= remaining; ++mult) {
      if (mult > 0) stack.emplace_back(i, mult);
      self(self, i + 1, remaining - mult * deg);
      if (mult > 0) stack.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

// ---------------------------------------------------------------------------
// First jets (tangent vectors)
// ---------------------------------------------------------------------------

struct JetPoint {
  PointFq x;         // base point in X(F_q)
  PointFq v;         // tangent vector, Jac(x) v = 0
  FqElem f_value;    // f(x)
  FqElem df_value;   // df_x(v)
};

namespace detail {

/// Kernel basis of a k x n matrix over F_q, reduced and deterministic.
inline std::vector<PointFq> kernel_basis(const FieldCtx* ctx,
                                         std::vector<PointFq> M, int n) {
  const size_t k = M.size();
  // Gaussian elimination to RREF
  size_t rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < n && rank < k; ++c) {
    size_t piv = rank;
    while (piv < k && M[piv][c].is_zero()) ++piv;
    if (piv == k) continue;
    std::swap(M[piv], M[rank]);
    FqElem inv = M[rank][c].inv();
    for (int j = 0; j < n; ++j) M[rank][j] = inv * M[rank][j];
    for (size_t r = 0; r < k; ++r) {
      if (r == rank || M[r][c].is_zero()) continue;
      FqElem f = M[r][c];
      for (int j = 0; j < n; ++j) M[r][j] = M[r][j] - f * M[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<PointFq> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    PointFq b(n, FqElem(ctx));
    b[c] = FqElem(ctx, 1);
    for (size_t r = 0; r < rank; ++r) b[pivot_col[r]] = -M[r][c];
    basis.push_back(std::move(b));
  }
  return basis;
}

}  // namespace detail

/// All (x, v) with x in X(F_q) and Jac(x) v = 0, affine kinds only.
inline std::vector<JetPoint> jet_points(const VarietySpec& X, const Potential& f) {
  if (!X.is_affine_kind())
    throw ValidationError("jet_points: unsupported kind (projective input)");
  check_potential(X, f);
  const int n = X.ncoords();
  const FieldCtx* ctx = X.ctx;
  MPoly fz = f.is_zero() ? zero_potential(X) : f;

  std::vector<MPoly> df;
  for (int j = 0; j < n; ++j) df.push_back(fz.derivative(j));
  std::vector<std::vector<MPoly>> jac;  // per equation, per variable
  for (auto& e : X.eqs) {
    std::vector<MPoly> row;
    for (int j = 0; j < n; ++j) row.push_back(e.derivative(j));
    jac.push_back(std::move(row));
  }

  std::vector<JetPoint> out;
  for (auto& x : points(X, 1)) {
    std::vector<PointFq> J;
    for (auto& row : jac) {
      PointFq r;
      for (int j = 0; j < n; ++j) r.push_back(row[j].eval(x));
      J.push_back(std::move(r));
    }
    auto basis = J.empty()
                     ? [&] {
                         std::vector<PointFq> full;
                         for (int c = 0; c < n; ++c) {
                           PointFq b(n, FqElem(ctx));
                           b[c] = FqElem(ctx, 1);
                           full.push_back(std::move(b));
                         }
                         return full;
                       }()
                     : detail::kernel_basis(ctx, std::move(J), n);
    FqElem fx = fz.eval(x);
    PointFq dfx;
    for (int j = 0; j < n; ++j) dfx.push_back(df[j].eval(x));

    // all F_q-combinations of the kernel basis, coefficient tuples ascending
    const uint64_t q = ctx->q();
    uint64_t total = checked_pow(q, static_cast<uint32_t>(basis.size()),
                                 enum_budget(), "jet enumeration");
    for (uint64_t code = 0; code < total; ++code) {
      PointFq v(n, FqElem(ctx));
      uint64_t t = code;
      for (auto& b : basis) {
        FqElem coef = FqElem::from_index(ctx, t % q);
        t /= q;
        for (int j = 0; j < n; ++j) v[j] += coef * b[j];
      }
      FqElem dfv(ctx);
      for (int j = 0; j < n; ++j) dfv += dfx[j] * v[j];
      out.push_back(JetPoint{x, std::move(v), fx, dfv});
    }
  }
  return out;
}

}  // namespace igz
