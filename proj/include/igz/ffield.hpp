#pragma once

/**
 * Exact arithmetic in finite fields F_{p^e}, additive characters into the
 * unit circle, trace maps, and fixed-branch logarithms of character values.
 *
 * Contexts are interned: FieldCtx::get(p, e) always returns the same
 * immutable object, whose modulus is the lexicographically smallest monic
 * irreducible of degree e over F_p (coefficient tuple compared high degree
 * first, constant term last).  This makes every derived value reproducible
 * across runs without external polynomial tables.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <vector>

#include "igz/common.hpp"

namespace igz {

/// Dense polynomial over Z/p, little-endian (index = degree).
using ZpPoly = std::vector<uint32_t>;

namespace zp {

inline void trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline ZpPoly mul(const ZpPoly& a, const ZpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
  }
  trim(r);
  return r;
}

/// a mod m, m monic.
inline ZpPoly mod(ZpPoly a, const ZpPoly& m, uint64_t p) {
  trim(a);
  const int dm = deg(m);
  while (deg(a) >= dm) {
    uint64_t lead = a.back();
    int shift = deg(a) - dm;
    for (int i = 0; i <= dm; ++i) {
      uint64_t sub = (lead * m[i]) % p;
      uint64_t cur = a[i + shift];
      a[i + shift] = static_cast<uint32_t>((cur + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline ZpPoly powmod(ZpPoly base, uint64_t n, const ZpPoly& m, uint64_t p) {
  ZpPoly r = {1};
  base = mod(std::move(base), m, p);
  while (n > 0) {
    if (n & 1) r = mod(mul(r, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    n >>= 1;
  }
  return r;
}

inline ZpPoly sub(ZpPoly a, const ZpPoly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<uint32_t>((a[i] + p - b[i]) % p);
  trim(a);
  return a;
}

inline ZpPoly gcd(ZpPoly a, ZpPoly b, uint64_t p) {
  trim(a);
  trim(b);
  auto inv_mod_p = [p](uint64_t x) {
    // Fermat: p prime.
    uint64_t r = 1, e = p - 2, base = x % p;
    while (e) {
      if (e & 1) r = (r * base) % p;
      base = (base * base) % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // reduce a mod b (b made monic first)
    uint64_t linv = inv_mod_p(b.back());
    ZpPoly bm = b;
    for (auto& c : bm) c = static_cast<uint32_t>((uint64_t(c) * linv) % p);
    a = mod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

}  // namespace zp

inline bool is_prime_u32(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FieldCtx {
 public:
  /// Interned context for F_{p^e}; validates p prime and 1 <= e <= 8.
  static const FieldCtx* get(uint32_t p, uint32_t e);

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint64_t q() const { return q_; }
  const ZpPoly& modulus() const { return modulus_; }

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

 private:
  FieldCtx(uint32_t p, uint32_t e, ZpPoly m)
      : p_(p), e_(e), modulus_(std::move(m)) {
    q_ = 1;
    for (uint32_t i = 0; i < e_; ++i) q_ *= p_;
  }
  uint32_t p_, e_;
  uint64_t q_;
  ZpPoly modulus_;
  friend struct FieldCtxRegistry;
};

/// f monic of degree e over F_p is irreducible iff gcd(f, x^{p^k} - x) = 1
/// for every k <= e/2.
inline bool is_irreducible(const ZpPoly& f, uint32_t p) {
  const int e = zp::deg(f);
  if (e < 1) return false;
  if (e == 1) return true;
  ZpPoly xq = {0, 1};  // iterated q-power of x
  for (int k = 1; k <= e / 2; ++k) {
    xq = zp::powmod(std::move(xq), p, f, p);
    ZpPoly g = zp::gcd(f, zp::sub(xq, {0, 1}, p), p);
    if (zp::deg(g) != 0) return false;
  }
  return true;
}

struct FieldCtxRegistry {
  static const FieldCtx* get(uint32_t p, uint32_t e) {
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FieldCtx>>
        reg;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = reg.find(key);
    if (it != reg.end()) return it->second.get();

    if (!is_prime_u32(p))
      throw ValidationError("ff_make: p = " + std::to_string(p) +
                            " is not prime");
    if (e < 1 || e > 8)
      throw ValidationError("ff_make: e = " + std::to_string(e) +
                            " out of range [1,8]");
    // Smallest monic irreducible in coefficient-tuple order (constant last):
    // the integer k = sum a_i p^i enumerates tuples (a_{e-1},...,a_0) in
    // ascending lex order.
    uint64_t pe = 1;
    for (uint32_t i = 0; i < e; ++i) pe *= p;
    ZpPoly found;
    for (uint64_t k = 0; k < pe; ++k) {
      ZpPoly f(e + 1, 0);
      uint64_t t = k;
      for (uint32_t i = 0; i < e; ++i) {
        f[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      f[e] = 1;
      if (is_irreducible(f, p)) {
        found = std::move(f);
        break;
      }
    }
    auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx(p, e, std::move(found)));
    const FieldCtx* raw = ctx.get();
    reg.emplace(key, std::move(ctx));
    return raw;
  }
};

inline const FieldCtx* FieldCtx::get(uint32_t p, uint32_t e) {
  return FieldCtxRegistry::get(p, e);
}

inline const FieldCtx* ff_make(uint32_t p, uint32_t e) {
  return FieldCtx::get(p, e);
}

class FqElem {
 public:
  FqElem() : ctx_(nullptr) {}
  explicit FqElem(const FieldCtx* ctx) : ctx_(ctx), c_(ctx->e(), 0) {}
  FqElem(const FieldCtx* ctx, int64_t c0) : ctx_(ctx), c_(ctx->e(), 0) {
    int64_t p = ctx->p();
    c_[0] = static_cast<uint32_t>(((c0 % p) + p) % p);
  }

  static FqElem from_coeffs(const FieldCtx* ctx, std::vector<uint32_t> c) {
    FqElem a(ctx);
    for (size_t i = 0; i < c.size() && i < a.c_.size(); ++i)
      a.c_[i] = c[i] % ctx->p();
    return a;
  }

  /// Element with base-p digits of idx as coefficients (idx < q).
  static FqElem from_index(const FieldCtx* ctx, uint64_t idx) {
    FqElem a(ctx);
    for (uint32_t i = 0; i < ctx->e(); ++i) {
      a.c_[i] = static_cast<uint32_t>(idx % ctx->p());
      idx /= ctx->p();
    }
    return a;
  }

  uint64_t index() const {
    uint64_t r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * ctx_->p() + c_[i];
    return r;
  }

  const FieldCtx* ctx() const { return ctx_; }
  const std::vector<uint32_t>& coeffs() const { return c_; }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }

  /// Integer representative in {0,...,p-1}; requires a prime-field value.
  uint32_t rep_prime() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0)
        throw ValidationError("rep_prime: value not in the prime field");
    return c_.empty() ? 0 : c_[0];
  }

  friend FqElem operator+(const FqElem& a, const FqElem& b) {
    a.check_same(b);
    FqElem r(a.ctx_);
    uint64_t p = a.ctx_->p();
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = static_cast<uint32_t>((uint64_t(a.c_[i]) + b.c_[i]) % p);
    return r;
  }
  friend FqElem operator-(const FqElem& a, const FqElem& b) {
    a.check_same(b);
    FqElem r(a.ctx_);
    uint64_t p = a.ctx_->p();
    for (size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = static_cast<uint32_t>((uint64_t(a.c_[i]) + p - b.c_[i]) % p);
    return r;
  }
  FqElem operator-() const {
    FqElem r(ctx_);
    uint64_t p = ctx_->p();
    for (size_t i = 0; i < c_.size(); ++i)
      r.c_[i] = static_cast<uint32_t>((p - c_[i]) % p);
    return r;
  }
  friend FqElem operator*(const FqElem& a, const FqElem& b) {
    a.check_same(b);
    ZpPoly prod = zp::mul(ZpPoly(a.c_.begin(), a.c_.end()),
                          ZpPoly(b.c_.begin(), b.c_.end()), a.ctx_->p());
    prod = zp::mod(std::move(prod), a.ctx_->modulus(), a.ctx_->p());
    prod.resize(a.ctx_->e(), 0);
    return from_coeffs(a.ctx_, std::move(prod));
  }
  FqElem& operator+=(const FqElem& b) { return *this = *this + b; }
  FqElem& operator-=(const FqElem& b) { return *this = *this - b; }
  FqElem& operator*=(const FqElem& b) { return *this = *this * b; }

  FqElem pow(uint64_t n) const {
    FqElem r(ctx_, 1), base = *this;
    while (n) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  FqElem inv() const {
    if (is_zero()) throw ValidationError("FqElem::inv: zero element");
    return pow(ctx_->q() - 2);
  }

  /// x -> x^{p^times} (field Frobenius iterated).
  FqElem frobenius(uint32_t times = 1) const {
    FqElem r = *this;
    for (uint32_t i = 0; i < times; ++i) r = r.pow(ctx_->p());
    return r;
  }

  /// n * a in characteristic p.
  friend FqElem operator*(int64_t n, const FqElem& a) {
    int64_t p = a.ctx_->p();
    int64_t m = ((n % p) + p) % p;
    return FqElem(a.ctx_, m) * a;
  }

  friend bool operator==(const FqElem& a, const FqElem& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
  }
  friend bool operator!=(const FqElem& a, const FqElem& b) {
    return !(a == b);
  }
  friend bool operator<(const FqElem& a, const FqElem& b) {
    return a.index() < b.index();
  }

 private:
  void check_same(const FqElem& b) const {
    if (ctx_ != b.ctx_)
      throw ValidationError("FqElem: mixed field contexts");
  }
  const FieldCtx* ctx_;
  std::vector<uint32_t> c_;
};

/// Relative trace F_{p^{from_e}} -> F_{p^{to_e}} computed inside a's
/// context: sum of the from_e/to_e Frobenius conjugates a^{(p^{to_e})^i}.
/// a must lie in the subfield F_{p^{from_e}}.
inline FqElem ff_trace_from(const FqElem& a, uint32_t from_e, uint32_t to_e) {
  const FieldCtx* ctx = a.ctx();
  if (to_e == 0 || from_e % to_e != 0 || ctx->e() % from_e != 0)
    throw ValidationError("ff_trace: " + std::to_string(to_e) +
                          " | " + std::to_string(from_e) + " | " +
                          std::to_string(ctx->e()) + " required");
  uint32_t steps = from_e / to_e;
  FqElem acc = a, frob = a;
  for (uint32_t i = 1; i < steps; ++i) {
    frob = frob.frobenius(to_e);
    acc += frob;
  }
  return acc;
}

/// Trace of the full context field onto the subfield F_{p^{sub_e}}.  The
/// result stays in a's context but is fixed by x -> x^{p^{sub_e}}.
inline FqElem ff_trace(const FqElem& a, uint32_t sub_e) {
  return ff_trace_from(a, a.ctx()->e(), sub_e);
}

// ---------------------------------------------------------------------------
// Additive characters
// ---------------------------------------------------------------------------

/// chi_j(a) = exp(2 pi i j rep(Tr_{F_q -> F_p}(a)) / p).  The j in Z/p
/// exhaust the additive dual; j = 0 is the trivial character.
struct AdditiveCharacter {
  const FieldCtx* ctx;
  uint32_t j;
  AdditiveCharacter(const FieldCtx* c, uint32_t freq) : ctx(c), j(freq % c->p()) {}
  bool trivial() const { return j == 0; }
};

namespace detail {
/// rep(Tr_{a.ctx -> F_p}(a)), valid for a in any extension of chi's context.
inline uint32_t char_rep(const AdditiveCharacter& chi, const FqElem& a) {
  if (a.ctx()->p() != chi.ctx->p() || a.ctx()->e() % chi.ctx->e() != 0)
    throw ValidationError("character: mismatched field contexts");
  FqElem t = ff_trace(a, 1);
  return t.rep_prime();
}
}  // namespace detail

inline Complex char_eval(const AdditiveCharacter& chi, const FqElem& a) {
  uint32_t r = detail::char_rep(chi, a);
  double theta = 2.0 * std::numbers::pi * double(chi.j) * double(r) /
                 double(chi.ctx->p());
  return std::polar(1.0, theta);
}

/// Fixed-branch logarithm: 2 pi i j rep(Tr(a)) / p.  Additive only modulo
/// 2 pi i Z; exp(log_char(chi,a)) == char_eval(chi,a) exactly.
inline Complex log_char(const AdditiveCharacter& chi, const FqElem& a) {
  uint32_t r = detail::char_rep(chi, a);
  double theta = 2.0 * std::numbers::pi * double(chi.j) * double(r) /
                 double(chi.ctx->p());
  return Complex(0.0, theta);
}

/// Sum of chi over all of F_q: q for the trivial character, 0 otherwise.
inline Complex char_sum(const AdditiveCharacter& chi) {
  KahanSum s;
  for (uint64_t i = 0; i < chi.ctx->q(); ++i)
    s.add(char_eval(chi, FqElem::from_index(chi.ctx, i)));
  return s.value();
}

// ---------------------------------------------------------------------------
// Subfield embeddings F_{p^e} -> F_{p^{e*m}}
// ---------------------------------------------------------------------------

/// Fixed embedding of a base context into an extension context, realized by
/// the smallest root (by element index) of the base modulus in the
/// extension.  restrict() inverts it on the embedded subfield.
class Embedding {
 public:
  Embedding(const FieldCtx* base, const FieldCtx* ext) : base_(base), ext_(ext) {
    if (base->p() != ext->p() || ext->e() % base->e() != 0)
      throw ValidationError("Embedding: not a subfield pair");
    if (base->e() == 1) return;  // constants embed as constants
    if (ext->q() > 10000000ull)
      throw BudgetError("Embedding: extension too large for root scan");
    const ZpPoly& m = base->modulus();
    for (uint64_t i = 0; i < ext->q(); ++i) {
      FqElem cand = FqElem::from_index(ext, i);
      // evaluate base modulus (prime coefficients) at cand
      FqElem acc(ext);
      for (size_t d = m.size(); d-- > 0;)
        acc = acc * cand + FqElem(ext, m[d]);
      if (acc.is_zero()) {
        root_ = cand;
        break;
      }
    }
    // Powers of the root give the F_p-linear embedding matrix.
    powers_.resize(base->e(), FqElem(ext, 1));
    for (uint32_t i = 1; i < base->e(); ++i) powers_[i] = powers_[i - 1] * root_;
  }

  FqElem embed(const FqElem& a) const {
    if (a.ctx() != base_) throw ValidationError("Embedding: wrong base element");
    if (base_->e() == 1) return FqElem(ext_, a.coeffs()[0]);
    FqElem acc(ext_);
    for (uint32_t i = 0; i < base_->e(); ++i)
      acc += int64_t(a.coeffs()[i]) * powers_[i];
    return acc;
  }

  /// Inverse of embed on its image; throws if b is not in the subfield.
  FqElem restrict(const FqElem& b) const {
    if (b.ctx() != ext_) throw ValidationError("Embedding: wrong ext element");
    if (base_->e() == 1) {
      for (size_t i = 1; i < b.coeffs().size(); ++i)
        if (b.coeffs()[i] != 0)
          throw ValidationError("Embedding::restrict: value not in subfield");
      return FqElem(base_, b.coeffs().empty() ? 0 : b.coeffs()[0]);
    }
    // Solve sum_i a_i * root^i = b over F_p by Gaussian elimination.
    const uint32_t rows = ext_->e(), cols = base_->e();
    const int64_t p = base_->p();
    std::vector<std::vector<int64_t>> M(rows, std::vector<int64_t>(cols + 1, 0));
    for (uint32_t c = 0; c < cols; ++c)
      for (uint32_t r = 0; r < rows; ++r) M[r][c] = powers_[c].coeffs()[r];
    for (uint32_t r = 0; r < rows; ++r) M[r][cols] = b.coeffs()[r];
    uint32_t rank = 0;
    for (uint32_t c = 0; c < cols && rank < rows; ++c) {
      uint32_t piv = rank;
      while (piv < rows && M[piv][c] % p == 0) ++piv;
      if (piv == rows) continue;
      std::swap(M[piv], M[rank]);
      // normalize
      int64_t invp = 1, basep = M[rank][c] % p, ee = p - 2;
      while (ee) {
        if (ee & 1) invp = invp * basep % p;
        basep = basep * basep % p;
        ee >>= 1;
      }
      for (auto& v : M[rank]) v = ((v * invp) % p + p) % p;
      for (uint32_t r = 0; r < rows; ++r) {
        if (r == rank || M[r][c] == 0) continue;
        int64_t f = M[r][c];
        for (uint32_t k = 0; k <= cols; ++k)
          M[r][k] = ((M[r][k] - f * M[rank][k]) % p + p) % p;
      }
      ++rank;
    }
    std::vector<uint32_t> sol(cols, 0);
    for (uint32_t r = 0; r < rows; ++r) {
      uint32_t lead = cols + 1;
      for (uint32_t c = 0; c <= cols; ++c)
        if (M[r][c] != 0) {
          lead = c;
          break;
        }
      if (lead == cols)
        throw ValidationError("Embedding::restrict: value not in subfield");
      if (lead < cols) sol[lead] = static_cast<uint32_t>(M[r][cols]);
    }
    return FqElem::from_coeffs(base_, std::move(sol));
  }

  const FieldCtx* base() const { return base_; }
  const FieldCtx* ext() const { return ext_; }

 private:
  const FieldCtx* base_;
  const FieldCtx* ext_;
  FqElem root_;
  std::vector<FqElem> powers_;
};

inline const Embedding& embedding(const FieldCtx* base, const FieldCtx* ext) {
  static std::map<std::pair<const FieldCtx*, const FieldCtx*>,
                  std::unique_ptr<Embedding>>
      reg;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(base, ext);
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, std::make_unique<Embedding>(base, ext)).first;
  return *it->second;
}

}  // namespace igz
