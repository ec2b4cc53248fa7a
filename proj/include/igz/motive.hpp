#pragma once

/**
 * The coarse class algebra of (variety, potential) pairs, motivic measures
 * (counting and character sums), and the zeta functions built from them:
 * Hasse-Weil, symmetric-product (Kapranov-style under a measure), and the
 * character-twisted zeta computed by two independent routes.
 *
 * No normal form is attempted for classes; equality is only ever observed
 * through measures.
 */

#include <optional>
#include <string>
#include <vector>

#include "igz/series.hpp"
#include "igz/variety.hpp"

namespace igz {

struct ExpGen {
  VarietySpec X;
  Potential f;

  std::string key() const { return X.key() + "!" + f.key(); }
};

/// Formal integer combination of (X, f) generators, kept sorted and merged.
class ExpClass {
 public:
  ExpClass() = default;

  static ExpClass generator(VarietySpec X, Potential f) {
    check_potential(X, f);
    if (f.is_zero()) f = zero_potential(X);
    ExpClass c;
    c.terms_.push_back({1, ExpGen{std::move(X), std::move(f)}});
    return c;
  }

  const std::vector<std::pair<int64_t, ExpGen>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend ExpClass operator+(const ExpClass& a, const ExpClass& b) {
    ExpClass r = a;
    for (auto& t : b.terms_) r.terms_.push_back(t);
    r.normalize();
    return r;
  }
  friend ExpClass operator-(const ExpClass& a, const ExpClass& b) {
    ExpClass r = a;
    for (auto& [n, g] : b.terms_) r.terms_.push_back({-n, g});
    r.normalize();
    return r;
  }
  friend ExpClass operator*(int64_t n, const ExpClass& a) {
    ExpClass r = a;
    for (auto& t : r.terms_) t.first *= n;
    r.normalize();
    return r;
  }

  /// Ring product: generator pairs map to (X1 x X2, f1 o pi1 + f2 o pi2).
  friend ExpClass operator*(const ExpClass& a, const ExpClass& b) {
    ExpClass r;
    for (auto& [na, ga] : a.terms_)
      for (auto& [nb, gb] : b.terms_) {
        ExpGen g = product_gen(ga, gb);
        r.terms_.push_back({na * nb, std::move(g)});
      }
    r.normalize();
    return r;
  }

  static ExpGen product_gen(const ExpGen& a, const ExpGen& b) {
    if (a.X.ctx != b.X.ctx)
      throw ValidationError("class product: base-field mismatch");
    if (!a.X.is_affine_kind() || !b.X.is_affine_kind())
      throw ValidationError("class product: affine kinds only");
    const int n1 = a.X.ncoords(), n2 = b.X.ncoords();
    const int n = n1 + n2;
    std::vector<MPoly> eqs;
    for (auto& e : a.X.eqs) eqs.push_back(e.extended(n, 0));
    for (auto& e : b.X.eqs) eqs.push_back(e.extended(n, n1));
    VarietySpec X;
    if (a.X.kind == VKind::Point && b.X.kind == VKind::Point)
      X = VarietySpec::point(a.X.ctx);
    else if (eqs.empty())
      X = VarietySpec::affine_space(a.X.ctx, n);
    else
      X = VarietySpec::affine(a.X.ctx, n, std::move(eqs));
    Potential f = a.f.extended(n, 0) + b.f.extended(n, n1);
    ExpGen g{std::move(X), std::move(f)};
    return g;
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& x, const auto& y) {
                return x.second.key() < y.second.key();
              });
    std::vector<std::pair<int64_t, ExpGen>> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().second.key() == t.second.key())
        merged.back().first += t.first;
      else
        merged.push_back(t);
    }
    std::erase_if(merged, [](const auto& t) { return t.first == 0; });
    terms_ = std::move(merged);
  }
  std::vector<std::pair<int64_t, ExpGen>> terms_;
};

inline ExpClass class_add(const ExpClass& a, const ExpClass& b) { return a + b; }
inline ExpClass class_mul(const ExpClass& a, const ExpClass& b) { return a * b; }

// ---------------------------------------------------------------------------
// Motivic measures
// ---------------------------------------------------------------------------

/// counting, or the character sum mu_chi(X,f) = sum_x chi(f(x)).
/// Counting is numerically the character measure with trivial chi.
struct MotivicMeasure {
  std::optional<AdditiveCharacter> chi;  // nullopt = counting

  static MotivicMeasure counting() { return {std::nullopt}; }
  static MotivicMeasure character(AdditiveCharacter c) { return {c}; }
  bool is_counting() const { return !chi.has_value() || chi->trivial(); }
};

inline Complex measure(const MotivicMeasure& mu, const ExpClass& c) {
  KahanSum total;
  for (auto& [n, g] : c.terms()) {
    Complex val;
    if (mu.is_counting()) {
      val = Complex(double(count_points(g.X, 1)), 0.0);
    } else {
      KahanSum s;
      for (auto& x : points(g.X, 1))
        s.add(char_eval(*mu.chi, g.f.eval(std::span<const FqElem>(x))));
      val = s.value();
    }
    total.add(double(n) * val);
  }
  return total.value();
}

// ---------------------------------------------------------------------------
// Zeta functions
// ---------------------------------------------------------------------------

/// Hasse-Weil zeta series exp(sum_m card X(F_{q^m}) t^m / m), exact.
inline QSeries hasse_weil(const VarietySpec& X, int N) {
  QSeries logz(N);
  for (int m = 1; m <= N; ++m) logz[m] = Rat(count_points(X, m), m);
  return logz.exp();
}

/// Symmetric-product route: sum_n [sum over S^n(X)(F_q) of chi(f^(n))] t^n.
inline CSeries zeta_mu(const VarietySpec& X, const Potential& f,
                       const MotivicMeasure& mu, int N) {
  check_potential(X, f);
  if (mu.is_counting()) return to_complex(hasse_weil(X, N));
  auto cps = closed_points(X, f, N == 0 ? 1 : N);
  CSeries z(N);
  for (int n = 0; n <= N; ++n) {
    KahanSum s;
    for (auto& sp : sym_points(X, f, n, std::max(n, 1), &cps))
      s.add(char_eval(*mu.chi, sp.value));
    z[n] = s.value();
  }
  return z;
}

/// Character-twisted zeta by two independent routes:
///   (a) the Euler product over closed points, prod (1 - chi(v_P) t^{deg P})^-1;
///   (b) exp(sum_m N_m t^m / m) with N_m = sum over X(F_{q^m}) of chi(Tr f(x))
/// asserted to agree coefficientwise to 1e-9; the Euler form is returned.
inline CSeries zeta_chi_euler(const VarietySpec& X, const Potential& f,
                              const AdditiveCharacter& chi, int N) {
  check_potential(X, f);

  // route (a)
  CSeries euler = CSeries::one(N);
  for (auto& cp : closed_points(X, f, N == 0 ? 1 : N)) {
    if (cp.degree > N) continue;
    Complex w = char_eval(chi, cp.traced_value);
    CSeries factor(N);
    Complex pw(1.0, 0.0);
    for (int k = 0; k * cp.degree <= N; ++k) {
      factor[k * cp.degree] = pw;
      pw *= w;
    }
    euler = euler * factor;
  }

  // route (b): direct exponential sums over extensions.  For the point
  // variety the sum collapses to chi(f)^m (the trace multiplies by m).
  const FieldCtx* base = X.ctx;
  CSeries logz(N);
  for (int m = 1; m <= N; ++m) {
    if (X.kind == VKind::Point) {
      Complex w = char_eval(chi, f.is_zero() ? FqElem(base)
                                             : f.eval(std::span<const FqElem>()));
      logz[m] = std::pow(w, m) / double(m);
      continue;
    }
    KahanSum nm;
    const FieldCtx* ectx = detail::ext_ctx(X, m);
    const Embedding& emb = embedding(base, ectx);
    for (auto& x : points(X, m))
      nm.add(char_eval(chi, f.is_zero()
                                ? FqElem(ectx)
                                : f.eval_ext(emb, std::span<const FqElem>(x))));
    logz[m] = nm.value() / double(m);
  }
  CSeries expo = logz.exp();

  double diff = euler.max_abs_diff(expo);
  if (diff > 1e-9)
    throw ConsistencyError(
        "zeta_chi_euler: Euler product and exponential form disagree by " +
        std::to_string(diff));
  return euler;
}

/// Verifies zeta(X x Y) = zeta(X) * zeta(Y) in the Witt ring and
/// zeta(X u Y) = zeta(X) zeta(Y), exactly in rational arithmetic.
inline bool check_exponentiable(const VarietySpec& X, const VarietySpec& Y,
                                int N) {
  QSeries lX(N), lY(N), lProd(N), lUnion(N);
  for (int m = 1; m <= N; ++m) {
    Rat cx(count_points(X, m)), cy(count_points(Y, m));
    lX[m] = cx / m;
    lY[m] = cy / m;
    lProd[m] = cx * cy / m;
    lUnion[m] = (cx + cy) / m;
  }
  QSeries zX = lX.exp(), zY = lY.exp();
  bool product_ok = lProd.exp() == witt_mul(zX, zY);
  bool union_ok = lUnion.exp() == zX * zY;
  return product_ok && union_ok;
}

}  // namespace igz
