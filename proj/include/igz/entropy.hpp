#pragma once

/**
 * Zeta-based Shannon entropies, L-functions over Z with archimedean
 * factors, the measure-generic entropy S_mu, the zeta Kullback-Leibler
 * divergence, and the Gibbs free-energy identities.
 *
 * Branch bookkeeping: every "log of a character value" uses the fixed
 * branch log_char (2 pi i j rep/p); logs of ratios of zeta values use the
 * principal branch.  The two conventions are never mixed inside one term.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "igz/motive.hpp"

namespace igz {

// ---------------------------------------------------------------------------
// Shannon entropy of the Hasse-Weil partition function
// ---------------------------------------------------------------------------

/// Geometric tail bound for sum_{m>N} (1 + s m log q) ratio^m / m.
inline double zeta_tail_bound(double ratio, double s, double logq, int N) {
  if (ratio >= 0.8) return std::numeric_limits<double>::infinity();
  double head = std::pow(ratio, N + 1) / (1.0 - ratio);
  return (1.0 + s * logq * (N + 2)) * head;
}

/// (1 - s d/ds) log Z^HW(X, q^-s), with exact termwise d/ds on the
/// truncated log series: d/ds q^{-sm} = -m log q q^{-sm}.
inline double count_points_dbl(const VarietySpec& X, uint32_t m) {
  const double q = double(X.ctx->q());
  switch (X.kind) {
    case VKind::Point: return 1.0;
    case VKind::AffineSpace: return std::pow(q, double(m) * X.ambient);
    case VKind::ProjSpace: {
      double qm = std::pow(q, double(m)), acc = 0, pw = 1;
      for (int k = 0; k <= X.ambient; ++k) {
        acc += pw;
        pw *= qm;
      }
      return acc;
    }
    default: return double(count_points(X, m));
  }
}

inline double shannon_zeta(const VarietySpec& X, double s, int N) {
  const double logq = std::log(double(X.ctx->q()));
  const double ratio = std::pow(double(X.ctx->q()), X.dim_hint() - s);
  if (!(ratio < 0.8))
    throw ValidationError(
        "shannon_zeta: divergent parameter, need q^(dim X - s) < 0.8");
  const double t = std::pow(double(X.ctx->q()), -s);
  double acc = 0.0, tp = 1.0;
  for (int m = 1; m <= N; ++m) {
    tp *= t;
    acc += count_points_dbl(X, m) / m * (1.0 + s * double(m) * logq) * tp;
  }
  return acc;
}

inline double shannon_zeta_tail(const VarietySpec& X, double s, int N) {
  const double ratio = std::pow(double(X.ctx->q()), X.dim_hint() - s);
  return zeta_tail_bound(ratio, s, std::log(double(X.ctx->q())), N);
}

// ---------------------------------------------------------------------------
// Finite partition functions
// ---------------------------------------------------------------------------

struct PartitionSpec {
  /// (energy, degeneracy) levels; energies strictly increasing,
  /// degeneracies >= 0 with at least one positive.
  std::vector<std::pair<double, double>> levels;

  void validate() const {
    if (levels.empty()) throw ValidationError("PartitionSpec: empty spec");
    bool positive = false;
    for (size_t i = 0; i < levels.size(); ++i) {
      if (levels[i].second < 0)
        throw ValidationError("PartitionSpec: negative degeneracy");
      if (levels[i].second > 0) positive = true;
      if (i > 0 && !(levels[i - 1].first < levels[i].first))
        throw ValidationError("PartitionSpec: energies must increase");
    }
    if (!positive) throw ValidationError("PartitionSpec: all degeneracies zero");
  }
};

/// (1 - beta d/dbeta) log Z(beta) = log Z + beta <H> over the finite list.
inline double partition_entropy(const PartitionSpec& spec, double beta) {
  spec.validate();
  if (!(beta > 0)) throw ValidationError("partition_entropy: beta must be > 0");
  double z = 0, eh = 0;
  for (auto& [E, D] : spec.levels) {
    double w = D * std::exp(-beta * E);
    z += w;
    eh += E * w;
  }
  return std::log(z) + beta * eh / z;
}

// ---------------------------------------------------------------------------
// Reduced matrices (Hermite-style count behind P^{n-1} degeneracies)
// ---------------------------------------------------------------------------

/// Number of lower-triangular integer matrices with positive diagonal,
/// det = m, and 0 <= M_ij < M_jj below the diagonal (strict HNF bound).
/// Equals sum over ordered factorizations d_1...d_n = m of prod d_j^(n-j).
inline uint64_t red_count(int n, uint64_t m) {
  if (n < 1 || n > 4) throw ValidationError("red_count: need 1 <= n <= 4");
  if (m < 1 || m > 100000) throw ValidationError("red_count: need 1 <= m <= 1e5");
  unsigned __int128 total = 0;
  auto rec = [&](auto&& self, int j, uint64_t rem, unsigned __int128 weight) -> void {
    if (j == n) {
      if (rem == 1) total += weight;
      return;
    }
    for (uint64_t d = 1; d <= rem; ++d) {
      if (rem % d) continue;
      unsigned __int128 w = weight;
      for (int k = 0; k < n - 1 - j; ++k) w *= d;
      self(self, j + 1, rem / d, w);
    }
  };
  rec(rec, 0, m, 1);
  if (total > (unsigned __int128)UINT64_MAX)
    throw BudgetError("red_count: count overflows 64 bits");
  return static_cast<uint64_t>(total);
}

/// Checks sum_k red_count(n, p^k) p^{-sk} against the degree-K truncation
/// of Z^HW(P^{n-1}_{F_p}, p^{-s}), to 1e-9.
inline bool red_partition_check(int n, uint32_t p, double s, int K) {
  auto ctx = ff_make(p, 1);
  QSeries z = n >= 2 ? hasse_weil(VarietySpec::proj_space(ctx, n - 1), K)
                     : hasse_weil(VarietySpec::point(ctx), K);
  double lhs = 0, rhs = 0, pk = 1;
  const double ps = std::pow(double(p), -s);
  double psk = 1;
  for (int k = 0; k <= K; ++k) {
    lhs += double(red_count(n, uint64_t(pk))) * psk;
    rhs += rat_to_double(z[k]) * psk;
    pk *= p;
    psk *= ps;
    if (pk > 100000) break;  // red_count budget; compare the common prefix
  }
  return std::abs(lhs - rhs) <= 1e-9;
}

// ---------------------------------------------------------------------------
// L-functions of varieties over Z
// ---------------------------------------------------------------------------

/// A variety over Z: builtin kinds carry closed-form counts; custom
/// equations are reduced mod p per prime (budget permitting).
struct VarietyOverZ {
  VKind kind = VKind::Point;
  int ambient = 0;
  std::vector<IPoly> eqs;  // in ncoords variables for custom kinds

  static VarietyOverZ spec_z() { return {VKind::Point, 0, {}}; }
  static VarietyOverZ affine_space(int n) { return {VKind::AffineSpace, n, {}}; }
  static VarietyOverZ proj_space(int n) { return {VKind::ProjSpace, n, {}}; }

  VarietySpec reduce_mod(uint32_t p) const {
    auto ctx = ff_make(p, 1);
    switch (kind) {
      case VKind::Point: return VarietySpec::point(ctx);
      case VKind::AffineSpace: return VarietySpec::affine_space(ctx, ambient);
      case VKind::ProjSpace: return VarietySpec::proj_space(ctx, ambient);
      case VKind::Affine: {
        std::vector<MPoly> eqp;
        for (auto& e : eqs) eqp.push_back(MPoly::from_ipoly(ctx, e));
        return VarietySpec::affine(ctx, ambient, std::move(eqp));
      }
      case VKind::Projective: {
        std::vector<MPoly> eqp;
        for (auto& e : eqs) eqp.push_back(MPoly::from_ipoly(ctx, e));
        return VarietySpec::projective(ctx, ambient, std::move(eqp));
      }
    }
    throw ValidationError("VarietyOverZ: bad kind");
  }

  int dim_hint() const {
    switch (kind) {
      case VKind::Point: return 0;
      case VKind::AffineSpace:
      case VKind::ProjSpace: return ambient;
      default: return std::max(0, ambient - static_cast<int>(eqs.size()));
    }
  }
};

inline std::vector<uint32_t> primes_up_to(uint32_t P) {
  std::vector<bool> sieve(P + 1, true);
  std::vector<uint32_t> out;
  for (uint32_t i = 2; i <= P; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (uint64_t j = uint64_t(i) * i; j <= P; j += i) sieve[j] = false;
  }
  return out;
}

namespace detail {

/// Truncated log Z^HW(X_p, p^-s) and its entropy in one pass.
struct LocalFactor {
  double log_z = 0;
  double entropy = 0;
};

inline LocalFactor local_factor(const VarietyOverZ& XZ, uint32_t p, double s,
                                int N) {
  const double logp = std::log(double(p));
  const double t = std::pow(double(p), -s);
  LocalFactor lf;
  // c_m = card X(F_{p^m})
  std::vector<double> cm(N + 1, 0);
  switch (XZ.kind) {
    case VKind::Point:
      for (int m = 1; m <= N; ++m) cm[m] = 1;
      break;
    case VKind::AffineSpace:
      for (int m = 1; m <= N; ++m) cm[m] = std::pow(double(p), double(m) * XZ.ambient);
      break;
    case VKind::ProjSpace:
      for (int m = 1; m <= N; ++m) {
        double qm = std::pow(double(p), m), acc = 0, pw = 1;
        for (int k = 0; k <= XZ.ambient; ++k) {
          acc += pw;
          pw *= qm;
        }
        cm[m] = acc;
      }
      break;
    default: {
      VarietySpec Xp = XZ.reduce_mod(p);
      for (int m = 1; m <= N; ++m) cm[m] = double(count_points(Xp, m));
    }
  }
  double tp = 1;
  for (int m = 1; m <= N; ++m) {
    tp *= t;
    if (tp == 0) break;
    double lm = cm[m] / m;
    lf.log_z += lm * tp;
    lf.entropy += lm * (1.0 + s * m * logp) * tp;
  }
  return lf;
}

}  // namespace detail

/// Product over p <= P of the truncated local zeta values at p^-s.
inline double l_function(const VarietyOverZ& XZ, double s, uint32_t P, int N) {
  if (!(s > XZ.dim_hint() + 1))
    throw ValidationError("l_function: s outside the convergence region");
  double acc = 0;
  for (uint32_t p : primes_up_to(P)) acc += detail::local_factor(XZ, p, s, N).log_z;
  return std::exp(acc);
}

/// sum_p S(X_p, s) = (1 - s d/ds) log L by construction.
inline double entropy_Z(const VarietyOverZ& XZ, double s, uint32_t P, int N) {
  if (!(s > XZ.dim_hint() + 1))
    throw ValidationError("entropy_Z: s outside the convergence region");
  double acc = 0;
  for (uint32_t p : primes_up_to(P)) acc += detail::local_factor(XZ, p, s, N).entropy;
  return acc;
}

// ---------------------------------------------------------------------------
// Archimedean factors
// ---------------------------------------------------------------------------

/// log Gamma for complex arguments (Lanczos, g = 7).
inline Complex lgamma_c(Complex z) {
  static const double g = 7.0;
  static const double c[9] = {0.99999999999980993,  676.5203681218851,
                              -1259.1392167224028,  771.32342877765313,
                              -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) -
           lgamma_c(1.0 - z);
  }
  z -= 1.0;
  Complex x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  Complex t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(x);
}

inline void check_gamma_pole(Complex s) {
  double re = s.real();
  if (std::abs(s.imag()) < 1e-6 && re <= 1e-6) {
    double nearest = std::round(re);
    if (nearest <= 0 && std::abs(re - nearest) < 1e-6)
      throw ValidationError("gamma: argument within 1e-6 of a pole");
  }
}

inline Complex gamma_c_fn(Complex s) {
  check_gamma_pole(s);
  return std::exp(lgamma_c(s));
}

/// Gamma_R(s) = 2^{-1/2} pi^{-s/2} Gamma(s/2).
inline Complex gamma_R(Complex s) {
  check_gamma_pole(s / 2.0);
  return std::exp(-0.5 * std::log(2.0) - (s / 2.0) * std::log(std::numbers::pi) +
                  lgamma_c(s / 2.0));
}

/// Gamma_C(s) = (2 pi)^{-s} Gamma(s).
inline Complex gamma_C(Complex s) {
  check_gamma_pole(s);
  return std::exp(-s * std::log(2.0 * std::numbers::pi) + lgamma_c(s));
}

/// Hodge data per cohomology degree i.
struct HodgeData {
  struct Degree {
    std::vector<std::tuple<int, int, double>> hpq;       // (p, q, h^{p,q}), p < q
    std::vector<std::tuple<int, double, double>> diag;   // (p, h^{p,+}, h^{p,-})
  };
  std::vector<Degree> degrees;  // index = cohomology degree i

  static HodgeData empty(int top_degree) {
    HodgeData h;
    h.degrees.resize(top_degree + 1);
    return h;
  }
};

/// log L_infinity(X, s): alternating product over cohomology degrees of the
/// Serre archimedean factors.
inline Complex log_l_infinity(const HodgeData& h, Complex s) {
  Complex acc(0, 0);
  for (size_t i = 0; i < h.degrees.size(); ++i) {
    double sign = (i % 2 == 0) ? -1.0 : 1.0;  // (-1)^{i+1}
    Complex deg(0, 0);
    for (auto& [p, q, hpq] : h.degrees[i].hpq)
      deg += hpq * std::log(gamma_C(s - double(p)));
    for (auto& [p, hp, hm] : h.degrees[i].diag) {
      if (hp != 0) deg += hp * std::log(gamma_R(s - double(p)));
      if (hm != 0) deg += hm * std::log(gamma_R(s - double(p) + 1.0));
    }
    acc += sign * deg;
  }
  return acc;
}

inline Complex l_infinity(const HodgeData& h, Complex s) {
  return std::exp(log_l_infinity(h, s));
}

/// (1 - s d/ds) log L_infinity with a central difference (step 1e-5).
inline Complex s_infinity(const HodgeData& h, Complex s) {
  const double step = 1e-5;
  Complex d = (log_l_infinity(h, s + step) - log_l_infinity(h, s - step)) /
              (2.0 * step);
  return log_l_infinity(h, s) - s * d;
}

// ---------------------------------------------------------------------------
// Measure-generic entropy S_mu
// ---------------------------------------------------------------------------

/// (1 - t log t d/dt) log zeta_mu(X, t), evaluated at real t in (0,1).
inline Complex s_mu(const VarietySpec& X, const Potential& f,
                    const MotivicMeasure& mu, double t, int N) {
  if (!(t > 0 && t < 1)) throw ValidationError("s_mu: t must be in (0,1)");
  double ratio = std::pow(double(X.ctx->q()), X.dim_hint()) * t;
  if (!(ratio < 0.8))
    throw ValidationError("s_mu: q^dim * t must stay below 0.8");
  CSeries z = zeta_mu(X, f, mu, N);
  CSeries lz = z.log();
  const double logt = std::log(t);
  KahanSum acc;
  double tp = 1;
  for (int n = 1; n <= N; ++n) {
    tp *= t;
    acc.add(lz[n] * (1.0 - double(n) * logt) * tp);
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Kullback-Leibler divergence of zeta functions
// ---------------------------------------------------------------------------

namespace detail {

struct SymEnsemble {
  std::vector<ClosedPoint> cps;
  // per degree n: the symmetric points of that degree
  std::vector<std::vector<SymPoint>> by_degree;
};

inline SymEnsemble sym_ensemble(const VarietySpec& X, const Potential& f, int N) {
  SymEnsemble e;
  e.cps = closed_points(X, f, N == 0 ? 1 : N);
  e.by_degree.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    e.by_degree[n] = sym_points(X, f, n, std::max(n, 1), &e.cps);
  return e;
}

/// zeta value at t from an ensemble, with per-point weights chi(value).
inline Complex zeta_value(const SymEnsemble& e, const AdditiveCharacter& chi,
                          double t) {
  KahanSum z;
  double tp = 1;
  for (size_t n = 0; n < e.by_degree.size(); ++n) {
    for (auto& sp : e.by_degree[n]) z.add(tp * char_eval(chi, sp.value));
    tp *= t;
  }
  return z.value();
}

}  // namespace detail

struct KlOptions {
  double cross_tol = 1e-8;
};

/// Geometric tail bound for the truncated evaluation at t; every
/// evaluated-at-t quantity requires q^dim t < 0.8.
inline double zeta_eval_tail_bound(const VarietySpec& X, double t, int N) {
  double ratio = std::pow(double(X.ctx->q()), X.dim_hint()) * t;
  if (!(ratio < 0.8))
    throw ValidationError("zeta evaluation: q^dim * t must stay below 0.8");
  return std::pow(ratio, N + 1) / (1.0 - ratio);
}

/// KL(zeta_chi((X,f),t) || zeta_chi((X,f_eps),t)) with f_eps = f + eps h:
/// log <chi_eps(h)> - <log chi_eps(h)>, expectations over the truncated
/// complex "distribution" P_{n,xbar}.  The first log is principal branch,
/// the second uses the fixed branch per term.  <chi_eps(h)> is
/// cross-validated against the ratio of two Euler-product zetas.
inline Complex kl_zeta(const VarietySpec& X, const Potential& f,
                       const Potential& h, const AdditiveCharacter& chi,
                       const FqElem& eps, double t, int N,
                       const KlOptions& opt = {}) {
  check_potential(X, f);
  check_potential(X, h);
  if (eps.is_zero() || h.is_zero()) return Complex(0, 0);  // P = P_eps exactly
  zeta_eval_tail_bound(X, t, N);

  auto ens = detail::sym_ensemble(X, f, N);
  Complex zf = detail::zeta_value(ens, chi, t);
  if (std::abs(zf) < 1e-12)
    throw ValidationError("kl_zeta: zeta vanishes at the evaluation point");

  // expectations over P_{n,xbar} = chi(f-value) t^n / zeta
  KahanSum w_sum, log_sum;
  double tp = 1;
  for (int n = 0; n <= N; ++n) {
    for (auto& sp : ens.by_degree[n]) {
      Complex P = tp * char_eval(chi, sp.value) / zf;
      FqElem hval = eps * sym_point_value(X, sp, ens.cps, h);
      w_sum.add(P * char_eval(chi, hval));
      log_sum.add(P * log_char(chi, hval));
    }
    tp *= t;
  }
  Complex W = w_sum.value();

  // cross-check: <chi_eps(h)> = zeta_chi(X, f + eps h) / zeta_chi(X, f),
  // both sides by Euler products over closed points
  Potential f_eps = f + eps * h;
  Complex num = zeta_chi_euler(X, f_eps, chi, N).eval(Complex(t, 0));
  Complex den = zeta_chi_euler(X, f, chi, N).eval(Complex(t, 0));
  Complex ratio = num / den;
  if (std::abs(W - ratio) > opt.cross_tol)
    throw ConsistencyError("kl_zeta: <chi_eps(h)> disagrees with the zeta ratio by " +
                           std::to_string(std::abs(W - ratio)));

  return std::log(W) - log_sum.value();
}

/// KL between zeta functions twisted by two characters of the same class:
/// psi = chi^{-1} chi' has frequency j' - j mod p.
inline Complex kl_zeta_chars(const VarietySpec& X, const Potential& f,
                             const AdditiveCharacter& chi,
                             const AdditiveCharacter& chi2, double t, int N,
                             const KlOptions& opt = {}) {
  check_potential(X, f);
  if (chi.ctx != chi2.ctx)
    throw ValidationError("kl_zeta_chars: characters over different fields");
  uint32_t p = chi.ctx->p();
  AdditiveCharacter psi(chi.ctx, (chi2.j + p - chi.j) % p);
  if (psi.trivial()) return Complex(0, 0);
  zeta_eval_tail_bound(X, t, N);

  auto ens = detail::sym_ensemble(X, f, N);
  Complex zf = detail::zeta_value(ens, chi, t);
  if (std::abs(zf) < 1e-12)
    throw ValidationError("kl_zeta_chars: zeta vanishes at the evaluation point");

  KahanSum w_sum, log_sum;
  double tp = 1;
  for (int n = 0; n <= N; ++n) {
    for (auto& sp : ens.by_degree[n]) {
      Complex P = tp * char_eval(chi, sp.value) / zf;
      w_sum.add(P * char_eval(psi, sp.value));
      log_sum.add(P * log_char(psi, sp.value));
    }
    tp *= t;
  }
  Complex W = w_sum.value();

  Complex num = zeta_chi_euler(X, f, chi2, N).eval(Complex(t, 0));
  Complex den = zeta_chi_euler(X, f, chi, N).eval(Complex(t, 0));
  Complex ratio = num / den;
  if (std::abs(W - ratio) > opt.cross_tol)
    throw ConsistencyError("kl_zeta_chars: <psi(f)> disagrees with the zeta ratio by " +
                           std::to_string(std::abs(W - ratio)));

  return std::log(W) - log_sum.value();
}

/// Builds the fibered product {f1(x) = f2(y)} with potential f = f1 o pi1
/// and delegates to kl_zeta with h = F(.,1) - f.
inline Complex kl_zeta_fibered(const VarietySpec& X1, const Potential& f1,
                               const VarietySpec& X2, const Potential& f2,
                               const Potential& F_at_1,
                               const AdditiveCharacter& chi, const FqElem& eps,
                               double t, int N, const KlOptions& opt = {}) {
  if (X1.ctx != X2.ctx)
    throw ValidationError("kl_zeta_fibered: base-field mismatch");
  if (!X1.is_affine_kind() || !X2.is_affine_kind())
    throw ValidationError("kl_zeta_fibered: affine kinds only");
  check_potential(X1, f1);
  check_potential(X2, f2);
  const int n1 = X1.ncoords(), n = n1 + X2.ncoords();
  std::vector<MPoly> eqs;
  for (auto& e : X1.eqs) eqs.push_back(e.extended(n, 0));
  for (auto& e : X2.eqs) eqs.push_back(e.extended(n, n1));
  MPoly glue = f1.extended(n, 0) - f2.extended(n, n1);
  if (!glue.is_zero()) eqs.push_back(glue);
  VarietySpec Xfib = eqs.empty() ? VarietySpec::affine_space(X1.ctx, n)
                                 : VarietySpec::affine(X1.ctx, n, std::move(eqs));
  if (count_points(Xfib, 1) == 0)
    throw ValidationError("kl_zeta_fibered: empty fiber product, divergence undefined");
  Potential f = f1.extended(n, 0);
  if (F_at_1.nvars() != n || F_at_1.ctx() != X1.ctx)
    throw ValidationError("kl_zeta_fibered: deformation over the wrong ring");
  Potential h = F_at_1 - f;
  return kl_zeta(Xfib, f, h, chi, eps, t, N, opt);
}

// ---------------------------------------------------------------------------
// Gibbs free energy and the KL epsilon-expansion
// ---------------------------------------------------------------------------

struct GibbsReport {
  bool kl_vs_gibbs = false;       // KL(P||Q) = G(P) + log Z
  bool gibbs_minimum = false;     // min_P G(P) = -log Z attained at Q
  bool force_identity = false;    // <L> = beta^-1 d/deps log Z_eps at 0
  bool expansion_order2 = false;  // KL remainder scales as eps^2
  double expansion_ratio = 0.0;   // should be near 4 when halving eps
  bool all() const {
    return kl_vs_gibbs && gibbs_minimum && force_identity && expansion_order2;
  }
};

namespace detail {

inline std::vector<double> gibbs_dist(const std::vector<double>& H, double beta) {
  double z = 0;
  std::vector<double> P(H.size());
  for (size_t i = 0; i < H.size(); ++i) z += std::exp(-beta * H[i]);
  for (size_t i = 0; i < H.size(); ++i) P[i] = std::exp(-beta * H[i]) / z;
  return P;
}

inline double log_partition(const std::vector<double>& H, double beta) {
  double z = 0;
  for (double h : H) z += std::exp(-beta * h);
  return std::log(z);
}

inline double kl_discrete(const std::vector<double>& P, const std::vector<double>& Q) {
  double acc = 0;
  for (size_t i = 0; i < P.size(); ++i)
    if (P[i] > 0) acc += P[i] * std::log(P[i] / Q[i]);
  return acc;
}

}  // namespace detail

/// Verifies the four identities of the thermodynamic KL reading, with
/// Q = Gibbs(H), P = Gibbs(Htilde), and the analytic commuting family
/// H(eps) = Htilde + eps (H - Htilde) + eps^2 D2.  The quadratic term D2
/// (a fixed pseudo-random direction) is what makes the KL remainder a
/// genuine Theta(eps^2): for an exactly linear family the expansion
/// KL(P||P_eps) = log(Z_eps/Ztilde) - eps d/deps log Z_eps|_0 is an
/// identity and there would be nothing to measure.
inline GibbsReport gibbs_identities(const std::vector<double>& H,
                                    const std::vector<double>& Ht, double beta,
                                    uint64_t seed = 9001) {
  if (H.empty() || H.size() != Ht.size())
    throw ValidationError("gibbs_identities: state spaces must match");
  if (!(beta > 0)) throw ValidationError("gibbs_identities: beta must be > 0");
  GibbsReport rep;
  const size_t k = H.size();

  auto Q = detail::gibbs_dist(H, beta);
  auto P = detail::gibbs_dist(Ht, beta);
  double logZ = detail::log_partition(H, beta);

  // (a) KL(P||Q) = G(P) + log Z with G(P) = beta <H>_P - S(P)
  double meanH = 0, entP = 0;
  for (size_t i = 0; i < k; ++i) {
    meanH += P[i] * H[i];
    if (P[i] > 0) entP -= P[i] * std::log(P[i]);
  }
  double G = beta * meanH - entP;
  rep.kl_vs_gibbs = std::abs(detail::kl_discrete(P, Q) - (G + logZ)) <= 1e-9;

  // (b) G >= -log Z over random trial distributions, equality at Q
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  bool min_ok = true;
  auto gibbs_energy = [&](const std::vector<double>& T) {
    double m = 0, s = 0;
    for (size_t i = 0; i < k; ++i) {
      m += T[i] * H[i];
      if (T[i] > 0) s -= T[i] * std::log(T[i]);
    }
    return beta * m - s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> T(k);
    double sum = 0;
    for (auto& x : T) sum += (x = u(rng));
    for (auto& x : T) x /= sum;
    if (gibbs_energy(T) < -logZ - 1e-12) min_ok = false;
  }
  min_ok = min_ok && std::abs(gibbs_energy(Q) + logZ) <= 1e-9;
  rep.gibbs_minimum = min_ok;

  // the family: first-order direction from Htilde toward H, plus a fixed
  // nonzero quadratic direction
  std::vector<double> D(k), D2(k);
  for (size_t i = 0; i < k; ++i) {
    D[i] = H[i] - Ht[i];
    D2[i] = 0.5 * std::sin(1.7 * double(i) + 0.3);
  }
  auto Heps = [&](double eps) {
    std::vector<double> He(k);
    for (size_t i = 0; i < k; ++i) He[i] = Ht[i] + eps * D[i] + eps * eps * D2[i];
    return He;
  };
  auto logZeps = [&](double eps) { return detail::log_partition(Heps(eps), beta); };

  // (c) generalized force via central difference, step 1e-5
  double fd = (logZeps(1e-5) - logZeps(-1e-5)) / 2e-5;
  double meanL = 0;
  for (size_t i = 0; i < k; ++i) meanL += P[i] * (-D[i]);
  rep.force_identity = std::abs(meanL - fd / beta) <= 1e-6;

  // (d) KL(P||P_eps) - [log(Z_eps/Ztilde) - eps d/deps log Z_eps|_0] = O(eps^2):
  // halving eps shrinks the remainder by ~4
  auto remainder = [&](double eps) {
    auto Pe = detail::gibbs_dist(Heps(eps), beta);
    double kl = detail::kl_discrete(P, Pe);
    double lead = logZeps(eps) - detail::log_partition(Ht, beta) - eps * fd;
    return kl - lead;
  };
  double r1 = remainder(0.1), r2 = remainder(0.05);
  rep.expansion_ratio = (r2 != 0) ? r1 / r2 : 4.0;
  rep.expansion_order2 = std::abs(rep.expansion_ratio - 4.0) <= 0.6;
  return rep;
}

}  // namespace igz
