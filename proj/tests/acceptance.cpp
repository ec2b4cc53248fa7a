// Acceptance suite: every criterion below runs at its stated tolerance and
// prints one PASS/FAIL line.  The process exits nonzero if any criterion
// fails.  Everything is property- or oracle-based at desk scale; the whole
// suite is meant to finish in well under five minutes.

#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "igz/algebra.hpp"
#include "igz/cat.hpp"
#include "igz/cone.hpp"
#include "igz/entropy.hpp"
#include "igz/infogeo_motivic.hpp"

using namespace igz;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<bool()>& fn) {
  bool ok = false;
  std::string note;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string("  [exception: ") + e.what() + "]";
  }
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << note << "\n";
  if (!ok) ++g_failures;
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

VarietySpec random_small_affine(const FieldCtx* ctx, std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return VarietySpec::affine_space(ctx, 1);
    case 1: return VarietySpec::affine_space(ctx, 2);
    case 2:
      return VarietySpec::affine(
          ctx, 2,
          {MPoly::parse(ctx, 2, "y - x^2") +
           MPoly::constant(ctx, 2, int64_t(rng() % ctx->p()))});
    default:
      return VarietySpec::affine(
          ctx, 2,
          {MPoly::parse(ctx, 2, "x*y") -
           MPoly::constant(ctx, 2, 1 + int64_t(rng() % (ctx->p() - 1)))});
  }
}

MPoly random_poly(const FieldCtx* ctx, int nvars, std::mt19937_64& rng) {
  MPoly f(ctx, nvars);
  for (int v = 0; v < nvars; ++v) {
    f = f + FqElem(ctx, int64_t(rng() % ctx->p())) *
                MPoly::variable(ctx, nvars, v);
    f = f + FqElem(ctx, int64_t(rng() % ctx->p())) *
                (MPoly::variable(ctx, nvars, v) * MPoly::variable(ctx, nvars, v));
  }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

static bool c01_zeta_closed_forms() {
  for (uint32_t p : {2u, 3u}) {
    auto ctx = ff_make(p, 1);
    const int N = 8;
    if (!(hasse_weil(VarietySpec::point(ctx), N) == QSeries::geometric(N, Rat(1))))
      return false;
    if (!(hasse_weil(VarietySpec::affine_space(ctx, 1), N) ==
          QSeries::geometric(N, Rat(p))))
      return false;
    for (int n = 1; n <= 2; ++n) {
      QSeries expect = QSeries::one(N);
      Rat qk(1);
      for (int k = 0; k <= n; ++k) {
        expect = expect * QSeries::geometric(N, qk);
        qk *= p;
      }
      if (!(hasse_weil(VarietySpec::proj_space(ctx, n), N) == expect))
        return false;
    }
  }
  return true;
}

static bool c02_sym_point_oracle() {
  auto f2 = ff_make(2, 1);
  auto f3 = ff_make(3, 1);
  std::vector<VarietySpec> xs = {
      VarietySpec::point(f2),
      VarietySpec::affine_space(f2, 1),
      VarietySpec::proj_space(f2, 1),
      VarietySpec::affine_space(f3, 1),
      VarietySpec::affine_space(f2, 2),
      // a plane curve over F_3
      VarietySpec::affine(f3, 2, {MPoly::parse(f3, 2, "y^2 - x^3 + x - 1")}),
  };
  for (auto& X : xs) {
    const int N = 6;
    QSeries z = hasse_weil(X, N);
    auto cps = closed_points(X, zero_potential(X), N);
    for (int n = 0; n <= N; ++n) {
      auto sym = sym_points(X, zero_potential(X), n, std::max(n, 1), &cps);
      if (Rat(sym.size()) != z[n]) return false;
    }
  }
  return true;
}

static bool c03_zeta_chi_dual_path() {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 20; ++trial) {
    auto ctx = ff_make(trial % 2 == 0 ? 2 : 3, 1);
    auto X = random_small_affine(ctx, rng);
    auto f = random_poly(ctx, X.ncoords(), rng);
    AdditiveCharacter chi(ctx, uint32_t(rng() % ctx->p()));
    int N = X.ncoords() >= 2 ? 3 : 5;
    zeta_chi_euler(X, f, chi, N);  // throws ConsistencyError beyond 1e-9
  }
  return true;
}

static bool c04_character_kills_ideal() {
  std::mt19937_64 rng(44);
  int instances = 0;
  for (uint32_t p : {2u, 3u, 5u}) {
    auto ctx = ff_make(p, 1);
    auto a1_id = ExpClass::generator(VarietySpec::affine_space(ctx, 1),
                                     MPoly::parse(ctx, 1, "x"));
    for (uint32_t j = 1; j < p; ++j) {
      auto mu = MotivicMeasure::character(AdditiveCharacter(ctx, j));
      for (int trial = 0; trial < 4 && instances < 10 * 3; ++trial) {
        auto X = random_small_affine(ctx, rng);
        auto cls = ExpClass::generator(X, zero_potential(X)) * a1_id;
        double scale = std::pow(double(p), X.dim_hint() + 1);
        if (std::abs(measure(mu, cls)) > 1e-9 * scale) return false;
        ++instances;
      }
    }
  }
  return instances >= 10;
}

static bool c05_witt_laws() {
  if (!(witt_mul(QSeries::geometric(10, Rat(2)), QSeries::geometric(10, Rat(3))) ==
        QSeries::geometric(10, Rat(6))))
    return false;
  auto f2 = ff_make(2, 1);
  auto a1 = VarietySpec::affine_space(f2, 1);
  auto p1 = VarietySpec::proj_space(f2, 1);
  for (auto& [X, Y] : std::vector<std::pair<VarietySpec, VarietySpec>>{
           {a1, a1}, {a1, p1}}) {
    const int N = 8;
    QSeries lp(N);
    for (int m = 1; m <= N; ++m)
      lp[m] = Rat(count_points(X, m)) * Rat(count_points(Y, m)) / m;
    if (!(lp.exp() == witt_mul(hasse_weil(X, N), hasse_weil(Y, N)))) return false;
  }
  return true;
}

static bool c06_entropy() {
  auto f2 = ff_make(2, 1);
  auto pt = VarietySpec::point(f2);
  double v = shannon_zeta(pt, 1.0, 60);
  double geo = 0;
  for (int k = 0; k < 100; ++k)
    geo += (k + 1) * std::pow(2.0, -(k + 1)) * std::log(2.0);
  if (!approx(v, geo, 1e-6)) return false;
  if (!approx(v, 2.0 * std::log(2.0), 1e-6)) return false;

  auto a1 = VarietySpec::affine_space(f2, 1);
  auto p1 = VarietySpec::proj_space(f2, 1);
  double s = 3.0;
  if (!approx(shannon_zeta(p1, s, 60),
              shannon_zeta(pt, s, 60) + shannon_zeta(a1, s, 60), 1e-9))
    return false;

  // S_mu under counting at t = q^-s agrees with shannon_zeta
  for (double ss : {1.0, 2.2}) {
    double t = std::pow(2.0, -ss);
    Complex sm = s_mu(pt, MPoly(f2, 0), MotivicMeasure::counting(), t, 45);
    if (!approx(sm.real(), shannon_zeta(pt, ss, 45), 1e-8)) return false;
    if (std::abs(sm.imag()) > 1e-12) return false;
  }
  double t2 = std::pow(2.0, -2.5);
  Complex sma = s_mu(a1, MPoly(f2, 1), MotivicMeasure::counting(), t2, 45);
  return approx(sma.real(), shannon_zeta(a1, 2.5, 45), 1e-8);
}

static bool c07_red_matrices() {
  // exhaustive enumeration oracle: literally scan lower-triangular integer
  // matrices with bounded entries
  auto brute = [](int n, uint64_t m) {
    uint64_t count = 0;
    if (n == 2) {
      for (uint64_t d1 = 1; d1 <= m; ++d1) {
        if (m % d1) continue;
        for (uint64_t off = 0; off < d1; ++off) ++count;  // 0 <= M_21 < M_11
      }
    }
    return count;
  };
  if (red_count(2, 2) != 3 || brute(2, 2) != 3) return false;
  if (red_count(2, 4) != 7 || brute(2, 4) != 7) return false;
  if (!red_partition_check(2, 2, 1.8, 4)) return false;
  if (!red_partition_check(2, 3, 1.8, 3)) return false;
  if (!red_partition_check(3, 2, 2.7, 3)) return false;
  return true;
}

static bool c08_lfunction_oracle() {
  double zeta2 = 0, zp2 = 0;
  for (int n = 1; n <= 100000; ++n) {
    zeta2 += 1.0 / (double(n) * n);
    zp2 -= std::log(double(n)) / (double(n) * n);
  }
  double dirichlet = std::log(zeta2) - 2.0 * zp2 / zeta2;
  double euler = entropy_Z(VarietyOverZ::spec_z(), 2.0, 10000, 25);
  return approx(euler, dirichlet, 1e-3);
}

static bool c09_kl_zeta() {
  auto f3 = ff_make(3, 1);
  auto a1 = VarietySpec::affine_space(f3, 1);
  auto fx = MPoly::parse(f3, 1, "x");
  auto hx2 = MPoly::parse(f3, 1, "x^2");
  AdditiveCharacter chi3(f3, 1);

  // exact zeros
  if (kl_zeta(a1, fx, hx2, chi3, FqElem(f3, 0), 0.1, 5) != Complex(0, 0))
    return false;
  if (kl_zeta(a1, fx, MPoly(f3, 1), chi3, FqElem(f3, 1), 0.1, 5) != Complex(0, 0))
    return false;

  std::mt19937_64 rng(909);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int trial = 0; trial < 10; ++trial) {
    auto ctx = ff_make(trial % 2 == 0 ? 3 : 2, 1);
    auto X = VarietySpec::affine_space(ctx, 1);
    auto f = random_poly(ctx, 1, rng);
    MPoly h(ctx, 1);
    while (h.is_zero()) h = random_poly(ctx, 1, rng);
    AdditiveCharacter chi(ctx, 1 + uint32_t(rng() % (ctx->p() - 1)));
    FqElem eps(ctx, 1 + int64_t(rng() % (ctx->p() - 1)));
    double t = 0.05 + 0.01 * double(trial);
    const int N = 5;

    Complex closed = kl_zeta(X, f, h, chi, eps, t, N);  // ratio check inside

    // raw enumeration for the decomposition-based and principal-branch sums
    auto cps = closed_points(X, f, N);
    Complex zf(0, 0), zfe(0, 0);
    std::vector<std::pair<Complex, Complex>> terms;  // (weight, log_char value)
    double tp = 1;
    for (int n = 0; n <= N; ++n) {
      for (auto& sp : sym_points(X, f, n, std::max(n, 1), &cps)) {
        Complex w = tp * char_eval(chi, sp.value);
        FqElem hv = eps * sym_point_value(X, sp, cps, h);
        zf += w;
        zfe += w * char_eval(chi, hv);
        terms.push_back({w, log_char(chi, hv)});
      }
      tp *= t;
    }
    Complex ratio = zfe / zf;

    // ratio cross-check against two Euler products
    Complex num = zeta_chi_euler(X, f + eps * h, chi, N).eval(Complex(t, 0));
    Complex den = zeta_chi_euler(X, f, chi, N).eval(Complex(t, 0));
    if (std::abs(ratio - num / den) > 1e-8) return false;

    // decomposition sum: per-term log(ratio) - log_char, weighted
    Complex direct(0, 0);
    for (auto& [w, lc] : terms) direct += (w / zf) * (std::log(ratio) - lc);
    if (std::abs(direct - closed) > 1e-10) return false;

    // principal-branch per-term values agree modulo 2 pi i (the recorded
    // branch ambiguity must be an exact whole number of turns per term)
    for (auto& [w, lc] : terms) {
      Complex c_term = std::log(ratio) - lc;
      Complex d_term = std::log(ratio / std::exp(lc));
      double turns = (c_term - d_term).imag() / two_pi;
      if (std::abs((c_term - d_term).real()) > 1e-10) return false;
      if (std::abs(turns - std::round(turns)) > 1e-8) return false;
    }
  }
  return true;
}

static bool c10_quantum_kl_expansion() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0;
  for (int d : {2, 3, 4}) {
    for (int trial = 0; done < 20; ++trial) {
      // random commuting pair: diagonal data conjugated by a random unitary
      Vec eigs(d);
      double sum = 0;
      for (auto& x : eigs) sum += (x = 0.15 + u(rng));
      for (auto& x : eigs) x /= sum;
      double min_eig = *std::min_element(eigs.begin(), eigs.end());
      Vec dir(d);
      double mean = 0;
      for (auto& x : dir) mean += (x = (u(rng) < 0.5 ? -1 : 1) * (0.5 + 0.5 * u(rng)));
      for (auto& x : dir) x -= mean / d;
      // ensure the cubic coefficient is robustly nonzero
      double cubic = 0;
      for (int i = 0; i < d; ++i) cubic += dir[i] * dir[i] * dir[i] / (eigs[i] * eigs[i]);
      if (std::abs(cubic) < 0.3) continue;

      CMat G(d, d);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
      Eigen::HouseholderQR<CMat> qr(G);
      CMat U = qr.householderQ();

      CMat rho = CMat::Zero(d, d), h = CMat::Zero(d, d);
      double delta = 0.02 * min_eig;
      for (int i = 0; i < d; ++i) {
        rho(i, i) = eigs[i];
        h(i, i) = delta * dir[i];
      }
      rho = U * rho * U.adjoint();
      h = U * h * U.adjoint();
      rho = 0.5 * (rho + CMat(rho.adjoint()));  // clean rounding
      h = 0.5 * (h + CMat(h.adjoint()));
      h -= h.trace() / double(d) * CMat::Identity(d, d);

      auto [e1, q1] = quantum_kl_expansion(rho, h);
      auto [e2, q2] = quantum_kl_expansion(rho, CMat(0.5 * h));
      double ratio = std::abs(e1 - q1) / std::abs(e2 - q2);
      if (!(ratio >= 6.0 && ratio <= 10.0)) return false;
      ++done;
      if (done % 7 == 0) break;  // spread trials across dimensions
    }
  }
  return done >= 20;
}

static bool c11_fisher_triple() {
  // Bernoulli through its Gibbs presentation: H = -log P at beta = 1
  HamiltonianFamily bern;
  bern.r = 1;
  bern.H = [](const Vec& g) {
    return Vec{-std::log(g[0]), -std::log(1.0 - g[0])};
  };
  for (double g0 : {0.25, 0.6}) {
    Mat a = fisher_rao(bern.induced(1.0), {g0});
    Mat b = fisher_kl_hessian(bern.induced(1.0), {g0});
    Mat c = fisher_partition(bern, 1.0, {g0});
    double expect = 1.0 / (g0 * (1 - g0));
    if (std::abs(a[0][0] - expect) > 1e-6 * expect) return false;
    if (std::abs(a[0][0] - b[0][0]) > 1e-4 * expect) return false;
    if (std::abs(a[0][0] - c[0][0]) > 1e-4 * expect) return false;
    if (std::abs(b[0][0] - c[0][0]) > 1e-4 * expect) return false;
  }

  // two 3-state commuting-Hamiltonian families with r = 2
  std::vector<HamiltonianFamily> fams;
  for (int which = 0; which < 2; ++which) {
    HamiltonianFamily ham;
    ham.r = 2;
    ham.H = [which](const Vec& g) {
      if (which == 0) return Vec{0.0, 0.4 + g[0], 1.1 + g[1]};
      return Vec{g[0] + g[1], 0.7 - g[0], 0.2 + 2.0 * g[1]};
    };
    fams.push_back(std::move(ham));
  }
  for (auto& ham : fams) {
    double beta = 1.2;
    Vec gamma = {0.3, -0.1};
    Mat a = fisher_rao(ham.induced(beta), gamma);
    Mat b = fisher_kl_hessian(ham.induced(beta), gamma);
    Mat c = fisher_partition(ham, beta, gamma);
    double scale = std::max(std::abs(a[0][0]), std::abs(a[1][1]));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (std::abs(a[i][j] - b[i][j]) > 1e-4 * scale) return false;
        if (std::abs(a[i][j] - c[i][j]) > 1e-4 * scale) return false;
        if (std::abs(b[i][j] - c[i][j]) > 1e-4 * scale) return false;
      }
  }
  return true;
}

static bool c12_bregman() {
  auto negH = BregmanPotential::neg_shannon();
  std::mt19937_64 rng(1212);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vec P(3), Q(3);
    double sp = 0, sq = 0;
    for (auto& x : P) sp += (x = u(rng));
    for (auto& x : P) x /= sp;
    for (auto& x : Q) sq += (x = u(rng));
    for (auto& x : Q) x /= sq;
    if (std::abs(bregman(negH, P, Q) - kl(P, Q)) > 1e-12) return false;
  }

  // Cor-6.9.2 regime: on linear families the Bregman associativity verdict
  // coincides with the WDVV verdict for the tensor built from the potential.
  // Instances are drawn so each verdict is numerically unambiguous: r = 1
  // families are exactly associative, and the r = 2 draws are kept only
  // when their relative WDVV defect is far above both noise floors.
  std::uniform_real_distribution<double> v(-0.15, 0.15);
  int done = 0;
  while (done < 20) {
    int k = 4, r = (done % 4 == 0) ? 1 : 2;
    Vec P0(k);
    double s = 0;
    for (auto& x : P0) s += (x = u(rng));
    for (auto& x : P0) x /= s;
    Mat V(r, Vec(k, 0.0));
    for (int i = 0; i < r; ++i) {
      double mean = 0;
      for (int x = 0; x < k; ++x) mean += (V[i][x] = v(rng));
      for (int x = 0; x < k; ++x) V[i][x] -= mean / k;
    }
    StatFamily fam;
    fam.r = r;
    fam.eval = [P0, V](const Vec& g) {
      Vec P = P0;
      for (size_t i = 0; i < V.size(); ++i)
        for (size_t x = 0; x < P.size(); ++x) P[x] += g[i] * V[i][x];
      return P;
    };
    Vec gamma(r, 0.0);
    Mat g = fisher_rao(fam, gamma);
    Tensor3 A = amari_chentsov(fam, gamma);
    if (r == 2 && wdvv_relative_defect(g, A) < 3e-2) continue;  // ambiguous draw
    bool w = wdvv_check(g, A);
    bool b = bregman_assoc_check(fam, negH, gamma);
    if (w != b) return false;
    if (r == 1 && !w) return false;  // scalars always associate
    ++done;
  }
  return true;
}

static bool c13_motivic_tensors() {
  auto f3 = ff_make(3, 1);
  auto f2 = ff_make(2, 1);

  struct Instance {
    VarietySpec X;
    MPoly f;
    uint32_t j, j2;
    double t;
    int N;
  };
  std::vector<Instance> instances = {
      {VarietySpec::affine_space(f3, 1), MPoly::parse(f3, 1, "x"), 1, 1, 0.1, 4},
      {VarietySpec::affine_space(f3, 1), MPoly::parse(f3, 1, "x^2 + 2*x"), 1, 2,
       0.12, 4},
      {VarietySpec::affine(f3, 2, {MPoly::parse(f3, 2, "y - x^2")}),
       MPoly::parse(f3, 2, "x"), 1, 1, 0.1, 3},
      {VarietySpec::affine_space(f2, 1), MPoly::parse(f2, 1, "x"), 1, 1, 0.15, 5},
  };

  for (auto& inst : instances) {
    AdditiveCharacter chi(inst.X.ctx, inst.j), chi2(inst.X.ctx, inst.j2);
    const int n = inst.X.ncoords();
    CMatN g = motivic_fisher(inst.X, inst.f, chi, chi2, inst.t, inst.N);
    CTensor3 A = motivic_ac(inst.X, inst.f, chi, chi2, inst.t, inst.N);

    // brute-force symmetric-product sums (instances kept below 500 points)
    auto cps = closed_points(inst.X, inst.f, inst.N);
    std::vector<MPoly> df;
    for (int i = 0; i < n; ++i) df.push_back(inst.f.derivative(i));
    std::vector<std::vector<FqElem>> dval(n);
    for (int i = 0; i < n; ++i)
      for (auto& cp : cps) dval[i].push_back(closed_point_value(inst.X, cp, df[i]));
    Complex zeta(0, 0);
    CMatN gsum(n, std::vector<Complex>(n, Complex(0, 0)));
    CTensor3 asum(n, CMatN(n, std::vector<Complex>(n, Complex(0, 0))));
    size_t total_points = 0;
    double tp = 1;
    for (int deg = 0; deg <= inst.N; ++deg) {
      for (auto& sp : sym_points(inst.X, inst.f, deg, std::max(deg, 1), &cps)) {
        ++total_points;
        Complex w0 = tp * char_eval(chi, sp.value);
        zeta += w0;
        std::vector<Complex> wd(n);
        for (int i = 0; i < n; ++i) {
          FqElem val(inst.X.ctx);
          for (auto& [idx, mult] : sp.parts) val += int64_t(mult) * dval[i][idx];
          wd[i] = char_eval(chi2, val);
        }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            gsum[i][j] += w0 * wd[i] * wd[j];
            for (int k = 0; k < n; ++k) asum[i][j][k] += w0 * wd[i] * wd[j] * wd[k];
          }
      }
      tp *= inst.t;
    }
    if (total_points > 500) return false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (std::abs(g[i][j] - 0.5 * zeta * gsum[i][j]) > 1e-8) return false;
        for (int k = 0; k < n; ++k)
          if (std::abs(A[i][j][k] - zeta * zeta * asum[i][j][k]) > 1e-8)
            return false;
      }
  }

  // Lemma-style jet sums on A^1, A^2, and a curve
  AdditiveCharacter chi(f3, 1), chi2(f3, 1);
  for (auto& [X, f] : std::vector<std::pair<VarietySpec, MPoly>>{
           {VarietySpec::affine_space(f3, 1), MPoly::parse(f3, 1, "x")},
           {VarietySpec::affine_space(f3, 2), MPoly::parse(f3, 2, "x")},
           {VarietySpec::affine(f3, 2, {MPoly::parse(f3, 2, "y - x^2")}),
            MPoly::parse(f3, 2, "x")}}) {
    JetSum js = jet_char_sum(X, f, chi, chi2);
    if (!js.df_nontrivial_everywhere) return false;
    if (std::abs(js.value) > 1e-9) return false;
  }
  return true;
}

static bool c14_cone_geometry() {
  // exact orthant tensors
  Vec x0 = {1.0, 2.0, 0.5};
  auto [g, A] = orthant_tensors(x0);
  for (size_t i = 0; i < x0.size(); ++i) {
    if (std::abs(g[i][i] - 1.0 / (x0[i] * x0[i])) > 1e-12) return false;
    if (std::abs(A[i][i][i] + 2.0 / (x0[i] * x0[i] * x0[i])) > 1e-12) return false;
  }

  // finite differences vs closed forms
  auto orth = ConeModel::orthant(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double e2 = (i == j) ? 1.0 / (x0[i] * x0[i]) : 0.0;
      if (std::abs(detail::cone_d2_fd(orth, x0, i, j) - e2) >
          1e-6 * std::max(1.0, e2))
        return false;
      for (int k = 0; k < 3; ++k) {
        double e3 = (i == j && j == k) ? -2.0 / (x0[i] * x0[i] * x0[i]) : 0.0;
        if (std::abs(detail::cone_d3_fd(orth, x0, i, j, k) - e3) >
            1e-6 * std::max(1.0, std::abs(e3)))
          return false;
      }
    }

  // WDVV at 20 random interior points; adversarial perturbation must fail
  std::mt19937_64 rng(1414);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int trial = 0; trial < 20; ++trial)
    if (!orthant_wdvv({u(rng), u(rng), u(rng)})) return false;
  {
    auto [gp, Ap] = orthant_tensors({1.0, 2.0, 3.0});
    Ap[0][1][2] = Ap[1][2][0] = Ap[2][0][1] = 0.1;
    Ap[2][1][0] = Ap[0][2][1] = Ap[1][0][2] = 0.1;
    if (wdvv_check(gp, Ap)) return false;
  }

  // MC ratio constancy within 3 sigma on lorentz(2)
  auto lor = ConeModel::lorentz(2);
  Vec p1 = {2.0, 0.5}, p2 = {3.5, -1.2};
  auto e1 = char_fn_mc(lor, p1, 60000, 21);
  auto e2 = char_fn_mc(lor, p2, 60000, 22);
  double r1 = char_fn(lor, p1) / e1.value;
  double r2 = char_fn(lor, p2) / e2.value;
  double sd1 = r1 * e1.stderr_ / e1.value;
  double sd2 = r2 * e2.stderr_ / e2.value;
  return std::abs(r1 - r2) <= 3.0 * std::sqrt(sd1 * sd1 + sd2 * sd2);
}

static bool c15_categories() {
  // exact composition / column-stochasticity, associativity
  std::mt19937_64 rng(1515);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_stoch = [&](size_t r, size_t c) {
    Mat rows(r, Vec(c));
    for (size_t x = 0; x < c; ++x) {
      double s = 0;
      for (size_t y = 0; y < r; ++y) s += (rows[y][x] = u(rng) + 0.01);
      for (size_t y = 0; y < r; ++y) rows[y][x] /= s;
    }
    return StochasticMatrix::from_rows(std::move(rows));
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto S1 = random_stoch(3, 2), S2 = random_stoch(4, 3), S3 = random_stoch(2, 4);
    compose(S2, S1).validate(1e-12);
    auto l = compose(S3, compose(S2, S1)), r = compose(compose(S3, S2), S1);
    for (size_t y = 0; y < 2; ++y)
      for (size_t x = 0; x < 2; ++x)
        if (std::abs(l(y, x) - r(y, x)) > 1e-12) return false;
  }

  // Hom-set convexity sweeps
  FinProb P({"a", "b", "c"}, {0.2, 0.5, 0.3});
  FinProb Q({"u", "v"}, {0.4, 0.6});
  if (!hom_convexity_check(P, Q, 100)) return false;

  CMat rho_in = CMat::Zero(2, 2), rho_out = CMat::Zero(2, 2);
  rho_in(0, 0) = 0.7;
  rho_in(1, 1) = 0.3;
  rho_out(0, 0) = 0.55;
  rho_out(1, 1) = 0.45;
  rho_out(0, 1) = rho_out(1, 0) = 0.1;
  if (!quantum_hom_convexity_check(rho_in, rho_out, 50)) return false;

  // transpose map: non-CP with Choi eigenvalue -1; identity/depolarizing CPTP
  auto tr = ChoiMatrix::transpose_map(2);
  if (cp_check(tr) || !tp_check(tr)) return false;
  if (std::abs(choi_min_eigenvalue(tr) + 1.0) > 1e-10) return false;
  auto id = ChoiMatrix::identity_channel(2);
  auto dep = ChoiMatrix::depolarizing(2, 0.5);
  return cp_check(id) && tp_check(id) && cp_check(dep) && tp_check(dep);
}

static bool c16_algebra() {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      CliffordAlgebra cl{p, q};
      if (cl.dim() != (size_t(1) << (p + q))) return false;
      if (!clifford_check(cl)) return false;
    }

  // paracomplex eps^2 = (1, 0) exactly
  Paracomplex eps{0, 1};
  auto sq = para_mul(eps, eps);
  if (sq.x != 1.0 || sq.y != 0.0) return false;

  // para_split reassembly is exact
  QMat E = qmat(4, 4);
  E[0][1] = E[1][0] = Rat(1);
  E[2][2] = Rat(1);
  E[3][3] = Rat(-1);
  ParaSplit s = para_split(E);
  QMat all = s.plus;
  for (auto& r : s.minus) all.push_back(r);
  if (qrank(all) != 4) return false;

  // module tensors: pairing identity exact in rational arithmetic
  auto para = FrobeniusAlgebra::paracomplex_numbers();
  ModuleTensors mt = module_tensors(para, 2);
  auto basis = [&](int i) {
    QVec v(mt.dim, Rat(0));
    v[i] = Rat(1);
    return v;
  };
  auto gdot = [&](const QVec& a, const QVec& b) {
    Rat acc(0);
    for (int i = 0; i < mt.dim; ++i)
      for (int j = 0; j < mt.dim; ++j) acc += a[i] * mt.g[i][j] * b[j];
    return acc;
  };
  for (int x = 0; x < mt.dim; ++x)
    for (int y = 0; y < mt.dim; ++y)
      for (int z = 0; z < mt.dim; ++z) {
        if (gdot(mt.circ(basis(x), basis(y)), basis(z)) !=
            gdot(basis(x), mt.circ(basis(y), basis(z))))
          return false;
        QVec l = mt.circ(mt.circ(basis(x), basis(y)), basis(z));
        QVec r = mt.circ(basis(x), mt.circ(basis(y), basis(z)));
        if (l != r) return false;
      }

  // quadratic algebras: K^! = 1, involution and duality on 25 random pairs
  auto K = QuadraticAlgebra::polynomial_ring();
  auto one = QuadraticAlgebra::unit_algebra();
  if (!(quad_dual(K) == one)) return false;
  std::mt19937_64 rng(1616);
  auto random_quad = [&](int d, int nrel) {
    QMat rel;
    for (int r = 0; r < nrel; ++r) {
      QVec row(d * d);
      for (auto& v : row) v = Rat(int64_t(rng() % 5) - 2);
      rel.push_back(std::move(row));
    }
    return QuadraticAlgebra::make(d, rel);
  };
  for (int trial = 0; trial < 25; ++trial) {
    auto A = random_quad(2, 1 + int(rng() % 2));
    auto B = random_quad(2, 1 + int(rng() % 2));
    if (!(quad_dual(quad_dual(A)) == A)) return false;
    if (!quad_duality_check(A, B)) return false;
  }
  return true;
}

int main() {
  criterion("1. zeta closed forms (point, A^1, P^n over F_2, F_3, exact)",
            c01_zeta_closed_forms);
  criterion("2. symmetric-product counts match zeta coefficients (6 varieties)",
            c02_sym_point_oracle);
  criterion("3. twisted zeta dual-path agreement on 20 random instances",
            c03_zeta_chi_dual_path);
  criterion("4. character measures kill [X x A^1, pi] (p = 2, 3, 5)",
            c04_character_kills_ideal);
  criterion("5. Witt laws: geometric product and zeta exponentiability",
            c05_witt_laws);
  criterion("6. Shannon entropy: geometric oracle, P^1 additivity, S_mu match",
            c06_entropy);
  criterion("7. reduced-matrix counts and partition identification",
            c07_red_matrices);
  criterion("8. entropy over Z: Euler product vs Dirichlet oracle (1e-3)",
            c08_lfunction_oracle);
  criterion("9. zeta KL: exact zeros, decomposition sum, branch bookkeeping",
            c09_kl_zeta);
  criterion("10. quantum KL quadratic expansion has a cubic remainder",
            c10_quantum_kl_expansion);
  criterion("11. Fisher-Rao: three formulations agree (Bernoulli + 3-state)",
            c11_fisher_triple);
  criterion("12. Bregman = KL for the entropy potential; associativity verdicts",
            c12_bregman);
  criterion("13. motivic tensors equal brute-force sums; jet sums vanish",
            c13_motivic_tensors);
  criterion("14. cone geometry: orthant closed forms, WDVV, MC constancy",
            c14_cone_geometry);
  criterion("15. probability categories: composition, convexity, CP/TP verdicts",
            c15_categories);
  criterion("16. algebra: Clifford, paracomplex, module tensors, duality",
            c16_algebra);

  if (g_failures == 0) {
    std::cout << "all 16 criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criteria failed\n";
  return 1;
}
