#pragma once

/**
 * Classical and quantum information geometry: Shannon/KL, the Fisher-Rao
 * metric in its three formulations (direct, KL-Hessian, partition form),
 * the Amari-Chentsov 3-tensor, Bregman machinery, alpha-connections, and
 * the WDVV associativity predicates.
 *
 * Families are user-supplied evaluators; parameter derivatives default to
 * central differences (step 1e-5 for first derivatives, wider stencils for
 * higher ones), with analytic derivatives used when a family supplies them.
 */

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "igz/common.hpp"

namespace igz {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;
using Tensor3 = std::vector<Mat>;

inline Mat make_mat(int r, int c) { return Mat(r, Vec(c, 0.0)); }
inline Tensor3 make_tensor3(int r) { return Tensor3(r, make_mat(r, r)); }

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

inline void check_distribution(const Vec& P) {
  double sum = 0;
  for (double p : P) {
    if (p < -1e-12) throw ValidationError("distribution: negative weight");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("distribution: weights sum to " + std::to_string(sum));
}

/// -sum p log p with 0 log 0 = 0.
inline double shannon(const Vec& P) {
  double acc = 0;
  for (double p : P)
    if (p > 0) acc -= p * std::log(p);
  return acc;
}

/// sum P log(P/Q); +infinity on support violation.
inline double kl(const Vec& P, const Vec& Q) {
  if (P.size() != Q.size()) throw ValidationError("kl: size mismatch");
  double acc = 0;
  for (size_t i = 0; i < P.size(); ++i) {
    if (P[i] <= 0) continue;
    if (Q[i] <= 0) return std::numeric_limits<double>::infinity();
    acc += P[i] * std::log(P[i] / Q[i]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Parametric families
// ---------------------------------------------------------------------------

struct StatFamily {
  int r = 0;                                   // parameter dimension
  std::function<Vec(const Vec&)> eval;         // gamma -> distribution
  std::function<Mat(const Vec&)> jacobian;     // optional: [x][i] = dP_x/dg_i

  static StatFamily bernoulli() {
    StatFamily f;
    f.r = 1;
    f.eval = [](const Vec& g) { return Vec{g[0], 1.0 - g[0]}; };
    f.jacobian = [](const Vec&) { return Mat{{1.0}, {-1.0}}; };
    return f;
  }

  /// k outcomes, k-1 free parameters, last weight = 1 - sum.
  static StatFamily categorical(int k) {
    StatFamily f;
    f.r = k - 1;
    f.eval = [k](const Vec& g) {
      Vec P(g.begin(), g.end());
      double s = 0;
      for (double x : g) s += x;
      P.push_back(1.0 - s);
      return P;
    };
    f.jacobian = [k](const Vec&) {
      Mat J = make_mat(k, k - 1);
      for (int i = 0; i < k - 1; ++i) {
        J[i][i] = 1.0;
        J[k - 1][i] = -1.0;
      }
      return J;
    };
    return f;
  }

  /// P_x proportional to base_x exp(sum_i g_i T[x][i]).
  static StatFamily exponential_tilt(Vec base, Mat T) {
    StatFamily f;
    f.r = static_cast<int>(T.empty() ? 0 : T[0].size());
    f.eval = [base = std::move(base), T = std::move(T)](const Vec& g) {
      Vec P(base.size());
      double z = 0;
      for (size_t x = 0; x < base.size(); ++x) {
        double e = 0;
        for (size_t i = 0; i < g.size(); ++i) e += g[i] * T[x][i];
        P[x] = base[x] * std::exp(e);
        z += P[x];
      }
      for (auto& p : P) p /= z;
      return P;
    };
    return f;
  }
};

namespace fd {

constexpr double kStep1 = 1e-5;   // first derivatives
constexpr double kStep2 = 1e-4;   // second derivatives
constexpr double kStep3 = 2e-3;   // third derivatives

inline Vec shift(const Vec& g, int i, double h) {
  Vec s = g;
  s[i] += h;
  return s;
}

/// dP[x][i] by central differences at step h and h/2 (the h/2 stencil is
/// the returned value; the coarser one is its verification).
inline Mat family_jacobian(const StatFamily& fam, const Vec& g,
                           double h = kStep1) {
  if (fam.jacobian) return fam.jacobian(g);
  Vec P0 = fam.eval(g);
  Mat J = make_mat(static_cast<int>(P0.size()), fam.r);
  for (int i = 0; i < fam.r; ++i) {
    double hh = h / 2;
    Vec up = fam.eval(shift(g, i, hh)), dn = fam.eval(shift(g, i, -hh));
    for (size_t x = 0; x < P0.size(); ++x) J[x][i] = (up[x] - dn[x]) / (2 * hh);
  }
  return J;
}

/// d2P[x] for the (i,j) pair; works for i = j as well.
inline Vec family_hess_dir(const StatFamily& fam, const Vec& g, int i, int j,
                           double h = kStep2) {
  auto at = [&](double si, double sj) {
    Vec s = g;
    s[i] += si;
    s[j] += sj;
    return fam.eval(s);
  };
  Vec pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);
  Vec out(pp.size());
  for (size_t x = 0; x < out.size(); ++x)
    out[x] = (pp[x] - pm[x] - mp[x] + mm[x]) / (4 * h * h);
  return out;
}

/// Scalar second derivative d^2/dg_i dg_j of a function of gamma.
template <class F>
double scalar_hess(const F& fn, const Vec& g, int i, int j, double h = kStep2) {
  auto at = [&](double si, double sj) {
    Vec s = g;
    s[i] += si;
    s[j] += sj;
    return fn(s);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
}

/// Scalar third derivative d^3/dg_i dg_j dg_k.
template <class F>
double scalar_third(const F& fn, const Vec& g, int i, int j, int k,
                    double h = kStep3) {
  auto inner = [&](const Vec& base) {
    return scalar_hess(fn, base, j, k, h);
  };
  return (inner(shift(g, i, h)) - inner(shift(g, i, -h))) / (2 * h);
}

}  // namespace fd

// ---------------------------------------------------------------------------
// Fisher-Rao: three formulations
// ---------------------------------------------------------------------------

/// Direct form g_ij = sum_x P_x d_i log P_x d_j log P_x.
inline Mat fisher_rao(const StatFamily& fam, const Vec& gamma) {
  Vec P = fam.eval(gamma);
  check_distribution(P);
  Mat J = fd::family_jacobian(fam, gamma);
  Mat g = make_mat(fam.r, fam.r);
  for (size_t x = 0; x < P.size(); ++x) {
    if (P[x] <= 1e-300) throw ValidationError("fisher_rao: boundary point");
    for (int i = 0; i < fam.r; ++i)
      for (int j = 0; j < fam.r; ++j) g[i][j] += J[x][i] * J[x][j] / P[x];
  }
  return g;
}

/// KL-Hessian form: Hessian in the first argument of KL(P(gamma)||P(gamma0))
/// at gamma = gamma0.
inline Mat fisher_kl_hessian(const StatFamily& fam, const Vec& gamma) {
  Vec P0 = fam.eval(gamma);
  auto f = [&](const Vec& g) { return kl(fam.eval(g), P0); };
  Mat g = make_mat(fam.r, fam.r);
  for (int i = 0; i < fam.r; ++i)
    for (int j = i; j < fam.r; ++j)
      g[i][j] = g[j][i] = fd::scalar_hess(f, gamma, i, j);
  return g;
}

/// A parametric family of commuting Hamiltonians H(gamma) (one energy per
/// state) with Gibbs weights at inverse temperature beta.
struct HamiltonianFamily {
  int r = 0;
  std::function<Vec(const Vec&)> H;

  StatFamily induced(double beta) const {
    StatFamily f;
    f.r = r;
    f.eval = [Hn = H, beta](const Vec& g) {
      Vec e = Hn(g);
      double z = 0;
      Vec P(e.size());
      for (size_t x = 0; x < e.size(); ++x) z += (P[x] = std::exp(-beta * e[x]));
      for (auto& p : P) p /= z;
      return P;
    };
    return f;
  }
};

/// Partition form: g_ij = beta^2 sum_x P_x L_i L_j - d_i log Z d_j log Z,
/// with the generalized forces L_{x,i} = -dH_x/dg_i.
inline Mat fisher_partition(const HamiltonianFamily& ham, double beta,
                            const Vec& gamma) {
  Vec H0 = ham.H(gamma);
  const size_t k = H0.size();
  Vec P(k);
  double z = 0;
  for (size_t x = 0; x < k; ++x) z += (P[x] = std::exp(-beta * H0[x]));
  for (auto& p : P) p /= z;

  // L by central differences on H
  Mat L = make_mat(static_cast<int>(k), ham.r);
  for (int i = 0; i < ham.r; ++i) {
    Vec up = ham.H(fd::shift(gamma, i, fd::kStep1));
    Vec dn = ham.H(fd::shift(gamma, i, -fd::kStep1));
    for (size_t x = 0; x < k; ++x) L[x][i] = -(up[x] - dn[x]) / (2 * fd::kStep1);
  }
  // d log Z by central differences
  auto logz = [&](const Vec& g) {
    Vec e = ham.H(g);
    double acc = 0;
    for (double v : e) acc += std::exp(-beta * v);
    return std::log(acc);
  };
  Vec dlz(ham.r);
  for (int i = 0; i < ham.r; ++i)
    dlz[i] = (logz(fd::shift(gamma, i, fd::kStep1)) -
              logz(fd::shift(gamma, i, -fd::kStep1))) /
             (2 * fd::kStep1);

  Mat g = make_mat(ham.r, ham.r);
  for (int i = 0; i < ham.r; ++i)
    for (int j = 0; j < ham.r; ++j) {
      double m2 = 0;
      for (size_t x = 0; x < k; ++x) m2 += P[x] * L[x][i] * L[x][j];
      g[i][j] = beta * beta * m2 - dlz[i] * dlz[j];
    }
  return g;
}

// ---------------------------------------------------------------------------
// Quantum KL and its quadratic expansion
// ---------------------------------------------------------------------------

using CMat = Eigen::MatrixXcd;

inline void check_density(const CMat& rho, double tol = 1e-10) {
  if (rho.rows() != rho.cols()) throw ValidationError("density: not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("density: not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw ValidationError("density: negative eigenvalue");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw ValidationError("density: trace != 1");
}

namespace detail {
inline CMat herm_log(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  if (es.eigenvalues().minCoeff() <= 1e-14)
    throw ValidationError("quantum_kl: singular density matrix");
  Eigen::VectorXd lg = es.eigenvalues().array().log();
  return es.eigenvectors() * lg.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors().adjoint();
}
}  // namespace detail

/// Tr rho (log rho - log rho2) via eigendecomposition; rho2 must be
/// invertible.
inline double quantum_kl(const CMat& rho, const CMat& rho2) {
  check_density(rho);
  check_density(rho2);
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  double tr_rho_log_rho = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam > 1e-300) tr_rho_log_rho += lam * std::log(lam);
  }
  CMat log2 = detail::herm_log(rho2);
  return tr_rho_log_rho - (rho * log2).trace().real();
}

/// (KL(rho+h||rho), (1/2) Tr(h rho^-1 h)); requires [rho,h] = 0, Tr h = 0,
/// and rho+h a valid density.  The difference is O(h^3).
inline std::pair<double, double> quantum_kl_expansion(const CMat& rho,
                                                      const CMat& h) {
  check_density(rho);
  double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((rho * h - h * rho).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("quantum_kl_expansion: [rho, h] != 0");
  if (std::abs(h.trace().real()) > 1e-10 || std::abs(h.trace().imag()) > 1e-10)
    throw ValidationError("quantum_kl_expansion: Tr h != 0");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("quantum_kl_expansion: h not Hermitian");
  CMat pert = rho + h;
  check_density(pert, 1e-9);
  double exact = quantum_kl(pert, rho);
  double quad = 0.5 * (h * rho.inverse() * h).trace().real();
  return {exact, quad};
}

// ---------------------------------------------------------------------------
// Amari-Chentsov tensor
// ---------------------------------------------------------------------------

/// A_abc = sum_x P_x d_a log P_x d_b log P_x d_c log P_x.
inline Tensor3 amari_chentsov(const StatFamily& fam, const Vec& gamma) {
  Vec P = fam.eval(gamma);
  Mat J = fd::family_jacobian(fam, gamma);
  Tensor3 A = make_tensor3(fam.r);
  for (size_t x = 0; x < P.size(); ++x) {
    if (P[x] <= 1e-300) throw ValidationError("amari_chentsov: boundary point");
    for (int a = 0; a < fam.r; ++a)
      for (int b = 0; b < fam.r; ++b)
        for (int c = 0; c < fam.r; ++c)
          A[a][b][c] += J[x][a] * J[x][b] * J[x][c] / (P[x] * P[x]);
  }
  return A;
}

/// Divergence form of the 3-tensor,
///   A_abc = (d_c d_a' d_b' - d_a d_b d_c') D(x||y) |_{y=x},
/// by finite differences.  For D = KL this grouping reproduces
/// amari_chentsov; the opposite grouping is its negative.
template <class Div>
Tensor3 amari_via_divergence(const Div& D, int r, const Vec& gamma) {
  Tensor3 A = make_tensor3(r);
  const double h = fd::kStep3;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        // d_c^x (d_a' d_b')^y
        auto hess_y = [&](const Vec& x) {
          auto f = [&](const Vec& y) { return D(x, y); };
          return fd::scalar_hess(f, gamma, a, b, h);
        };
        double t1 = (hess_y(fd::shift(gamma, c, h)) -
                     hess_y(fd::shift(gamma, c, -h))) /
                    (2 * h);
        // d_a d_b^x (d_c')^y
        auto dydc = [&](const Vec& x) {
          auto f = [&](const Vec& y) { return D(x, y); };
          return (f(fd::shift(gamma, c, h)) - f(fd::shift(gamma, c, -h))) /
                 (2 * h);
        };
        double t2 = fd::scalar_hess(dydc, gamma, a, b, h);
        A[a][b][c] = t1 - t2;
      }
  return A;
}

// ---------------------------------------------------------------------------
// Bregman machinery
// ---------------------------------------------------------------------------

struct BregmanPotential {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;  // optional

  /// Phi(P) = sum P log P (negative Shannon entropy); KL's generator.
  static BregmanPotential neg_shannon() {
    BregmanPotential b;
    b.value = [](const Vec& P) {
      double acc = 0;
      for (double p : P)
        if (p > 0) acc += p * std::log(p);
      return acc;
    };
    b.grad = [](const Vec& P) {
      Vec g(P.size());
      for (size_t i = 0; i < P.size(); ++i) g[i] = 1.0 + std::log(P[i]);
      return g;
    };
    b.hess = [](const Vec& P) {
      Mat H = make_mat(static_cast<int>(P.size()), static_cast<int>(P.size()));
      for (size_t i = 0; i < P.size(); ++i) H[i][i] = 1.0 / P[i];
      return H;
    };
    return b;
  }

  static BregmanPotential half_sqnorm() {
    BregmanPotential b;
    b.value = [](const Vec& x) {
      double acc = 0;
      for (double v : x) acc += 0.5 * v * v;
      return acc;
    };
    b.grad = [](const Vec& x) { return x; };
    b.hess = [](const Vec& x) {
      Mat H = make_mat(static_cast<int>(x.size()), static_cast<int>(x.size()));
      for (size_t i = 0; i < x.size(); ++i) H[i][i] = 1.0;
      return H;
    };
    return b;
  }
};

/// Phi(x) - Phi(y) - <grad Phi(y), x - y>.
inline double bregman(const BregmanPotential& phi, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw ValidationError("bregman: size mismatch");
  Vec gy = phi.grad(y);
  double acc = phi.value(x) - phi.value(y);
  for (size_t i = 0; i < x.size(); ++i) acc -= gy[i] * (x[i] - y[i]);
  return acc;
}

/// Samples the Hessian at interior points and checks PSD-ness (tol -1e-8).
inline bool bregman_convexity_sample(const BregmanPotential& phi, int dim,
                                     int npts = 50, uint64_t seed = 17) {
  if (!phi.hess) throw ValidationError("bregman convexity: no Hessian supplied");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < npts; ++trial) {
    Vec x(dim);
    double s = 0;
    for (auto& v : x) s += (v = u(rng));
    for (auto& v : x) v /= s;  // interior simplex point
    Mat H = phi.hess(x);
    Eigen::MatrixXd M(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) M(i, j) = H[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.eigenvalues().minCoeff() < -1e-8) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hessian identities for Phi = -shannon o family
// ---------------------------------------------------------------------------

struct HessianReport {
  bool second_ok = false;
  bool third_ok = false;
  double second_err = 0;
  double third_err = 0;
};

/// Checks d_a d_b Phi = g_ab + sum_n (d_a d_b P_n) log P_n and the
/// third-derivative expansion
///   d_a d_b d_c Phi = -A_abc + sum_n (d^3 P_n) log P_n
///     + sum_n [dd_ab P d_c P + dd_bc P d_a P + dd_ac P d_b P] / P_n.
inline HessianReport hessian_identities(const StatFamily& fam, const Vec& gamma,
                                        double rel_tol = 1e-4) {
  auto phi = [&](const Vec& g) {
    Vec P = fam.eval(g);
    double acc = 0;
    for (double p : P)
      if (p > 0) acc += p * std::log(p);
    return acc;
  };
  Vec P = fam.eval(gamma);
  Mat g = fisher_rao(fam, gamma);
  Mat J = fd::family_jacobian(fam, gamma);
  Tensor3 A = amari_chentsov(fam, gamma);
  const int r = fam.r;

  HessianReport rep;
  double max2 = 0, max3 = 0, scale2 = 0, scale3 = 0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      double lhs = fd::scalar_hess(phi, gamma, a, b);
      Vec ddP = fd::family_hess_dir(fam, gamma, a, b);
      double rhs = g[a][b];
      for (size_t n = 0; n < P.size(); ++n) rhs += ddP[n] * std::log(P[n]);
      max2 = std::max(max2, std::abs(lhs - rhs));
      scale2 = std::max(scale2, std::abs(lhs));
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        double lhs = fd::scalar_third(phi, gamma, a, b, c);
        Vec ab = fd::family_hess_dir(fam, gamma, a, b, fd::kStep3);
        Vec bc = fd::family_hess_dir(fam, gamma, b, c, fd::kStep3);
        Vec ac = fd::family_hess_dir(fam, gamma, a, c, fd::kStep3);
        // d^3 P by differencing the pair stencil
        Vec up = fd::family_hess_dir(fam, fd::shift(gamma, c, fd::kStep3), a, b,
                                     fd::kStep3);
        Vec dn = fd::family_hess_dir(fam, fd::shift(gamma, c, -fd::kStep3), a, b,
                                     fd::kStep3);
        double rhs = -A[a][b][c];
        for (size_t n = 0; n < P.size(); ++n) {
          double d3 = (up[n] - dn[n]) / (2 * fd::kStep3);
          rhs += d3 * std::log(P[n]);
          rhs += (ab[n] * J[n][c] + bc[n] * J[n][a] + ac[n] * J[n][b]) / P[n];
        }
        max3 = std::max(max3, std::abs(lhs - rhs));
        scale3 = std::max(scale3, std::abs(lhs));
      }
  rep.second_err = max2 / std::max(1.0, scale2);
  rep.third_err = max3 / std::max(1.0, scale3);
  rep.second_ok = rep.second_err <= rel_tol;
  rep.third_ok = rep.third_err <= 10 * rel_tol;  // third FD is noisier
  return rep;
}

// ---------------------------------------------------------------------------
// Connections
// ---------------------------------------------------------------------------

/// Levi-Civita symbols (lowered): G_{ab,c} = (d_a g_bc + d_b g_ac - d_c g_ab)/2,
/// metric derivatives by central differences of fisher_rao.
inline Tensor3 levi_civita_lowered(const StatFamily& fam, const Vec& gamma) {
  const int r = fam.r;
  const double h = fd::kStep2;
  std::vector<Mat> dg(r);
  for (int c = 0; c < r; ++c) {
    Mat up = fisher_rao(fam, fd::shift(gamma, c, h));
    Mat dn = fisher_rao(fam, fd::shift(gamma, c, -h));
    dg[c] = make_mat(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) dg[c][i][j] = (up[i][j] - dn[i][j]) / (2 * h);
  }
  Tensor3 G = make_tensor3(r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        G[a][b][c] = 0.5 * (dg[a][b][c] + dg[b][a][c] - dg[c][a][b]);
  return G;
}

/// Gamma^(alpha)_{ab,c} = Gamma^{LC}_{ab,c} - (alpha/2) A_abc.
inline Tensor3 alpha_connection(const StatFamily& fam, const Vec& gamma,
                                double alpha) {
  Tensor3 G = levi_civita_lowered(fam, gamma);
  Tensor3 A = amari_chentsov(fam, gamma);
  const int r = fam.r;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) G[a][b][c] -= 0.5 * alpha * A[a][b][c];
  return G;
}

inline Eigen::MatrixXd to_eigen(const Mat& g) {
  Eigen::MatrixXd M(g.size(), g.empty() ? 0 : g[0].size());
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < g[i].size(); ++j) M(i, j) = g[i][j];
  return M;
}

inline Mat invert_metric(const Mat& g) {
  Eigen::MatrixXd M = to_eigen(g);
  if (std::abs(M.determinant()) < 1e-12)
    throw ValidationError("singular metric (|det g| < 1e-12)");
  Eigen::MatrixXd inv = M.inverse();
  Mat out = make_mat(static_cast<int>(g.size()), static_cast<int>(g.size()));
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) out[i][j] = inv(i, j);
  return out;
}

/// First structure connection: del_a -> lambda A_ab^c del_c, indices raised
/// with g^{-1}.  Returned as conn[a][b][c].
inline Tensor3 first_structure_connection(const Mat& g, const Tensor3& A,
                                          double lambda) {
  const int r = static_cast<int>(g.size());
  Mat ginv = invert_metric(g);
  Tensor3 conn = make_tensor3(r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        double acc = 0;
        for (int e = 0; e < r; ++e) acc += A[a][b][e] * ginv[e][c];
        conn[a][b][c] = lambda * acc;
      }
  return conn;
}

// ---------------------------------------------------------------------------
// WDVV associativity predicates
// ---------------------------------------------------------------------------

/// Largest associativity defect |A_bce g^{ef} A_fad - A_bae g^{ef} A_fcd|
/// over all index quadruples, relative to the scale |A|^2 |g^-1|.
inline double wdvv_relative_defect(const Mat& g, const Tensor3& A) {
  const int r = static_cast<int>(g.size());
  Mat ginv = invert_metric(g);
  double normA = 0, normG = 0;
  for (auto& m : A)
    for (auto& row : m)
      for (double v : row) normA = std::max(normA, std::abs(v));
  for (auto& row : ginv)
    for (double v : row) normG = std::max(normG, std::abs(v));
  double worst = 0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int d = 0; d < r; ++d) {
          double lhs = 0, rhs = 0;
          for (int e = 0; e < r; ++e)
            for (int f = 0; f < r; ++f) {
              lhs += A[b][c][e] * ginv[e][f] * A[f][a][d];
              rhs += A[b][a][e] * ginv[e][f] * A[f][c][d];
            }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst / std::max(1.0, normA * normA * normG);
}

/// A_bce g^{ef} A_fad = A_bae g^{ef} A_fcd for all index quadruples,
/// tolerance 1e-8 scaled by |A|^2 |g^-1|.
inline bool wdvv_check(const Mat& g, const Tensor3& A) {
  return wdvv_relative_defect(g, A) <= 1e-8;
}

/// The eight-term associativity identity in the Bregman brackets
/// T_{ab,e} = <d_e grad Phi(P), dd_ab P> + <dd_ab grad Phi(P), d_e P>,
/// checked as T_{ab,e} g^{ef} T_{cd,f} = T_{ac,e} g^{ef} T_{bd,f}.
inline bool bregman_assoc_check(const StatFamily& fam,
                                const BregmanPotential& phi, const Vec& gamma) {
  const int r = fam.r;
  const double h = fd::kStep3;
  Mat J = fd::family_jacobian(fam, gamma);

  // d_e of grad Phi(P(gamma)) — rows indexed by state, one matrix per e
  auto gradp = [&](const Vec& g) { return phi.grad(fam.eval(g)); };
  std::vector<Vec> dgrad(r);
  for (int e = 0; e < r; ++e) {
    Vec up = gradp(fd::shift(gamma, e, h)), dn = gradp(fd::shift(gamma, e, -h));
    dgrad[e].resize(up.size());
    for (size_t n = 0; n < up.size(); ++n) dgrad[e][n] = (up[n] - dn[n]) / (2 * h);
  }
  // dd_ab of P and of grad Phi(P)
  auto hess_vec = [&](const std::function<Vec(const Vec&)>& fn, int a, int b) {
    auto at = [&](double sa, double sb) {
      Vec s = gamma;
      s[a] += sa;
      s[b] += sb;
      return fn(s);
    };
    Vec pp = at(h, h), pm = at(h, -h), mp = at(-h, h), mm = at(-h, -h);
    Vec out(pp.size());
    for (size_t n = 0; n < out.size(); ++n)
      out[n] = (pp[n] - pm[n] - mp[n] + mm[n]) / (4 * h * h);
    return out;
  };

  Tensor3 T = make_tensor3(r);
  std::function<Vec(const Vec&)> evalP = fam.eval;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Vec ddP = hess_vec(evalP, a, b);
      Vec ddG = hess_vec(gradp, a, b);
      for (int e = 0; e < r; ++e) {
        double t = 0;
        for (size_t n = 0; n < ddP.size(); ++n)
          t += dgrad[e][n] * ddP[n] + ddG[n] * J[n][e];
        T[a][b][e] = t;
      }
    }

  // the statistical metric of the divergence: Hessian in the first slot
  auto D = [&](const Vec& x, const Vec& y) {
    return bregman(phi, fam.eval(x), fam.eval(y));
  };
  Mat g = make_mat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      auto f = [&](const Vec& x) { return D(x, gamma); };
      g[i][j] = g[j][i] = fd::scalar_hess(f, gamma, i, j);
    }

  Mat ginv = invert_metric(g);
  double normT = 0, normG = 0;
  for (auto& m : T)
    for (auto& row : m)
      for (double v : row) normT = std::max(normT, std::abs(v));
  for (auto& row : ginv)
    for (double v : row) normG = std::max(normG, std::abs(v));
  const double tol = 1e-4 * std::max(1.0, normT * normT * normG);

  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c)
        for (int d = 0; d < r; ++d) {
          double lhs = 0, rhs = 0;
          for (int e = 0; e < r; ++e)
            for (int f = 0; f < r; ++f) {
              lhs += T[a][b][e] * ginv[e][f] * T[c][d][f];
              rhs += T[a][c][e] * ginv[e][f] * T[b][d][f];
            }
          if (std::abs(lhs - rhs) > tol) return false;
        }
  return true;
}

}  // namespace igz
