#pragma once

/**
 * Convex cones and their characteristic-function geometry: closed-form
 * log phi for the three builtin cones (orthant, Lorentz, PSD), Monte-Carlo
 * integration over the (self-)dual cone as an independent oracle, the
 * log-Hessian metric, the halved-third-derivative connection symbols, and
 * the induced commutative product on tangent vectors.
 *
 * The arbitrary positive constant in the volume form is fixed to 1 through
 * the closed forms; the MC oracle only ever checks ratio constancy.
 */

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "igz/infogeo.hpp"

namespace igz {

enum class ConeKind { Orthant, Lorentz, Psd };

class ConeModel {
 public:
  /// orthant(n) in R^n; lorentz(n) in R^n (x0 > |x_rest|); psd(m) on the
  /// m(m+1)/2 coordinates (diagonal first, then off-diagonal pairs).
  static ConeModel orthant(int n) { return ConeModel(ConeKind::Orthant, n, n); }
  static ConeModel lorentz(int n) {
    if (n < 2) throw ValidationError("lorentz cone needs dimension >= 2");
    return ConeModel(ConeKind::Lorentz, n, n);
  }
  static ConeModel psd(int m) { return ConeModel(ConeKind::Psd, m, m * (m + 1) / 2); }

  ConeKind kind() const { return kind_; }
  int param() const { return n_; }
  int dim() const { return dim_; }

  bool member(const Vec& x) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    switch (kind_) {
      case ConeKind::Orthant:
        for (double v : x)
          if (!(v > 0)) return false;
        return true;
      case ConeKind::Lorentz: {
        double rest = 0;
        for (int i = 1; i < dim_; ++i) rest += x[i] * x[i];
        return x[0] > 0 && x[0] * x[0] > rest;
      }
      case ConeKind::Psd: {
        Eigen::MatrixXd M = to_matrix(x);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        return es.eigenvalues().minCoeff() > 0;
      }
    }
    return false;
  }

  /// log of the closed-form characteristic function (constant fixed to 1):
  /// orthant: prod 1/x_i; lorentz(n): (x0^2 - |x|^2)^{-n/2};
  /// psd(m): det(X)^{-(m+1)/2}.
  double log_phi(const Vec& x) const {
    require_member(x);
    switch (kind_) {
      case ConeKind::Orthant: {
        double acc = 0;
        for (double v : x) acc -= std::log(v);
        return acc;
      }
      case ConeKind::Lorentz: {
        double q = x[0] * x[0];
        for (int i = 1; i < dim_; ++i) q -= x[i] * x[i];
        return -0.5 * double(n_) * std::log(q);
      }
      case ConeKind::Psd: {
        Eigen::MatrixXd M = to_matrix(x);
        return -0.5 * double(n_ + 1) * std::log(M.determinant());
      }
    }
    return 0;
  }

  /// Symmetric-matrix coordinates for the PSD cone.
  Eigen::MatrixXd to_matrix(const Vec& x) const {
    Eigen::MatrixXd M(n_, n_);
    int k = 0;
    for (int i = 0; i < n_; ++i) M(i, i) = x[k++];
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        M(i, j) = M(j, i) = x[k++];
      }
    return M;
  }

  void require_member(const Vec& x) const {
    if (!member(x))
      throw ValidationError("cone: point is outside the open cone");
  }

 private:
  ConeModel(ConeKind k, int n, int dim) : kind_(k), n_(n), dim_(dim) {}
  ConeKind kind_;
  int n_;    // defining parameter (coordinates or matrix size)
  int dim_;  // ambient dimension
};

inline double char_fn(const ConeModel& cone, const Vec& x) {
  return std::exp(cone.log_phi(x));
}

// ---------------------------------------------------------------------------
// Monte-Carlo oracle
// ---------------------------------------------------------------------------

struct McEstimate {
  double value = 0;
  double stderr_ = 0;
  uint64_t samples = 0;
};

/// Importance-sampled integral of e^{-<x,y>} over the dual cone (all
/// builtins here are self-dual).  Deterministic given (seed, samples).
/// Supported samplers: orthant(n), lorentz(2), psd(2).
inline McEstimate char_fn_mc(const ConeModel& cone, const Vec& x,
                             uint64_t samples, uint64_t seed = 1234) {
  cone.require_member(x);
  if (samples < 16) throw ValidationError("char_fn_mc: too few samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(std::numeric_limits<double>::min(), 1.0);
  auto exp_draw = [&](double rate) { return -std::log(u01(rng)) / rate; };

  double sum = 0, sumsq = 0;
  const int d = cone.dim();

  for (uint64_t s = 0; s < samples; ++s) {
    double w = 0;
    switch (cone.kind()) {
      case ConeKind::Orthant: {
        // proposal: independent exponentials at half the optimal rate
        w = 1.0;
        for (int i = 0; i < d; ++i) {
          double rate = 0.5 * x[i];
          double y = exp_draw(rate);
          w *= std::exp(-x[i] * y + rate * y) / rate;
        }
        break;
      }
      case ConeKind::Lorentz: {
        if (d != 2)
          throw ValidationError("char_fn_mc: lorentz sampler supports n = 2");
        // rotated coordinates a = y0 + y1, b = y0 - y1; dy = da db / 2
        double alpha = 0.5 * (x[0] + x[1]), beta = 0.5 * (x[0] - x[1]);
        double ra = 0.5 * alpha, rb = 0.5 * beta;
        double a = exp_draw(ra), b = exp_draw(rb);
        w = 0.5 * std::exp(-alpha * a + ra * a) / ra * std::exp(-beta * b + rb * b) /
            rb;
        break;
      }
      case ConeKind::Psd: {
        if (cone.param() != 2)
          throw ValidationError("char_fn_mc: psd sampler supports m = 2");
        // y11, y22 exponential; y12 uniform on the PSD interval
        double r1 = 0.5 * x[0], r2 = 0.5 * x[1];
        double y11 = exp_draw(r1), y22 = exp_draw(r2);
        double half = std::sqrt(y11 * y22);
        double y12 = (2.0 * u01(rng) - 1.0) * half;
        // <X,Y> = tr(XY) with off-diagonal entries doubled
        double inner = x[0] * y11 + x[1] * y22 + 2.0 * x[2] * y12;
        double qdens = r1 * std::exp(-r1 * y11) * r2 * std::exp(-r2 * y22) /
                       (2.0 * half);
        w = std::exp(-inner) / qdens;
        break;
      }
    }
    sum += w;
    sumsq += w * w;
  }
  McEstimate est;
  est.samples = samples;
  est.value = sum / double(samples);
  double var = std::max(0.0, sumsq / double(samples) - est.value * est.value);
  est.stderr_ = std::sqrt(var / double(samples));
  return est;
}

// ---------------------------------------------------------------------------
// Metric, connection, product
// ---------------------------------------------------------------------------

namespace detail {

/// Generic central pair stencil for d_i d_j log phi, relative step 1e-4.
inline double cone_d2_fd(const ConeModel& cone, const Vec& x, int i, int j) {
  double hi = 1e-4 * std::abs(x[i]), hj = 1e-4 * std::abs(x[j]);
  auto at = [&](double si, double sj) {
    Vec y = x;
    y[i] += si;
    y[j] += sj;
    return cone.log_phi(y);
  };
  return (at(hi, hj) - at(hi, -hj) - at(-hi, hj) + at(-hi, -hj)) / (4 * hi * hj);
}

/// Symmetric 8-point stencil for d_i d_j d_k log phi at relative scale s;
/// O(h^2) truncation, works for repeated indices too.
inline double cone_d3_stencil(const ConeModel& cone, const Vec& x, int i, int j,
                              int k, double s) {
  double hi = s * std::abs(x[i]), hj = s * std::abs(x[j]), hk = s * std::abs(x[k]);
  auto at = [&](double si, double sj, double sk) {
    Vec y = x;
    y[i] += si;
    y[j] += sj;
    y[k] += sk;
    return cone.log_phi(y);
  };
  double num = at(hi, hj, hk) - at(hi, hj, -hk) - at(hi, -hj, hk) +
               at(hi, -hj, -hk) - at(-hi, hj, hk) + at(-hi, hj, -hk) +
               at(-hi, -hj, hk) - at(-hi, -hj, -hk);
  return num / (8 * hi * hj * hk);
}

/// Third derivative with one Richardson level; base relative step 5e-3.
/// (The pair-stencil step 1e-4 is far too small here: dividing machine
/// noise by h^3 would leave ~1e-4 of roundoff.)
inline double cone_d3_fd(const ConeModel& cone, const Vec& x, int i, int j,
                         int k) {
  double d_h = cone_d3_stencil(cone, x, i, j, k, 5e-3);
  double d_h2 = cone_d3_stencil(cone, x, i, j, k, 2.5e-3);
  return (4.0 * d_h2 - d_h) / 3.0;
}

inline double cone_d2(const ConeModel& cone, const Vec& x, int i, int j) {
  if (cone.kind() == ConeKind::Orthant)
    return i == j ? 1.0 / (x[i] * x[i]) : 0.0;
  return cone_d2_fd(cone, x, i, j);
}

inline double cone_d3(const ConeModel& cone, const Vec& x, int i, int j, int k) {
  if (cone.kind() == ConeKind::Orthant)
    return (i == j && j == k) ? -2.0 / (x[i] * x[i] * x[i]) : 0.0;
  return cone_d3_fd(cone, x, i, j, k);
}

}  // namespace detail

/// Vinberg metric g_ij = d_i d_j log phi.
inline Mat cone_metric(const ConeModel& cone, const Vec& x) {
  cone.require_member(x);
  const int d = cone.dim();
  Mat g = make_mat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) g[i][j] = g[j][i] = detail::cone_d2(cone, x, i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g));
  if (es.eigenvalues().minCoeff() <= 0)
    throw ValidationError("cone_metric: metric not positive definite here");
  return g;
}

/// Raw third-derivative tensor A3_ijk = d^3 log phi.
inline Tensor3 cone_a3(const ConeModel& cone, const Vec& x) {
  cone.require_member(x);
  const int d = cone.dim();
  Tensor3 A = make_tensor3(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      for (int k = j; k < d; ++k) {
        double v = detail::cone_d3(cone, x, i, j, k);
        A[i][j][k] = A[i][k][j] = A[j][i][k] = A[j][k][i] = A[k][i][j] =
            A[k][j][i] = v;
      }
  return A;
}

/// Connection symbols Gamma^i_{jk} = (1/2) g^{il} d^3_{jkl} log phi.
inline Tensor3 cone_christoffel(const ConeModel& cone, const Vec& x) {
  Mat g = cone_metric(cone, x);
  Tensor3 A = cone_a3(cone, x);
  Mat ginv = invert_metric(g);
  const int d = cone.dim();
  Tensor3 G = make_tensor3(d);  // G[i][j][k] = Gamma^i_{jk}
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double acc = 0;
        for (int l = 0; l < d; ++l) acc += ginv[i][l] * A[j][k][l];
        G[i][j][k] = 0.5 * acc;
      }
  return G;
}

/// The commutative bilinear product a o b = Gamma^i_{jk} a^j b^k e_i.
inline Vec circ(const ConeModel& cone, const Vec& x, const Vec& a, const Vec& b) {
  Tensor3 G = cone_christoffel(cone, x);
  const int d = cone.dim();
  Vec out(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out[i] += G[i][j][k] * a[j] * b[k];
  return out;
}

// ---------------------------------------------------------------------------
// Orthant closed forms
// ---------------------------------------------------------------------------

/// psi_{i,k}(x) = integral of Y^k e^{-xY} dY = k! / x^{k+1}.
inline double orthant_moment(int k, double x) {
  if (!(x > 0)) throw ValidationError("orthant_moment: boundary");
  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  return fact / std::pow(x, k + 1);
}

/// Orthant (g, A) from the moment identities:
/// g_ii = psi_2/phi - psi^2/phi^2, A_iii = -psi_3/phi + 3 psi psi_2/phi^2
/// - 2 psi^3/phi^3; off-diagonal entries vanish.
inline std::pair<Mat, Tensor3> orthant_tensors(const Vec& x) {
  const int d = static_cast<int>(x.size());
  Mat g = make_mat(d, d);
  Tensor3 A = make_tensor3(d);
  for (int i = 0; i < d; ++i) {
    double phi = orthant_moment(0, x[i]);
    double psi1 = orthant_moment(1, x[i]);
    double psi2 = orthant_moment(2, x[i]);
    double psi3 = orthant_moment(3, x[i]);
    g[i][i] = psi2 / phi - psi1 * psi1 / (phi * phi);
    A[i][i][i] = -psi3 / phi + 3 * psi1 * psi2 / (phi * phi) -
                 2 * psi1 * psi1 * psi1 / (phi * phi * phi);
  }
  return {g, A};
}

/// WDVV on the orthant: both contracted sides reduce to A_iii^2 g^{ii}.
inline bool orthant_wdvv(const Vec& x) {
  auto [g, A] = orthant_tensors(x);
  return wdvv_check(g, A);
}

}  // namespace igz
