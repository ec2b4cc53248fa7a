#pragma once

/**
 * The categories of classical and quantum probability distributions:
 * objects, morphism validation, composition, zero objects, the monoidal
 * product and smash coproduct, and convexity of Hom-sets.
 *
 * Stochastic matrices act on column vectors with unit column sums
 * (q_y = sum_x S_yx p_x).  Choi matrices are stored in the transfer layout
 * S_{(ij),(ab)} (row pair = output indices, row-major); complete positivity
 * is decided on the rearranged Choi block J_{(ia),(jb)} = S_{(ij),(ab)}.
 */

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "igz/infogeo.hpp"

namespace igz {

// ---------------------------------------------------------------------------
// Classical side
// ---------------------------------------------------------------------------

struct FinProb {
  std::vector<std::string> labels;
  Vec P;

  FinProb(std::vector<std::string> l, Vec p) : labels(std::move(l)), P(std::move(p)) {
    if (labels.size() != P.size())
      throw ValidationError("FinProb: label/weight size mismatch");
    check_distribution(P);
  }

  static FinProb uniform(int k, const std::string& prefix = "s") {
    std::vector<std::string> l;
    Vec p(k, 1.0 / k);
    for (int i = 0; i < k; ++i) l.push_back(prefix + std::to_string(i));
    return FinProb(std::move(l), std::move(p));
  }
  static FinProb singleton(const std::string& label = "pt") {
    return FinProb({label}, {1.0});
  }
  size_t size() const { return P.size(); }
};

class StochasticMatrix {
 public:
  StochasticMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows, Vec(cols, 0.0)) {}

  static StochasticMatrix identity(size_t n) {
    StochasticMatrix s(n, n);
    for (size_t i = 0; i < n; ++i) s.a_[i][i] = 1.0;
    return s;
  }

  /// The target morphism Qhat: every column equals Q.
  static StochasticMatrix target(const Vec& Q, size_t cols) {
    StochasticMatrix s(Q.size(), cols);
    for (size_t y = 0; y < Q.size(); ++y)
      for (size_t x = 0; x < cols; ++x) s.a_[y][x] = Q[y];
    return s;
  }

  static StochasticMatrix from_rows(Mat rows) {
    StochasticMatrix s(rows.size(), rows.empty() ? 0 : rows[0].size());
    s.a_ = std::move(rows);
    s.validate();
    return s;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double operator()(size_t y, size_t x) const { return a_[y][x]; }
  double& at(size_t y, size_t x) { return a_[y][x]; }

  void validate(double tol = 1e-12) const {
    for (size_t x = 0; x < cols_; ++x) {
      double sum = 0;
      for (size_t y = 0; y < rows_; ++y) {
        if (a_[y][x] < -tol)
          throw ValidationError("stochastic matrix: negative entry");
        sum += a_[y][x];
      }
      if (std::abs(sum - 1.0) > tol)
        throw ValidationError("stochastic matrix: column sum " +
                              std::to_string(sum));
    }
  }

 private:
  size_t rows_, cols_;
  Mat a_;
};

/// q_y = sum_x S_yx p_x, relabeled onto the target alphabet.
inline FinProb apply(const StochasticMatrix& S, const FinProb& P,
                     const std::vector<std::string>* out_labels = nullptr) {
  if (S.cols() != P.size())
    throw ValidationError("apply: shape mismatch");
  Vec Q(S.rows(), 0.0);
  for (size_t y = 0; y < S.rows(); ++y)
    for (size_t x = 0; x < P.size(); ++x) Q[y] += S(y, x) * P.P[x];
  std::vector<std::string> labels;
  if (out_labels) labels = *out_labels;
  else
    for (size_t y = 0; y < S.rows(); ++y) labels.push_back("y" + std::to_string(y));
  return FinProb(std::move(labels), std::move(Q));
}

inline StochasticMatrix compose(const StochasticMatrix& S2,
                                const StochasticMatrix& S1) {
  if (S2.cols() != S1.rows())
    throw ValidationError("compose: shape mismatch");
  StochasticMatrix out(S2.rows(), S1.cols());
  for (size_t y = 0; y < S2.rows(); ++y)
    for (size_t x = 0; x < S1.cols(); ++x) {
      double acc = 0;
      for (size_t m = 0; m < S1.rows(); ++m) acc += S2(y, m) * S1(m, x);
      out.at(y, x) = acc;
    }
  out.validate();
  return out;
}

/// True iff S factors through a singleton, i.e. all columns coincide
/// (tolerance 1e-9); target morphisms are exactly the zero morphisms.
inline bool zero_factorization_check(const StochasticMatrix& S) {
  for (size_t y = 0; y < S.rows(); ++y)
    for (size_t x = 1; x < S.cols(); ++x)
      if (std::abs(S(y, x) - S(y, 0)) > 1e-9) return false;
  return true;
}

/// Samples Hom((X,P),(Y,Q)) members by mixing the target morphism with the
/// exact projection of a random stochastic matrix onto the constraints
/// (S' minus the target morphism of S'P has zero column sums and kills P).
inline StochasticMatrix sample_hom(const Vec& P, const Vec& Q,
                                   std::mt19937_64& rng) {
  const size_t rows = Q.size(), cols = P.size();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat raw(rows, Vec(cols));
  for (size_t x = 0; x < cols; ++x) {
    double sum = 0;
    for (size_t y = 0; y < rows; ++y) sum += (raw[y][x] = u(rng) + 1e-9);
    for (size_t y = 0; y < rows; ++y) raw[y][x] /= sum;
  }
  // delta = raw - (raw P)^hat: zero column sums, delta P = 0
  Vec rp(rows, 0.0);
  for (size_t y = 0; y < rows; ++y)
    for (size_t x = 0; x < cols; ++x) rp[y] += raw[y][x] * P[x];
  double max_delta = 0, min_q = 1.0;
  for (double q : Q) min_q = std::min(min_q, q);
  Mat delta(rows, Vec(cols));
  for (size_t y = 0; y < rows; ++y)
    for (size_t x = 0; x < cols; ++x) {
      delta[y][x] = raw[y][x] - rp[y];
      max_delta = std::max(max_delta, std::abs(delta[y][x]));
    }
  double lam = max_delta > 0 ? 0.5 * min_q / max_delta : 0.0;
  Mat rows_out(rows, Vec(cols));
  for (size_t y = 0; y < rows; ++y)
    for (size_t x = 0; x < cols; ++x) rows_out[y][x] = Q[y] + lam * delta[y][x];
  return StochasticMatrix::from_rows(std::move(rows_out));
}

/// Convex combinations of Hom-set samples stay in the Hom-set.
inline bool hom_convexity_check(const FinProb& P, const FinProb& Q, int trials,
                                uint64_t seed = 4242) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    StochasticMatrix S1 = sample_hom(P.P, Q.P, rng);
    StochasticMatrix S2 = sample_hom(P.P, Q.P, rng);
    double lam = u(rng);
    Mat mix(Q.size(), Vec(P.size()));
    for (size_t y = 0; y < Q.size(); ++y)
      for (size_t x = 0; x < P.size(); ++x)
        mix[y][x] = lam * S1(y, x) + (1 - lam) * S2(y, x);
    StochasticMatrix M = StochasticMatrix::from_rows(std::move(mix));
    FinProb img = apply(M, P);
    for (size_t y = 0; y < Q.size(); ++y)
      if (std::abs(img.P[y] - Q.P[y]) > 1e-10) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monoidal structure
// ---------------------------------------------------------------------------

/// (X,P) x (Y,Q) with independent weights p_x q_y.
inline FinProb monoidal_product(const FinProb& A, const FinProb& B) {
  std::vector<std::string> labels;
  Vec P;
  for (size_t x = 0; x < A.size(); ++x)
    for (size_t y = 0; y < B.size(); ++y) {
      labels.push_back("(" + A.labels[x] + "," + B.labels[y] + ")");
      P.push_back(A.P[x] * B.P[y]);
    }
  return FinProb(std::move(labels), std::move(P));
}

struct PointedProbSet {
  FinProb obj;
  size_t basepoint;

  PointedProbSet(FinProb o, size_t bp) : obj(std::move(o)), basepoint(bp) {
    if (basepoint >= obj.size())
      throw ValidationError("PointedProbSet: basepoint out of range");
  }

  /// The coproduct unit: the probabilistic S^0, all mass on the free point.
  static PointedProbSet unit() {
    return PointedProbSet(FinProb({"*", "pt"}, {0.0, 1.0}), 0);
  }
};

/// Smash coproduct: both axes collapse to the basepoint, whose mass
/// aggregates everything on them; off-axis pairs keep the product weights.
inline PointedProbSet smash_coproduct(const PointedProbSet& A,
                                      const PointedProbSet& B) {
  std::vector<std::string> labels = {"*"};
  Vec P;
  double base_mass = A.obj.P[A.basepoint] + B.obj.P[B.basepoint] -
                     A.obj.P[A.basepoint] * B.obj.P[B.basepoint];
  P.push_back(base_mass);
  for (size_t x = 0; x < A.obj.size(); ++x) {
    if (x == A.basepoint) continue;
    for (size_t y = 0; y < B.obj.size(); ++y) {
      if (y == B.basepoint) continue;
      labels.push_back("(" + A.obj.labels[x] + "," + B.obj.labels[y] + ")");
      P.push_back(A.obj.P[x] * B.obj.P[y]);
    }
  }
  return PointedProbSet(FinProb(std::move(labels), std::move(P)), 0);
}

/// Weight-preserving relabeling bijection between equal-sized objects,
/// matched by sorted weights; the canonical-isomorphism witness.
inline bool isomorphic_as_weighted_sets(const FinProb& A, const FinProb& B,
                                        double tol = 1e-12) {
  if (A.size() != B.size()) return false;
  Vec a = A.P, b = B.P;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Quantum side
// ---------------------------------------------------------------------------

/// A finite set with internal Hilbert dimension and a density matrix on
/// H_X = V^{card X}.
struct QuantumObject {
  size_t set_size;
  size_t internal_dim;
  CMat rho;

  QuantumObject(size_t n, size_t d, CMat r)
      : set_size(n), internal_dim(d), rho(std::move(r)) {
    if (rho.rows() != static_cast<Eigen::Index>(n * d))
      throw ValidationError("QuantumObject: dimension mismatch");
    check_density(rho);
  }
};

/// Choi/transfer matrix in the layout S_{(ij),(ab)}: rho'_ij =
/// sum_ab S_{(ij),(ab)} rho_ab, composite indices row-major.
class ChoiMatrix {
 public:
  explicit ChoiMatrix(size_t d) : d_(d), m_(CMat::Zero(d * d, d * d)) {}
  ChoiMatrix(size_t d, CMat m) : d_(d), m_(std::move(m)) {
    if (m_.rows() != static_cast<Eigen::Index>(d * d) ||
        m_.cols() != static_cast<Eigen::Index>(d * d))
      throw ValidationError("ChoiMatrix: wrong shape");
  }

  size_t dim() const { return d_; }
  const CMat& matrix() const { return m_; }
  Complex& entry(size_t i, size_t j, size_t a, size_t b) {
    return m_(i * d_ + j, a * d_ + b);
  }
  Complex entry(size_t i, size_t j, size_t a, size_t b) const {
    return m_(i * d_ + j, a * d_ + b);
  }

  /// Build from a matrix map on the standard basis: C_{(ij),(ab)} =
  /// Phi(E_ab)_ij.
  template <class Map>
  static ChoiMatrix from_map(size_t d, Map&& phi) {
    ChoiMatrix c(d);
    for (size_t a = 0; a < d; ++a)
      for (size_t b = 0; b < d; ++b) {
        CMat e = CMat::Zero(d, d);
        e(a, b) = Complex(1, 0);
        CMat out = phi(e);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j < d; ++j) c.entry(i, j, a, b) = out(i, j);
      }
    return c;
  }

  static ChoiMatrix identity_channel(size_t d) {
    return from_map(d, [](const CMat& e) { return e; });
  }
  static ChoiMatrix transpose_map(size_t d) {
    return from_map(d, [](const CMat& e) { return CMat(e.transpose()); });
  }
  static ChoiMatrix depolarizing(size_t d, double lambda) {
    return from_map(d, [d, lambda](const CMat& e) {
      CMat out = lambda * e;
      out += (1.0 - lambda) * e.trace() / double(d) * CMat::Identity(d, d);
      return out;
    });
  }
  /// The replacer channel rho -> sigma Tr(rho).
  static ChoiMatrix replacer(const CMat& sigma) {
    size_t d = sigma.rows();
    return from_map(d, [&](const CMat& e) { return CMat(sigma * e.trace()); });
  }
  /// Measure in the given orthonormal basis and prepare sigma_k on outcome k.
  static ChoiMatrix measure_prepare(const CMat& basis,
                                    const std::vector<CMat>& sigmas) {
    size_t d = basis.rows();
    return from_map(d, [&](const CMat& e) {
      CMat out = CMat::Zero(d, d);
      for (size_t k = 0; k < d; ++k) {
        Complex prob = (basis.col(k).adjoint() * e * basis.col(k))(0, 0);
        out += prob * sigmas[k];
      }
      return out;
    });
  }

  friend ChoiMatrix operator+(const ChoiMatrix& a, const ChoiMatrix& b) {
    return ChoiMatrix(a.d_, a.m_ + b.m_);
  }
  friend ChoiMatrix operator*(double s, const ChoiMatrix& a) {
    return ChoiMatrix(a.d_, s * a.m_);
  }

 private:
  size_t d_;
  CMat m_;
};

/// rho'_ij = sum_ab C_{(ij),(ab)} rho_ab.
inline CMat choi_apply(const ChoiMatrix& C, const CMat& rho) {
  size_t d = C.dim();
  if (rho.rows() != static_cast<Eigen::Index>(d))
    throw ValidationError("choi_apply: dimension mismatch");
  CMat out = CMat::Zero(d, d);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b)
          out(i, j) += C.entry(i, j, a, b) * rho(a, b);
  return out;
}

/// The rearranged Choi block J_{(ia),(jb)} = C_{(ij),(ab)}; PSD iff CP.
inline CMat choi_block(const ChoiMatrix& C) {
  size_t d = C.dim();
  CMat J(d * d, d * d);
  for (size_t i = 0; i < d; ++i)
    for (size_t a = 0; a < d; ++a)
      for (size_t j = 0; j < d; ++j)
        for (size_t b = 0; b < d; ++b)
          J(i * d + a, j * d + b) = C.entry(i, j, a, b);
  return J;
}

inline double choi_min_eigenvalue(const ChoiMatrix& C) {
  CMat J = choi_block(C);
  if ((J - J.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    return -std::numeric_limits<double>::infinity();  // not even Hermitian
  Eigen::SelfAdjointEigenSolver<CMat> es(J);
  return es.eigenvalues().minCoeff();
}

inline bool cp_check(const ChoiMatrix& C) {
  return choi_min_eigenvalue(C) >= -1e-10;
}

/// Trace preservation: sum_i C_{(ii),(ab)} = delta_ab.
inline bool tp_check(const ChoiMatrix& C) {
  size_t d = C.dim();
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      Complex acc(0, 0);
      for (size_t i = 0; i < d; ++i) acc += C.entry(i, i, a, b);
      Complex expect = (a == b) ? Complex(1, 0) : Complex(0, 0);
      if (std::abs(acc - expect) > 1e-10) return false;
    }
  return true;
}

/// Composition of channels is matrix multiplication in the transfer layout.
inline ChoiMatrix channel_compose(const ChoiMatrix& C2, const ChoiMatrix& C1) {
  if (C2.dim() != C1.dim())
    throw ValidationError("channel_compose: dimension mismatch");
  return ChoiMatrix(C2.dim(), CMat(C2.matrix() * C1.matrix()));
}

/// Definition-style CP probe: (Phi x Id_k) applied to sampled positive
/// inputs keeps the spectrum above -1e-8.
inline bool cp_tensor_probe(const ChoiMatrix& C, int k, int trials,
                            uint64_t seed = 31) {
  size_t d = C.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    size_t n = d * k;
    CMat G(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    CMat pos = G * G.adjoint();  // positive input on C^d tensor C^k
    // apply Phi x Id_k blockwise: view pos as k x k blocks of d x d
    CMat out = CMat::Zero(n, n);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        CMat block(d, d);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j < d; ++j) block(i, j) = pos(i * k + r, j * k + c);
        CMat mapped = choi_apply(C, block);
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j < d; ++j) out(i * k + r, j * k + c) = mapped(i, j);
      }
    Eigen::SelfAdjointEigenSolver<CMat> es(out);
    double scale = std::max(1.0, pos.cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) return false;
  }
  return true;
}

/// Convex combinations of sampled CPTP maps with Phi(rho_in) = rho_out stay
/// CPTP and still map rho_in to rho_out.
inline bool quantum_hom_convexity_check(const CMat& rho_in, const CMat& rho_out,
                                        int trials, uint64_t seed = 77) {
  check_density(rho_in);
  check_density(rho_out);
  size_t d = rho_in.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::SelfAdjointEigenSolver<CMat> es(rho_in);
  CMat basis = es.eigenvectors();
  Eigen::VectorXd evs = es.eigenvalues();

  auto sample_channel = [&]() {
    // measure in the eigenbasis of rho_in, prepare perturbed copies of
    // rho_out whose eigenvalue-weighted average is exactly rho_out
    std::vector<CMat> sigmas(d, rho_out);
    // find two outcomes with nonnegligible weight
    int k1 = -1, k2 = -1;
    for (size_t k = 0; k < d; ++k)
      if (evs[k] > 1e-6) {
        if (k1 < 0) k1 = static_cast<int>(k);
        else k2 = static_cast<int>(k);
      }
    if (k2 >= 0) {
      CMat G(d, d);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
      CMat A = 0.5 * (G + G.adjoint());
      A -= A.trace() / double(d) * CMat::Identity(d, d);
      Eigen::SelfAdjointEigenSolver<CMat> eo(rho_out);
      double margin = std::max(1e-12, eo.eigenvalues().minCoeff());
      double ratio = std::max(1.0, evs[k1] / evs[k2]);
      double scale = 0.5 * margin /
                     (double(d) * ratio * std::max(1.0, A.cwiseAbs().maxCoeff()));
      A *= scale * u(rng);
      sigmas[k1] = rho_out + A;
      sigmas[k2] = rho_out - (evs[k1] / evs[k2]) * A;
    }
    return ChoiMatrix::measure_prepare(basis, sigmas);
  };

  for (int trial = 0; trial < trials; ++trial) {
    ChoiMatrix c1 = sample_channel();
    ChoiMatrix c2 = sample_channel();
    double lam = u(rng);
    ChoiMatrix mix = lam * c1 + (1.0 - lam) * c2;
    if (!cp_check(mix) || !tp_check(mix)) return false;
    CMat img = choi_apply(mix, rho_in);
    if ((img - rho_out).cwiseAbs().maxCoeff() > 1e-9) return false;
  }
  return true;
}

}  // namespace igz
