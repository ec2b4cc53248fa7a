#pragma once

/**
 * Motivic Fisher-Rao and Amari-Chentsov tensors: complex-valued tensors
 * indexed by the ambient coordinate directions of an affine variety,
 * assembled from traced closed-point data.
 *
 * The degree-n coefficient of every tensor entry is a sum over
 * symmetric-product points of chi(f-value) chi'(d_i f-value) ... t^n; since
 * all values assemble additively from closed points, the whole series is an
 * Euler product over closed points with weights
 * chi(v_P) chi'(d_i v_P) chi'(d_j v_P), which is how it is computed here.
 * Tests cross-check against the literal symmetric-product summation.
 */

#include <vector>

#include "igz/infogeo.hpp"
#include "igz/motive.hpp"

namespace igz {

using CMatN = std::vector<std::vector<Complex>>;
using CTensor3 = std::vector<CMatN>;

/// Sum over first jets of chi(f(x)) chi'(df_x(v)); vanishes whenever the
/// differential is a nonzero functional on every tangent space and chi' is
/// nontrivial.
struct JetSum {
  Complex value;
  bool df_nontrivial_everywhere;  // df_x != 0 on T_x X for every rational x
};

inline JetSum jet_char_sum(const VarietySpec& X, const Potential& f,
                           const AdditiveCharacter& chi,
                           const AdditiveCharacter& chi2) {
  KahanSum s;
  bool nontrivial = true;
  PointFq last_x;
  bool have_x = false, saw_nonzero = false;
  auto flush = [&] {
    if (have_x && !saw_nonzero) nontrivial = false;
  };
  for (auto& j : jet_points(X, f)) {
    if (!have_x || j.x != last_x) {
      flush();
      last_x = j.x;
      have_x = true;
      saw_nonzero = false;
    }
    if (!j.df_value.is_zero()) saw_nonzero = true;
    s.add(char_eval(chi, j.f_value) * char_eval(chi2, j.df_value));
  }
  flush();
  return {s.value(), nontrivial};
}

namespace detail {

/// Euler-product value at t with per-closed-point unit weights.
inline Complex euler_value(const std::vector<ClosedPoint>& cps,
                           const std::vector<Complex>& weights, double t,
                           int N) {
  CSeries acc = CSeries::one(N);
  for (size_t i = 0; i < cps.size(); ++i) {
    if (cps[i].degree > N) continue;
    CSeries factor(N);
    Complex pw(1, 0);
    for (int k = 0; k * cps[i].degree <= N; ++k) {
      factor[k * cps[i].degree] = pw;
      pw *= weights[i];
    }
    acc = acc * factor;
  }
  return acc.eval(Complex(t, 0));
}

}  // namespace detail

struct MotivicTensorOptions {
  bool verify_jet_vanishing = true;  // check the jet sum when df never vanishes
  double jet_tol = 1e-9;
};

/// g_ij = (zeta_chi((X,f),t)/2) sum_{n,xbar} chi(f^(n)) chi'(d_i f^(n))
///        chi'(d_j f^(n)) t^n over ambient coordinate directions.
inline CMatN motivic_fisher(const VarietySpec& X, const Potential& f,
                            const AdditiveCharacter& chi,
                            const AdditiveCharacter& chi2, double t, int N,
                            const MotivicTensorOptions& opt = {}) {
  if (!X.is_affine_kind())
    throw ValidationError("motivic_fisher: affine kinds only");
  check_potential(X, f);
  const int n = X.ncoords();

  auto cps = closed_points(X, f, N == 0 ? 1 : N);
  std::vector<Complex> w0(cps.size());
  std::vector<std::vector<Complex>> wd(n, std::vector<Complex>(cps.size()));
  for (size_t i = 0; i < cps.size(); ++i)
    w0[i] = char_eval(chi, cps[i].traced_value);
  for (int d = 0; d < n; ++d) {
    MPoly df = f.derivative(d);
    for (size_t i = 0; i < cps.size(); ++i)
      wd[d][i] = char_eval(chi2, closed_point_value(X, cps[i], df));
  }

  Complex zeta = zeta_chi_euler(X, f, chi, N).eval(Complex(t, 0));

  CMatN g(n, std::vector<Complex>(n));
  std::vector<Complex> weights(cps.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (size_t k = 0; k < cps.size(); ++k)
        weights[k] = w0[k] * wd[i][k] * wd[j][k];
      Complex s = detail::euler_value(cps, weights, t, N);
      g[i][j] = g[j][i] = 0.5 * zeta * s;
    }

  if (opt.verify_jet_vanishing && !chi2.trivial()) {
    JetSum js = jet_char_sum(X, f, chi, chi2);
    if (js.df_nontrivial_everywhere && std::abs(js.value) > opt.jet_tol)
      throw ConsistencyError(
          "motivic_fisher: jet character sum fails to vanish: |sum| = " +
          std::to_string(std::abs(js.value)));
  }
  return g;
}

/// A_ijk with three chi' factors and prefactor zeta^2 (the quadratic
/// prefactor is forced by A = sum P^{-2} h^3).
inline CTensor3 motivic_ac(const VarietySpec& X, const Potential& f,
                           const AdditiveCharacter& chi,
                           const AdditiveCharacter& chi2, double t, int N) {
  if (!X.is_affine_kind())
    throw ValidationError("motivic_ac: affine kinds only");
  check_potential(X, f);
  const int n = X.ncoords();

  auto cps = closed_points(X, f, N == 0 ? 1 : N);
  std::vector<Complex> w0(cps.size());
  std::vector<std::vector<Complex>> wd(n, std::vector<Complex>(cps.size()));
  for (size_t i = 0; i < cps.size(); ++i)
    w0[i] = char_eval(chi, cps[i].traced_value);
  for (int d = 0; d < n; ++d) {
    MPoly df = f.derivative(d);
    for (size_t i = 0; i < cps.size(); ++i)
      wd[d][i] = char_eval(chi2, closed_point_value(X, cps[i], df));
  }

  Complex zeta = zeta_chi_euler(X, f, chi, N).eval(Complex(t, 0));

  CTensor3 A(n, CMatN(n, std::vector<Complex>(n)));
  std::vector<Complex> weights(cps.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        for (size_t m = 0; m < cps.size(); ++m)
          weights[m] = w0[m] * wd[i][m] * wd[j][m] * wd[k][m];
        Complex s = zeta * zeta * detail::euler_value(cps, weights, t, N);
        A[i][j][k] = A[i][k][j] = A[j][i][k] = A[j][k][i] = A[k][i][j] =
            A[k][j][i] = s;
      }
  return A;
}

}  // namespace igz
