#pragma once

/**
 * Degree-N truncated formal power series over either exact rationals or
 * complex doubles, with the operations the zeta machinery needs: ring ops,
 * exp, log, d/dt, evaluation, and the big-Witt addition/multiplication
 * (addition is series multiplication; the product is fixed by
 * (1-at)^-1 * (1-bt)^-1 = (1-abt)^-1 and computed through ghost components).
 */

#include <cmath>
#include <vector>

#include "igz/common.hpp"

namespace igz {

namespace scalar {
inline double abs_val(const Rat& x) { return std::abs(rat_to_double(x)); }
inline double abs_val(const Complex& x) { return std::abs(x); }
inline Rat from_int(int64_t n, const Rat&) { return Rat(n); }
inline Complex from_int(int64_t n, const Complex&) { return Complex(double(n), 0.0); }
}  // namespace scalar

template <class S>
class TruncSeries {
 public:
  explicit TruncSeries(int N) : c_(N + 1, S(0)) {
    if (N < 0) throw ValidationError("TruncSeries: negative truncation");
  }
  TruncSeries(int N, std::vector<S> coeffs) : TruncSeries(N) {
    for (size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = coeffs[i];
  }

  static TruncSeries one(int N) {
    TruncSeries s(N);
    s.c_[0] = S(1);
    return s;
  }
  /// (1 - a t)^{-1} truncated.
  static TruncSeries geometric(int N, const S& a) {
    TruncSeries s(N);
    S pw(1);
    for (int n = 0; n <= N; ++n) {
      s.c_[n] = pw;
      pw = pw * a;
    }
    return s;
  }

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  const S& operator[](int n) const { return c_.at(n); }
  S& operator[](int n) { return c_.at(n); }
  const std::vector<S>& coeffs() const { return c_; }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check(b);
    TruncSeries r = a;
    for (int i = 0; i <= r.trunc(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.check(b);
    TruncSeries r = a;
    for (int i = 0; i <= r.trunc(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check(b);
    const int N = a.trunc();
    TruncSeries r(N);
    for (int i = 0; i <= N; ++i) {
      if (a.c_[i] == S(0)) continue;
      for (int j = 0; i + j <= N; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend TruncSeries operator*(const S& s, const TruncSeries& a) {
    TruncSeries r = a;
    for (auto& c : r.c_) c = s * c;
    return r;
  }

  /// d/dt.
  TruncSeries derivative_t() const {
    const int N = trunc();
    TruncSeries r(N);
    for (int n = 0; n < N; ++n)
      r.c_[n] = scalar::from_int(n + 1, S(0)) * c_[n + 1];
    return r;
  }

  /// exp of a series with zero constant term.
  TruncSeries exp() const {
    if (!(c_[0] == S(0)))
      throw ValidationError("series exp: constant term must be 0");
    const int N = trunc();
    TruncSeries b(N);
    b.c_[0] = S(1);
    for (int n = 1; n <= N; ++n) {
      S acc(0);
      for (int k = 1; k <= n; ++k)
        acc = acc + scalar::from_int(k, S(0)) * c_[k] * b.c_[n - k];
      b.c_[n] = acc / scalar::from_int(n, S(0));
    }
    return b;
  }

  /// log of a series with constant term one.
  TruncSeries log() const {
    if (!(c_[0] == S(1)))
      throw ValidationError("series log: constant term must be 1");
    // l_n = a_n - (1/n) sum_{k<n} k l_k a_{n-k}
    const int N = trunc();
    TruncSeries l(N);
    for (int n = 1; n <= N; ++n) {
      S acc = c_[n];
      for (int k = 1; k < n; ++k)
        acc = acc - scalar::from_int(k, S(0)) * l.c_[k] * c_[n - k] /
                        scalar::from_int(n, S(0));
      l.c_[n] = acc;
    }
    return l;
  }

  template <class T>
  T eval(const T& t) const {
    T acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + convert_to<T>(c_[i]);
    return acc;
  }

  double max_abs_diff(const TruncSeries& b) const {
    check(b);
    double m = 0;
    for (int i = 0; i <= trunc(); ++i)
      m = std::max(m, scalar::abs_val(c_[i] - b.c_[i]));
    return m;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.c_ == b.c_;
  }

 private:
  template <class T>
  static T convert_to(const S& x) {
    if constexpr (std::is_same_v<S, Rat> && !std::is_same_v<T, Rat>)
      return T(rat_to_double(x));
    else
      return T(x);
  }
  void check(const TruncSeries& b) const {
    if (trunc() != b.trunc())
      throw ValidationError("TruncSeries: truncation degree mismatch");
  }
  std::vector<S> c_;
};

using QSeries = TruncSeries<Rat>;
using CSeries = TruncSeries<Complex>;

inline CSeries to_complex(const QSeries& a) {
  CSeries r(a.trunc());
  for (int n = 0; n <= a.trunc(); ++n) r[n] = Complex(rat_to_double(a[n]), 0.0);
  return r;
}

template <class S>
TruncSeries<S> series_dt(const TruncSeries<S>& a) {
  return a.derivative_t();
}

/// Witt-ring addition: multiplication of the underlying series.
template <class S>
TruncSeries<S> witt_add(const TruncSeries<S>& a, const TruncSeries<S>& b) {
  if (!(a[0] == S(1)) || !(b[0] == S(1)))
    throw ValidationError("witt_add: constant terms must be 1");
  return a * b;
}

/// Ghost components g_n = n * [t^n] log a, n >= 1.
template <class S>
std::vector<S> witt_ghosts(const TruncSeries<S>& a) {
  auto l = a.log();
  std::vector<S> g;
  for (int n = 1; n <= a.trunc(); ++n)
    g.push_back(scalar::from_int(n, S(0)) * l[n]);
  return g;
}

/// Witt-ring product: multiply ghost components, rebuild via exp.
template <class S>
TruncSeries<S> witt_mul(const TruncSeries<S>& a, const TruncSeries<S>& b) {
  if (!(a[0] == S(1)) || !(b[0] == S(1)))
    throw ValidationError("witt_mul: constant terms must be 1");
  auto ga = witt_ghosts(a), gb = witt_ghosts(b);
  TruncSeries<S> l(a.trunc());
  for (int n = 1; n <= a.trunc(); ++n)
    l[n] = ga[n - 1] * gb[n - 1] / scalar::from_int(n, S(0));
  return l.exp();
}

}  // namespace igz
