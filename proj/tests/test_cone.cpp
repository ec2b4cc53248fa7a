#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "igz/cone.hpp"

using namespace igz;

TEST_CASE("characteristic function closed forms") {
  auto orth2 = ConeModel::orthant(2);
  CHECK(std::abs(char_fn(orth2, {1.0, 2.0}) - 0.5) < 1e-14);

  // homogeneity of degree -n on the orthant
  auto orth1 = ConeModel::orthant(1);
  CHECK(std::abs(char_fn(orth1, {1.0}) / char_fn(orth1, {2.0}) - 2.0) < 1e-14);

  // lorentz(n) scales with degree -n
  auto lor3 = ConeModel::lorentz(3);
  Vec x = {2.0, 0.5, -0.3};
  Vec x2 = {4.0, 1.0, -0.6};
  double ratio = char_fn(lor3, x) / char_fn(lor3, x2);
  CHECK(std::abs(ratio - 8.0) < 1e-8);

  // psd(2) determinant form, degree -(m+1)/2 per determinant scale
  auto psd2 = ConeModel::psd(2);
  Vec m1 = {2.0, 1.0, 0.3};  // diag(2,1), off 0.3
  CHECK(std::abs(char_fn(psd2, m1) -
                 std::pow(2.0 * 1.0 - 0.09, -1.5)) < 1e-12);

  CHECK_THROWS_AS(char_fn(orth2, {1.0, -1.0}), ValidationError);
  CHECK_THROWS_AS(char_fn(lor3, {0.1, 1.0, 0.0}), ValidationError);
}

TEST_CASE("MC oracle: closed-form/MC ratio is constant across points") {
  // orthant(2): MC matches the closed form with constant 1 exactly
  auto orth = ConeModel::orthant(2);
  auto est = char_fn_mc(orth, {1.0, 2.0}, 40000, 7);
  CHECK(std::abs(est.value - 0.5) <= 3.5 * est.stderr_);

  // lorentz(2): the MC integral carries a fixed constant (2) relative to
  // the stored closed form; the ratio must be the same at distinct points
  auto lor = ConeModel::lorentz(2);
  Vec p1 = {2.0, 0.5}, p2 = {3.0, -1.0};
  auto e1 = char_fn_mc(lor, p1, 60000, 11);
  auto e2 = char_fn_mc(lor, p2, 60000, 12);
  double r1 = char_fn(lor, p1) / e1.value;
  double r2 = char_fn(lor, p2) / e2.value;
  double sd1 = r1 * (e1.stderr_ / e1.value);
  double sd2 = r2 * (e2.stderr_ / e2.value);
  CHECK(std::abs(r1 - r2) <= 3.0 * std::sqrt(sd1 * sd1 + sd2 * sd2));
  CHECK(std::abs(r1 - 0.5) < 0.02);  // the constant is 1/2 for lorentz(2)

  // psd(2) sampler sanity: the Siegel integral is (pi/2) det(X)^{-3/2},
  // so closed form / MC = 2/pi
  auto psd = ConeModel::psd(2);
  Vec q = {2.0, 1.5, 0.2};
  auto ep = char_fn_mc(psd, q, 80000, 13);
  double expect_ratio = 2.0 / std::numbers::pi;
  CHECK(std::abs(char_fn(psd, q) / ep.value - expect_ratio) <=
        3.0 * expect_ratio * (ep.stderr_ / ep.value) + 0.01);

  // determinism given (seed, samples)
  auto ea = char_fn_mc(lor, p1, 5000, 99);
  auto eb = char_fn_mc(lor, p1, 5000, 99);
  CHECK(ea.value == eb.value);
}

TEST_CASE("orthant metric and connection closed forms") {
  auto orth = ConeModel::orthant(2);
  Mat g = cone_metric(orth, {1.0, 2.0});
  CHECK(std::abs(g[0][0] - 1.0) < 1e-14);
  CHECK(std::abs(g[1][1] - 0.25) < 1e-14);
  CHECK(std::abs(g[0][1]) < 1e-14);

  // Gamma^1_11 = -1 at x = 1 on the half-line
  auto orth1 = ConeModel::orthant(1);
  Tensor3 G = cone_christoffel(orth1, {1.0});
  CHECK(std::abs(G[0][0][0] + 1.0) < 1e-12);
}

TEST_CASE("generic FD path matches the orthant closed forms") {
  auto orth = ConeModel::orthant(3);
  Vec x = {0.7, 1.3, 2.1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double expect2 = (i == j) ? 1.0 / (x[i] * x[i]) : 0.0;
      double fd2 = detail::cone_d2_fd(orth, x, i, j);
      CHECK(std::abs(fd2 - expect2) <= 1e-6 * std::max(1.0, std::abs(expect2)));
      for (int k = 0; k < 3; ++k) {
        double expect3 =
            (i == j && j == k) ? -2.0 / (x[i] * x[i] * x[i]) : 0.0;
        double fd3 = detail::cone_d3_fd(orth, x, i, j, k);
        CHECK(std::abs(fd3 - expect3) <= 1e-6 * std::max(1.0, std::abs(expect3)));
      }
    }
}

TEST_CASE("metric is positive definite at 50 random interior points per cone") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto orth = ConeModel::orthant(3);
  auto lor = ConeModel::lorentz(2);
  auto psd = ConeModel::psd(2);
  auto sample = [&](const ConeModel& cone) -> Vec {
    switch (cone.kind()) {
      case ConeKind::Orthant:
        return {0.3 + u(rng) + 1.0, 0.3 + u(rng) + 1.0, 0.3 + u(rng) + 1.0};
      case ConeKind::Lorentz: {
        double x1 = u(rng);
        return {std::abs(x1) + 0.5 + 0.5 * (u(rng) + 1), x1};
      }
      case ConeKind::Psd: {
        double a = 0.4 + u(rng) + 1.0, b = 0.4 + u(rng) + 1.0;
        double off = 0.8 * u(rng) * std::sqrt(a * b);
        return {a, b, off};
      }
    }
    return {};
  };
  for (auto& cone : {orth, lor, psd}) {
    for (int trial = 0; trial < 50; ++trial) {
      Vec x = sample(cone);
      Mat g = cone_metric(cone, x);  // throws if not PD
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g));
      CHECK(es.eigenvalues().minCoeff() > 0);
    }
  }
}

TEST_CASE("circ is commutative and bilinear; orthant circ is associative") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rnd_vec = [&](int d) {
    Vec v(d);
    for (auto& c : v) c = u(rng);
    return v;
  };

  for (auto cone : {ConeModel::orthant(3), ConeModel::lorentz(2)}) {
    Vec x = cone.kind() == ConeKind::Orthant ? Vec{0.8, 1.1, 2.0} : Vec{2.0, 0.4};
    for (int trial = 0; trial < 5; ++trial) {
      Vec a = rnd_vec(cone.dim()), b = rnd_vec(cone.dim()), c = rnd_vec(cone.dim());
      Vec ab = circ(cone, x, a, b), ba = circ(cone, x, b, a);
      for (int i = 0; i < cone.dim(); ++i) CHECK(std::abs(ab[i] - ba[i]) <= 1e-8);
      // bilinearity in the first slot
      Vec apc(a);
      for (int i = 0; i < cone.dim(); ++i) apc[i] += 2.0 * c[i];
      Vec left = circ(cone, x, apc, b);
      Vec right = circ(cone, x, a, b), rc = circ(cone, x, c, b);
      for (int i = 0; i < cone.dim(); ++i)
        CHECK(std::abs(left[i] - right[i] - 2.0 * rc[i]) <= 1e-8);
    }
  }

  // associativity on the orthant (diagonal structure)
  auto orth = ConeModel::orthant(3);
  Vec x = {0.9, 1.4, 0.6};
  for (int trial = 0; trial < 5; ++trial) {
    Vec a = rnd_vec(3), b = rnd_vec(3), c = rnd_vec(3);
    Vec l = circ(orth, x, circ(orth, x, a, b), c);
    Vec r = circ(orth, x, a, circ(orth, x, b, c));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(l[i] - r[i]) <= 1e-10);
  }
}

TEST_CASE("orthant moments and tensors") {
  CHECK(std::abs(orthant_moment(0, 2.0) - 0.5) < 1e-15);
  CHECK(std::abs(orthant_moment(1, 2.0) - 0.25) < 1e-15);
  CHECK(std::abs(orthant_moment(2, 2.0) - 0.25) < 1e-15);  // 2/x^3

  auto [g, A] = orthant_tensors({1.0, 2.0});
  CHECK(std::abs(g[0][0] - 1.0) <= 1e-12);
  CHECK(std::abs(g[1][1] - 0.25) <= 1e-12);
  CHECK(std::abs(A[0][0][0] + 2.0) <= 1e-12);
  CHECK(std::abs(A[1][1][1] + 0.25) <= 1e-12);  // -2/8

  // A_iii equals d^3 log phi
  auto orth = ConeModel::orthant(2);
  Tensor3 A3 = cone_a3(orth, {1.0, 2.0});
  CHECK(std::abs(A3[0][0][0] - A[0][0][0]) <= 1e-12);
  CHECK(std::abs(A3[1][1][1] - A[1][1][1]) <= 1e-12);
}

TEST_CASE("orthant WDVV holds and perturbations break it") {
  CHECK(orthant_wdvv({1.0}));
  CHECK(orthant_wdvv({1.0, 2.0, 3.0}));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    Vec x = {u(rng), u(rng), u(rng)};
    CHECK(orthant_wdvv(x));
  }

  auto [g, A] = orthant_tensors({1.0, 2.0, 3.0});
  A[0][1][2] = A[1][2][0] = A[2][0][1] = 0.1;
  A[2][1][0] = A[0][2][1] = A[1][0][2] = 0.1;
  CHECK_FALSE(wdvv_check(g, A));
}
