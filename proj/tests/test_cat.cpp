#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "igz/cat.hpp"

using namespace igz;

TEST_CASE("stochastic application and composition") {
  FinProb P({"a", "b"}, {0.3, 0.7});

  // identity leaves P unchanged
  FinProb id = apply(StochasticMatrix::identity(2), P, &P.labels);
  CHECK(id.P[0] == 0.3);
  CHECK(id.P[1] == 0.7);

  // target morphism lands on Q regardless of input
  Vec Q = {0.25, 0.35, 0.4};
  auto Qhat = StochasticMatrix::target(Q, 2);
  FinProb img = apply(Qhat, P);
  for (size_t i = 0; i < 3; ++i) CHECK(std::abs(img.P[i] - Q[i]) < 1e-15);

  // random compositions stay column-stochastic
  std::mt19937_64 rng(3);
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
  for (int trial = 0; trial < 20; ++trial) {
    auto S1 = random_stoch(3, 2), S2 = random_stoch(2, 3);
    auto C = compose(S2, S1);
    C.validate(1e-12);  // throws on violation
    // associativity on a random triple
    auto S3 = random_stoch(4, 2);
    auto left = compose(S3, compose(S2, S1));
    auto right = compose(compose(S3, S2), S1);
    for (size_t y = 0; y < 4; ++y)
      for (size_t x = 0; x < 2; ++x)
        CHECK(std::abs(left(y, x) - right(y, x)) <= 1e-12);
  }
}

TEST_CASE("zero morphisms factor through singletons") {
  CHECK_FALSE(zero_factorization_check(StochasticMatrix::identity(2)));
  CHECK(zero_factorization_check(StochasticMatrix::target({0.3, 0.7}, 4)));

  // rank-1-ish but perturbed by 1e-3: strictly not a zero morphism
  Mat rows = {{0.3, 0.301}, {0.7, 0.699}};
  CHECK_FALSE(zero_factorization_check(StochasticMatrix::from_rows(rows)));

  // singleton as target: Hom(A, pt) has exactly one element, the row of 1s
  auto to_pt = StochasticMatrix::target({1.0}, 3);
  CHECK(zero_factorization_check(to_pt));
  // singleton as source: Hom(pt, B) = {column Q}
  FinProb pt = FinProb::singleton();
  Vec Q = {0.2, 0.8};
  FinProb img = apply(StochasticMatrix::target(Q, 1), pt);
  CHECK(std::abs(img.P[0] - 0.2) < 1e-15);
}

TEST_CASE("classical Hom-sets are convex") {
  FinProb P({"a", "b", "c"}, {0.2, 0.5, 0.3});
  FinProb Q({"u", "v"}, {0.4, 0.6});
  CHECK(hom_convexity_check(P, Q, 100));

  // sampled members really are in Hom(P, Q)
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto S = sample_hom(P.P, Q.P, rng);
    S.validate();
    FinProb img = apply(S, P);
    for (size_t y = 0; y < Q.size(); ++y)
      CHECK(std::abs(img.P[y] - Q.P[y]) <= 1e-12);
    // and they are not all the target morphism
  }
}

TEST_CASE("monoidal product and unit") {
  FinProb u2 = FinProb::uniform(2, "a");
  FinProb u3 = FinProb::uniform(3, "b");
  FinProb prod = monoidal_product(u2, u3);
  CHECK(prod.size() == 6);
  for (double p : prod.P) CHECK(std::abs(p - 1.0 / 6) < 1e-15);

  // product with the singleton is A up to relabeling
  FinProb A({"x", "y"}, {0.3, 0.7});
  FinProb withpt = monoidal_product(A, FinProb::singleton());
  CHECK(isomorphic_as_weighted_sets(A, withpt));

  // associativity up to relabeling
  FinProb B({"s", "t"}, {0.6, 0.4});
  CHECK(isomorphic_as_weighted_sets(monoidal_product(monoidal_product(A, B), u2),
                                    monoidal_product(A, monoidal_product(B, u2))));
}

TEST_CASE("smash coproduct") {
  // unit law: smash with the probabilistic S^0 is the identity
  PointedProbSet A(FinProb({"*", "p", "q"}, {0.2, 0.5, 0.3}), 0);
  PointedProbSet smashed = smash_coproduct(A, PointedProbSet::unit());
  CHECK(smashed.obj.size() == A.obj.size());
  CHECK(std::abs(smashed.obj.P[smashed.basepoint] - 0.2) < 1e-15);
  CHECK(isomorphic_as_weighted_sets(A.obj, smashed.obj));

  // all mass at both basepoints collapses to a terminal-like object
  PointedProbSet M1(FinProb({"*", "a"}, {1.0, 0.0}), 0);
  PointedProbSet M2(FinProb({"*", "b"}, {1.0, 0.0}), 0);
  PointedProbSet collapsed = smash_coproduct(M1, M2);
  CHECK(std::abs(collapsed.obj.P[collapsed.basepoint] - 1.0) < 1e-15);

  // associativity up to relabeling
  PointedProbSet B(FinProb({"*", "u"}, {0.4, 0.6}), 0);
  PointedProbSet C(FinProb({"*", "v", "w"}, {0.1, 0.6, 0.3}), 0);
  auto left = smash_coproduct(smash_coproduct(A, B), C);
  auto right = smash_coproduct(A, smash_coproduct(B, C));
  CHECK(isomorphic_as_weighted_sets(left.obj, right.obj));
  // round-trip relabeling is the identity on masses
  CHECK(std::abs(left.obj.P[0] - right.obj.P[0]) < 1e-15);
}

TEST_CASE("choi matrices: identity, transpose, depolarizing") {
  // identity channel
  auto id = ChoiMatrix::identity_channel(2);
  CHECK(cp_check(id));
  CHECK(tp_check(id));
  CMat rho = CMat::Zero(2, 2);
  rho(0, 0) = 0.7;
  rho(0, 1) = Complex(0.1, 0.05);
  rho(1, 0) = std::conj(rho(0, 1));
  rho(1, 1) = 0.3;
  CHECK((choi_apply(id, rho) - rho).cwiseAbs().maxCoeff() < 1e-14);

  // transpose map: TP but not CP, Choi eigenvalue -1
  auto tr = ChoiMatrix::transpose_map(2);
  CHECK(tp_check(tr));
  CHECK_FALSE(cp_check(tr));
  CHECK(std::abs(choi_min_eigenvalue(tr) + 1.0) <= 1e-10);

  // depolarizing at lambda = 1/2
  auto dep = ChoiMatrix::depolarizing(2, 0.5);
  CHECK(cp_check(dep));
  CHECK(tp_check(dep));
  CMat out = choi_apply(dep, rho);
  CMat expect = 0.5 * rho + 0.25 * CMat::Identity(2, 2);
  CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("channel composition matches sequential application") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto dep = ChoiMatrix::depolarizing(2, 0.3);
  CMat sigma = CMat::Zero(2, 2);
  sigma(0, 0) = 0.6;
  sigma(1, 1) = 0.4;
  auto rep = ChoiMatrix::replacer(sigma);
  auto comp = channel_compose(rep, dep);
  for (int trial = 0; trial < 10; ++trial) {
    CMat G(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
    CMat state = G * G.adjoint();
    state /= state.trace();
    CMat lhs = choi_apply(comp, state);
    CMat rhs = choi_apply(rep, choi_apply(dep, state));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("choi criterion agrees with the tensor-stability probe") {
  auto id = ChoiMatrix::identity_channel(2);
  auto dep = ChoiMatrix::depolarizing(2, 0.5);
  auto tr = ChoiMatrix::transpose_map(2);
  for (int k = 1; k <= 3; ++k) {
    CHECK(cp_tensor_probe(id, k, 5));
    CHECK(cp_tensor_probe(dep, k, 5));
  }
  // the transpose map fails the definition at k = 2 (entangled inputs)
  CHECK_FALSE(cp_tensor_probe(tr, 2, 20));
  CHECK(cp_tensor_probe(tr, 1, 20));  // positive but not completely positive
}

TEST_CASE("choi criterion and tensor-stability verdicts agree on random maps") {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const size_t d = 2;

  // CP side: random Kraus channels from a Haar-ish isometry (QR of a random
  // 2d x d matrix), exactly CPTP by construction
  for (int trial = 0; trial < 10; ++trial) {
    CMat iso_raw(2 * d, d);
    for (int i = 0; i < int(2 * d); ++i)
      for (int j = 0; j < int(d); ++j)
        iso_raw(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMat> qr(iso_raw);
    CMat Q = qr.householderQ() * CMat::Identity(2 * d, d);
    CMat K0 = Q.topRows(d), K1 = Q.bottomRows(d);
    auto C = ChoiMatrix::from_map(d, [&](const CMat& e) {
      return CMat(K0 * e * K0.adjoint() + K1 * e * K1.adjoint());
    });
    CHECK(cp_check(C));
    CHECK(tp_check(C));
    bool probe = true;
    for (int k = 1; k <= 3; ++k) probe = probe && cp_tensor_probe(C, k, 5, rng());
    CHECK(probe);
  }

  // non-CP side: transpose mixed with a random unitary conjugation stays
  // trace preserving but keeps a strongly negative Choi eigenvalue
  for (int trial = 0; trial < 10; ++trial) {
    CMat g2(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) g2(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMat> qr(g2);
    CMat U = qr.householderQ();
    double lam = 0.1 + 0.3 * double(trial) / 10.0;
    auto C = ChoiMatrix::from_map(d, [&](const CMat& e) {
      return CMat(lam * U * e * U.adjoint() + (1.0 - lam) * e.transpose());
    });
    CHECK(tp_check(C));
    CHECK_FALSE(cp_check(C));
    CHECK_FALSE(cp_tensor_probe(C, 2, 40, rng()));
  }
}

TEST_CASE("quantum Hom-sets are convex") {
  CMat rho_in = CMat::Zero(2, 2);
  rho_in(0, 0) = 0.7;
  rho_in(1, 1) = 0.3;
  CMat rho_out = CMat::Zero(2, 2);
  rho_out(0, 0) = 0.55;
  rho_out(1, 1) = 0.45;
  rho_out(0, 1) = rho_out(1, 0) = 0.1;
  CHECK(quantum_hom_convexity_check(rho_in, rho_out, 50));

  // replacer mixed with itself is the replacer
  auto rep = ChoiMatrix::replacer(rho_out);
  auto mix = 0.3 * rep + 0.7 * rep;
  CHECK(cp_check(mix));
  CHECK(tp_check(mix));
  CHECK((choi_apply(mix, rho_in) - rho_out).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quantum objects validate their density matrix") {
  CMat ok = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) ok(i, i) = 0.25;
  QuantumObject obj(2, 2, ok);
  CHECK(obj.set_size == 2);

  CMat bad = CMat::Zero(4, 4);
  bad(0, 0) = 2.0;
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(QuantumObject(2, 2, bad), ValidationError);
}
