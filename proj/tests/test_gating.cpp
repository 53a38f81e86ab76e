#include <doctest.h>

#include <moe/gating.hpp>
#include <moe/rng.hpp>

using namespace moe;

TEST_CASE("zero coefficients give uniform weights") {
  Gating g = Gating::zero(3, 2);
  VectorXd x(2);
  x << 1.0, -0.7;
  const VectorXd eta = gating_probs(g, x);
  for (int k = 0; k < 3; ++k) CHECK(eta[k] == doctest::Approx(1.0 / 3).epsilon(1e-14));
}

TEST_CASE("binary logit slope reproduces the hand-evaluated odds") {
  Gating g = Gating::zero(2, 2);
  g.gamma(1, 0) = 0.0;
  g.gamma(1, 1) = 2.79;

  VectorXd x(2);
  x << 1.0, 1.0;
  const VectorXd eta = gating_probs(g, x);
  const double expected = std::exp(2.79) / (1.0 + std::exp(2.79));
  CHECK(eta[1] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(eta[1] == doctest::Approx(0.9421).epsilon(1e-4));
  // odds ratio of belonging to component 2 at x=1 vs the baseline component
  CHECK(eta[1] / eta[0] == doctest::Approx(16.28).epsilon(1e-3));

  x << 1.0, 0.0;
  CHECK(gating_probs(g, x)[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("probabilities sum to one and stay positive for extreme inputs") {
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const int G = 2 + rng.uniform_int(3);
    const int p = 1 + rng.uniform_int(3);
    Gating g = Gating::zero(G, p);
    for (int r = 1; r < G; ++r)
      for (int k = 0; k < p; ++k) g.gamma(r, k) = 60.0 * (rng.uniform() - 0.5);
    VectorXd x = 10.0 * rng.normal_vector(p);
    x[0] = 1.0;
    const VectorXd eta = gating_probs(g, x);
    CHECK(eta.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((eta.array() > 0.0).all());
  }
}

TEST_CASE("dimension mismatch is rejected") {
  Gating g = Gating::zero(2, 3);
  VectorXd x(2);
  x << 1.0, 2.0;
  CHECK_THROWS_AS(gating_probs(g, x), InputError);
}

TEST_CASE("relabeling under the identity leaves gamma unchanged") {
  Gating g = Gating::zero(3, 2);
  g.gamma.row(1) << 0.4, -1.0;
  g.gamma.row(2) << -0.3, 2.2;
  const Gating r = relabel_gating(g, {0, 1, 2});
  CHECK((r.gamma - g.gamma).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a two-component swap flips the sign of the non-baseline row") {
  Gating g = Gating::zero(2, 3);
  g.gamma.row(1) << 1.5, -0.25, 0.75;
  const Gating r = relabel_gating(g, {1, 0});
  CHECK((r.gamma.row(1) + g.gamma.row(1)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(r.gamma.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("relabeled gating permutes the probabilities at every design point") {
  Rng rng(42);
  for (int rep = 0; rep < 300; ++rep) {
    const int G = 2 + rng.uniform_int(3);
    const int p = 1 + rng.uniform_int(3);
    Gating g = Gating::zero(G, p);
    for (int r = 1; r < G; ++r)
      for (int k = 0; k < p; ++k) g.gamma(r, k) = 3.0 * rng.normal();
    const std::vector<int> sigma = rng.permutation(G);
    const Gating relabeled = relabel_gating(g, sigma);

    VectorXd x = rng.normal_vector(p);
    x[0] = 1.0;
    const VectorXd eta = gating_probs(g, x);
    const VectorXd eta_star = gating_probs(relabeled, x);
    for (int k = 0; k < G; ++k) CHECK(eta_star[k] == doctest::Approx(eta[sigma[k]]).epsilon(1e-12));
  }
}

TEST_CASE("composing sigma with its inverse recovers the coefficients") {
  Rng rng(11);
  for (int rep = 0; rep < 100; ++rep) {
    const int G = 2 + rng.uniform_int(4);
    Gating g = Gating::zero(G, 3);
    for (int r = 1; r < G; ++r)
      for (int k = 0; k < 3; ++k) g.gamma(r, k) = rng.normal();
    const std::vector<int> sigma = rng.permutation(G);
    const Gating round = relabel_gating(relabel_gating(g, sigma), invert_permutation(sigma));
    CHECK((round.gamma - g.gamma).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(round.gamma.row(0).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("malformed permutations are rejected") {
  Gating g = Gating::zero(3, 2);
  CHECK_THROWS_AS(relabel_gating(g, {0, 1}), InputError);
  CHECK_THROWS_AS(relabel_gating(g, {0, 0, 1}), InputError);
  CHECK_THROWS_AS(relabel_gating(g, {0, 1, 3}), InputError);
}
