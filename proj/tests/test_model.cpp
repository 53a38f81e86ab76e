#include <cmath>

#include "testutil.hpp"

using namespace moe;
using testutil::iso_gaussian;

namespace {

MEModelSpec small_simple_me(int G = 2) {
  std::vector<GaussianExpert> ex;
  for (int g = 0; g < G; ++g) ex.push_back(iso_gaussian({2.0 * g, -1.0 * g}, 1.0 + 0.5 * g));
  Gating gating = Gating::zero(G, 2);
  for (int g = 1; g < G; ++g) gating.gamma.row(g) << 0.3 * g, -0.8 * g;
  return testutil::simple_me_gaussian(std::move(ex), std::move(gating));
}

Dataset small_data(int n, Rng& rng) {
  MatrixXd y(n, 2);
  for (int i = 0; i < n; ++i) y.row(i) = rng.normal_vector(2).transpose();
  MatrixXd x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = rng.normal();
  return Dataset::make_continuous(std::move(y), std::move(x));
}

}  // namespace

TEST_CASE("variant a with one component reduces to the expert density") {
  MEModelSpec m = testutil::gaussian_mixture({iso_gaussian({0.5, 0.5})}, VectorXd::Ones(1));
  Rng rng(1);
  const Dataset data = small_data(6, rng);
  for (int i = 0; i < data.n; ++i) {
    const double expert = gaussian_logpdf(data.continuous.row(i).transpose(),
                                          m.experts_as<GaussianExpert>()[0]);
    CHECK(log_joint_density(m, data, i, 0) == doctest::Approx(expert).epsilon(1e-14));
  }
}

TEST_CASE("variant c joint density factorizes as gate times expert") {
  const MEModelSpec m = small_simple_me();
  Rng rng(2);
  const Dataset data = small_data(8, rng);
  for (int i = 0; i < data.n; ++i) {
    const VectorXd eta = gating_probs(m.gating, data.design.row(i).transpose());
    for (int g = 0; g < 2; ++g) {
      const double expert = gaussian_logpdf(data.continuous.row(i).transpose(),
                                            m.experts_as<GaussianExpert>()[g]);
      CHECK(joint_density(m, data, i, g) ==
            doctest::Approx(eta[g] * std::exp(expert)).epsilon(1e-12));
    }
  }
}

TEST_CASE("joint densities sum to the brute-force mixture density") {
  const MEModelSpec m = small_simple_me(3);
  Rng rng(3);
  const Dataset data = small_data(10, rng);
  for (int i = 0; i < data.n; ++i) {
    double total = 0.0;
    for (int g = 0; g < 3; ++g) total += joint_density(m, data, i, g);
    const VectorXd eta = gating_probs(m.gating, data.design.row(i).transpose());
    double oracle = 0.0;
    for (int g = 0; g < 3; ++g)
      oracle += eta[g] * std::exp(gaussian_logpdf(data.continuous.row(i).transpose(),
                                                  m.experts_as<GaussianExpert>()[g]));
    CHECK(total == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("gaussian family rejects regression variants") {
  MEModelSpec m = small_simple_me();
  m.variant = Variant::d;
  Rng rng(4);
  const Dataset data = small_data(5, rng);
  CHECK_THROWS_AS(validate_model(m, data), InputError);
}

TEST_CASE("single observation at the mean of a standard bivariate gaussian") {
  MEModelSpec m = testutil::gaussian_mixture({iso_gaussian({0.7, -0.3})}, VectorXd::Ones(1));
  MatrixXd y(1, 2);
  y << 0.7, -0.3;
  const Dataset data = Dataset::make_continuous(y);
  CHECK(log_likelihood(m, data) == doctest::Approx(-std::log(2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("duplicating every observation doubles the log likelihood") {
  const MEModelSpec m = small_simple_me();
  Rng rng(5);
  const Dataset data = small_data(7, rng);
  MatrixXd y2(14, 2), x2(14, 1);
  y2 << data.continuous, data.continuous;
  x2 << data.covariates, data.covariates;
  const Dataset doubled = Dataset::make_continuous(y2, x2);
  CHECK(log_likelihood(m, doubled) ==
        doctest::Approx(2.0 * log_likelihood(m, data)).epsilon(1e-13));
}

TEST_CASE("log likelihood equals the direct product-of-mixtures oracle") {
  const MEModelSpec m = small_simple_me();
  Rng rng(6);
  const Dataset data = small_data(9, rng);
  double oracle = 0.0;
  for (int i = 0; i < data.n; ++i) {
    double mix = 0.0;
    const VectorXd eta = gating_probs(m.gating, data.design.row(i).transpose());
    for (int g = 0; g < 2; ++g)
      mix += eta[g] * std::exp(gaussian_logpdf(data.continuous.row(i).transpose(),
                                               m.experts_as<GaussianExpert>()[g]));
    oracle += std::log(mix);
  }
  CHECK(log_likelihood(m, data) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("variant a ignores covariate ordering") {
  MEModelSpec m;
  m.variant = Variant::a;
  m.family = Family::gaussian;
  m.weights = VectorXd::Constant(2, 0.5);
  m.experts = std::vector<GaussianExpert>{iso_gaussian({0.0, 0.0}), iso_gaussian({2.0, 2.0})};
  Rng rng(7);
  const Dataset data = small_data(12, rng);
  MatrixXd flipped = data.covariates.colwise().reverse();
  const Dataset permuted = data.with_covariates(flipped);
  CHECK(log_likelihood(m, data) == doctest::Approx(log_likelihood(m, permuted)).epsilon(1e-14));
}

TEST_CASE("log likelihood is invariant under simultaneous relabeling") {
  Rng rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    const MEModelSpec m = small_simple_me(3);
    const Dataset data = small_data(10, rng);
    const std::vector<int> sigma = rng.permutation(3);
    const MEModelSpec relabeled = relabel_model(m, sigma);
    CHECK(log_likelihood(relabeled, data) ==
          doctest::Approx(log_likelihood(m, data)).epsilon(1e-10));
  }
}

TEST_CASE("weights off the simplex are rejected") {
  MEModelSpec m = testutil::gaussian_mixture(
      {iso_gaussian({0.0, 0.0}), iso_gaussian({1.0, 1.0})}, VectorXd::Constant(2, 0.4));
  Rng rng(9);
  const Dataset data = small_data(4, rng);
  CHECK_THROWS_AS(validate_model(m, data), InputError);
}

TEST_CASE("markov variant consistency with gender histories") {
  MEModelSpec m;
  m.variant = Variant::a;
  m.family = Family::markov;
  m.weights = VectorXd::Ones(1);
  std::vector<MarkovChainExpert> ex(1);
  ex[0].history = HistorySpec::prev_gender;
  ex[0].xi = MatrixXd::Constant(6, 3, 1.0 / 3);
  m.experts = std::move(ex);

  MatrixXi s(4, 3);
  s.setConstant(1);
  MatrixXd x(4, 1);
  x << 0, 1, 0, 1;
  const Dataset data = Dataset::make_series(s, 3, x);
  CHECK_THROWS_AS(validate_model(m, data), InputError);  // gender history needs variant b/d
  m.variant = Variant::b;
  CHECK_NOTHROW(validate_model(m, data));
}
