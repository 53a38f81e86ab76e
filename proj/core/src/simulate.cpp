#include "moe/simulate.hpp"

#include <Eigen/Cholesky>

namespace moe {

namespace {

Allocation draw_truth(const MEModelSpec& model, const MatrixXd& design, Rng& rng) {
  const int n = static_cast<int>(design.rows());
  Allocation z(n);
  if (model.uses_gating()) {
    for (int i = 0; i < n; ++i)
      z[i] = rng.categorical(gating_probs(model.gating, design.row(i).transpose()));
  } else {
    for (int i = 0; i < n; ++i) z[i] = rng.categorical(model.weights);
  }
  return z;
}

std::vector<int> draw_ranking(const VectorXd& support, Rng& rng) {
  const int M = static_cast<int>(support.size());
  std::vector<int> ballot;
  ballot.reserve(M);
  VectorXd p = support;
  for (int stage = 0; stage < M; ++stage) {
    const int c = rng.categorical(p);
    ballot.push_back(c + 1);
    p[c] = 0.0;
  }
  return ballot;
}

int binomial_draw(int trials, double pi, Rng& rng) {
  std::binomial_distribution<int> d(trials, pi);
  return d(rng.engine());
}

}  // namespace

SimResult simulate_markov(const MEModelSpec& model, const MatrixXd& covariates,
                          int series_len, Rng& rng) {
  const auto& experts = model.experts_as<MarkovChainExpert>();
  const int n = static_cast<int>(covariates.rows());
  const int K = static_cast<int>(experts[0].xi.cols());
  const MatrixXd design = make_design(covariates, n);
  const Allocation z = draw_truth(model, design, rng);

  MatrixXi series(n, series_len + 1);
  for (int i = 0; i < n; ++i) {
    const auto& e = experts[z[i]];
    const double cov = history_uses_covariate(e.history) ? covariates(i, 0) : 0.0;
    const int x01 = history_uses_covariate(e.history) ? static_cast<int>(cov) : 0;
    series(i, 0) = rng.uniform_int(K) + 1;
    for (int t = 1; t <= series_len; ++t) {
      const int j = history_index(e.history, series(i, t - 1), t, x01, K, series_len);
      series(i, t) = rng.categorical(e.xi.row(j).transpose()) + 1;
    }
  }
  SimResult out{Dataset::make_series(std::move(series), K, covariates), z};
  return out;
}

SimResult simulate(const MEModelSpec& model, const MatrixXd& covariates, Rng& rng) {
  const int n = static_cast<int>(covariates.rows());
  const MatrixXd design = make_design(covariates, n);

  if (model.family == Family::markov)
    throw InputError("markov simulation needs a series length; call simulate_markov");

  const Allocation z = draw_truth(model, design, rng);

  switch (model.family) {
    case Family::gaussian: {
      const auto& ex = model.experts_as<GaussianExpert>();
      const int d = static_cast<int>(ex[0].mu.size());
      std::vector<MatrixXd> chol;
      for (const auto& e : ex) chol.push_back(Eigen::LLT<MatrixXd>(e.sigma).matrixL());
      MatrixXd y(n, d);
      for (int i = 0; i < n; ++i)
        y.row(i) = (ex[z[i]].mu + chol[z[i]] * rng.normal_vector(d)).transpose();
      return {Dataset::make_continuous(std::move(y), covariates), z};
    }
    case Family::gaussian_regression: {
      const auto& ex = model.experts_as<GaussianRegressionExpert>();
      MatrixXd y(n, 1);
      for (int i = 0; i < n; ++i)
        y(i, 0) = design.row(i).dot(ex[z[i]].beta) + std::sqrt(ex[z[i]].sigma2) * rng.normal();
      return {Dataset::make_continuous(std::move(y), covariates), z};
    }
    case Family::binomial: {
      const auto& ex = model.experts_as<BinomialExpert>();
      std::vector<int> counts(n);
      for (int i = 0; i < n; ++i) counts[i] = binomial_draw(ex[z[i]].trials, ex[z[i]].pi, rng);
      return {Dataset::make_binomial(std::move(counts), ex[0].trials, covariates), z};
    }
    case Family::plackett_luce: {
      const auto& ex = model.experts_as<PlackettLuceExpert>();
      const int M = static_cast<int>(ex[0].support.size());
      std::vector<std::vector<int>> ballots(n);
      for (int i = 0; i < n; ++i) {
        const VectorXd s = model.experts_use_covariates()
                               ? plackett_luce_support_at(ex[z[i]], design.row(i).transpose())
                               : ex[z[i]].support;
        ballots[i] = draw_ranking(s, rng);
      }
      return {Dataset::make_rankings(std::move(ballots), M, covariates), z};
    }
    default: break;
  }
  throw InputError("unsupported family in simulate");
}

SimResult simulate(const MEModelSpec& model, int n, Rng& rng) {
  return simulate(model, MatrixXd(n, 0), rng);
}

}  // namespace moe
