#pragma once

#include <optional>
#include <vector>

#include "moe/common.hpp"
#include "moe/dataset.hpp"
#include "moe/rng.hpp"

namespace moe {

// ---------------------------------------------------------------------------
// Expert parameter blocks
// ---------------------------------------------------------------------------

struct GaussianExpert {
  VectorXd mu;     // d
  MatrixXd sigma;  // d x d, SPD
};

struct GaussianRegressionExpert {
  VectorXd beta;  // q+1 regression coefficients
  double sigma2;  // error variance, > 0
};

struct BinomialExpert {
  int trials;  // common, known T
  double pi;   // success probability in (0,1)
};

/// Support parameters on the simplex; `beta` (optional) links the supports
/// to covariates through a logistic model with candidate 1 as baseline
/// (row 0 of beta identically zero).
struct PlackettLuceExpert {
  VectorXd support;              // M, positive, sums to 1
  std::optional<MatrixXd> beta;  // M x (q+1), row 0 == 0
};

/// History definition for the generalized transition matrix. `gender`
/// variants condition on a binary covariate (first covariate column),
/// `time` variants on the transition index t = 1..series_len.
enum class HistorySpec { prev, prev_gender, prev_time, prev_time_gender };

struct MarkovChainExpert {
  HistorySpec history;
  MatrixXd xi;  // J x K, rows on the simplex
};

int history_rows(HistorySpec spec, int n_states, int series_len);
bool history_uses_covariate(HistorySpec spec);

/// Row index of history state (prev_state, t, x01) in the generalized
/// transition matrix; t counts transitions 1..series_len.
int history_index(HistorySpec spec, int prev_state, int t, int x01, int n_states,
                  int series_len);

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

/// Multivariate normal log density via Cholesky. Throws NumericalError if
/// sigma is not SPD.
double gaussian_logpdf(const VectorXd& y, const GaussianExpert& e);

double gaussian_regression_logpdf(double y, const VectorXd& x_tilde,
                                  const GaussianRegressionExpert& e);

double binomial_logpmf(int y, const BinomialExpert& e);

/// Stagewise choice log probability of a (possibly partial) ballot. The
/// denominator at stage j sums the supports of all candidates not yet
/// chosen, so unranked candidates stay in every tail sum.
double plackett_luce_logprob(const std::vector<int>& ballot, const VectorXd& support);

/// Covariate-linked form: supports from the logistic link at x~.
VectorXd plackett_luce_support_at(const PlackettLuceExpert& e, const VectorXd& x_tilde);

/// Transition counts n_{jk} of one series under the chosen history spec.
/// The first observation only conditions; it contributes no transition.
MatrixXd markov_counts(const Eigen::Ref<const Eigen::RowVectorXi>& series, HistorySpec spec,
                       int n_states, double covariate);

/// sum_{jk} n_{jk} log xi_{jk}; returns -inf when a zero transition
/// probability carries positive count.
double markov_logprob(const MatrixXd& counts, const MatrixXd& xi);

/// sum_g eta_g C(T,y) pi_g^y (1-pi_g)^(T-y).
double binomial_mixture_pmf(int trials, const VectorXd& eta, const VectorXd& pi, int y);

// ---------------------------------------------------------------------------
// Weighted M-steps (complete-data maximizers given responsibilities)
// ---------------------------------------------------------------------------

/// Weighted mean and (biased) weighted covariance. When the weighted
/// scatter is not SPD the covariance is inflated by eps*I until the
/// Cholesky factorization succeeds; `regularized` reports that.
GaussianExpert gaussian_mstep(const MatrixXd& y, const VectorXd& weights,
                              bool* regularized = nullptr);

GaussianRegressionExpert regression_mstep(const VectorXd& y, const MatrixXd& design,
                                          const VectorXd& weights);

BinomialExpert binomial_mstep(const std::vector<int>& counts, int trials,
                              const VectorXd& weights);

/// Minorization-maximization update for the weighted Plackett-Luce
/// objective; each inner iteration does not decrease it. Candidates never
/// ranked with positive weight are pinned to the floor (flagged).
struct PlackettLuceMStepResult {
  VectorXd support;
  bool floored = false;
  int iterations = 0;
};
PlackettLuceMStepResult plackett_luce_mstep(const std::vector<std::vector<int>>& ballots,
                                            int n_candidates, const VectorXd& weights,
                                            const VectorXd& init, int max_iter = 200,
                                            double tol = 1e-12);

/// Weighted Plackett-Luce log likelihood of a support vector.
double plackett_luce_weighted_loglik(const std::vector<std::vector<int>>& ballots,
                                     const VectorXd& weights, const VectorXd& support);

MarkovChainExpert markov_mstep(const std::vector<MatrixXd>& counts, const VectorXd& weights,
                               HistorySpec spec);

// ---------------------------------------------------------------------------
// Conjugate posterior draws
// ---------------------------------------------------------------------------

struct GaussianPrior {
  VectorXd mu0;     // prior mean of mu
  MatrixXd lambda0; // prior covariance of mu, SPD
  double nu0;       // inverse-Wishart dof, > d-1
  MatrixXd s0;      // inverse-Wishart scale, SPD
};

/// Moments of the two full conditionals at the current state.
struct GaussianConditionalMoments {
  VectorXd mu_n;      // mean of mu | sigma, z, y
  MatrixXd lambda_n;  // covariance of mu | sigma, z, y
  double nu_n;        // dof of sigma | mu, z, y
  MatrixXd s_n;       // scale of sigma | mu, z, y
};

/// One Gibbs update of (mu_g, sigma_g) for every component: mu_g from its
/// normal full conditional given sigma_g, then sigma_g from the
/// inverse-Wishart full conditional given the fresh mu_g. Empty components
/// fall back to the prior. Returns the conditional moments actually used.
std::vector<GaussianConditionalMoments> gaussian_conjugate_draw(
    const MatrixXd& y, const std::vector<int>& z, const GaussianPrior& prior,
    std::vector<GaussianExpert>& experts, Rng& rng);

/// Inverse-Wishart draw via Bartlett decomposition of the Wishart.
MatrixXd inverse_wishart_draw(double nu, const MatrixXd& scale, Rng& rng);

/// Row-wise Dirichlet draw of a generalized transition matrix:
/// row j ~ Dirichlet(d0_j + pooled counts_j).
MatrixXd markov_dirichlet_draw(const MatrixXd& pooled_counts, const MatrixXd& d0, Rng& rng);

}  // namespace moe
