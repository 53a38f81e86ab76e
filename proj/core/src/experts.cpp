#include "moe/experts.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cassert>

namespace moe {

// ---------------------------------------------------------------------------
// histories
// ---------------------------------------------------------------------------

int history_rows(HistorySpec spec, int n_states, int series_len) {
  switch (spec) {
    case HistorySpec::prev: return n_states;
    case HistorySpec::prev_gender: return 2 * n_states;
    case HistorySpec::prev_time: return n_states * series_len;
    case HistorySpec::prev_time_gender: return 2 * n_states * series_len;
  }
  throw InputError("unknown history spec");
}

bool history_uses_covariate(HistorySpec spec) {
  return spec == HistorySpec::prev_gender || spec == HistorySpec::prev_time_gender;
}

int history_index(HistorySpec spec, int prev_state, int t, int x01, int n_states,
                  int series_len) {
  const int base = prev_state - 1;
  switch (spec) {
    case HistorySpec::prev: return base;
    case HistorySpec::prev_gender: return x01 * n_states + base;
    case HistorySpec::prev_time: return (t - 1) * n_states + base;
    case HistorySpec::prev_time_gender:
      return x01 * n_states * series_len + (t - 1) * n_states + base;
  }
  throw InputError("unknown history spec");
}

MatrixXd markov_counts(const Eigen::Ref<const Eigen::RowVectorXi>& series, HistorySpec spec,
                       int n_states, double covariate) {
  const int len = static_cast<int>(series.size()) - 1;
  if (len < 1) throw InputError("series needs at least one transition");
  int x01 = 0;
  if (history_uses_covariate(spec)) {
    if (covariate != 0.0 && covariate != 1.0)
      throw InputError("gender history requires a 0/1 covariate");
    x01 = static_cast<int>(covariate);
  }
  const int J = history_rows(spec, n_states, len);
  MatrixXd counts = MatrixXd::Zero(J, n_states);
  for (int t = 1; t <= len; ++t) {
    const int prev = series[t - 1];
    const int cur = series[t];
    if (prev < 1 || prev > n_states || cur < 1 || cur > n_states)
      throw InputError("state outside 1.." + std::to_string(n_states));
    counts(history_index(spec, prev, t, x01, n_states, len), cur - 1) += 1.0;
  }
  return counts;
}

double markov_logprob(const MatrixXd& counts, const MatrixXd& xi) {
  if (counts.rows() != xi.rows() || counts.cols() != xi.cols())
    throw InputError("transition count shape does not match xi");
  double lp = 0.0;
  for (Eigen::Index j = 0; j < counts.rows(); ++j)
    for (Eigen::Index k = 0; k < counts.cols(); ++k) {
      const double n = counts(j, k);
      if (n == 0.0) continue;
      if (xi(j, k) <= 0.0) return kNegInf;
      lp += n * std::log(xi(j, k));
    }
  return lp;
}

// ---------------------------------------------------------------------------
// densities
// ---------------------------------------------------------------------------

double gaussian_logpdf(const VectorXd& y, const GaussianExpert& e) {
  const Eigen::Index d = y.size();
  if (e.mu.size() != d || e.sigma.rows() != d || e.sigma.cols() != d)
    throw InputError("gaussian expert dimension mismatch");
  Eigen::LLT<MatrixXd> llt(e.sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("covariance is not positive definite");
  const MatrixXd L = llt.matrixL();
  const VectorXd v = llt.matrixL().solve(y - e.mu);
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) logdet += std::log(L(k, k));
  return -0.5 * d * std::log(2.0 * M_PI) - logdet - 0.5 * v.squaredNorm();
}

double gaussian_regression_logpdf(double y, const VectorXd& x_tilde,
                                  const GaussianRegressionExpert& e) {
  if (e.sigma2 <= 0.0) throw NumericalError("error variance must be positive");
  const double r = y - x_tilde.dot(e.beta);
  return -0.5 * std::log(2.0 * M_PI * e.sigma2) - 0.5 * r * r / e.sigma2;
}

double binomial_logpmf(int y, const BinomialExpert& e) {
  if (y < 0 || y > e.trials) throw InputError("count outside 0..T");
  return log_choose(e.trials, y) + y * std::log(e.pi) +
         (e.trials - y) * std::log1p(-e.pi);
}

double plackett_luce_logprob(const std::vector<int>& ballot, const VectorXd& support) {
  const int M = static_cast<int>(support.size());
  if (static_cast<int>(ballot.size()) > M) throw InputError("ballot longer than candidate list");
  std::vector<bool> chosen(M, false);
  double lp = 0.0;
  for (int c : ballot) {
    if (c < 1 || c > M) throw InputError("unknown candidate index " + std::to_string(c));
    if (chosen[c - 1]) throw InputError("candidate " + std::to_string(c) + " ranked twice");
    double denom = 0.0;  // current candidate plus everything not yet chosen
    for (int j = 0; j < M; ++j)
      if (!chosen[j]) denom += support[j];
    lp += std::log(support[c - 1]) - std::log(denom);
    chosen[c - 1] = true;
  }
  return lp;
}

VectorXd plackett_luce_support_at(const PlackettLuceExpert& e, const VectorXd& x_tilde) {
  if (!e.beta) return e.support;
  VectorXd lin = (*e.beta) * x_tilde;  // row 0 is the zero baseline
  const double lse = log_sum_exp(lin);
  return (lin.array() - lse).exp();
}

double binomial_mixture_pmf(int trials, const VectorXd& eta, const VectorXd& pi, int y) {
  if (y < 0 || y > trials) throw InputError("count outside 0..T");
  if (eta.size() != pi.size()) throw InputError("weight/probability length mismatch");
  double p = 0.0;
  const double lc = log_choose(trials, y);
  for (Eigen::Index g = 0; g < eta.size(); ++g)
    p += eta[g] * std::exp(lc + y * std::log(pi[g]) + (trials - y) * std::log1p(-pi[g]));
  return p;
}

// ---------------------------------------------------------------------------
// weighted M-steps
// ---------------------------------------------------------------------------

GaussianExpert gaussian_mstep(const MatrixXd& y, const VectorXd& weights, bool* regularized) {
  const Eigen::Index n = y.rows(), d = y.cols();
  if (weights.size() != n) throw InputError("weight length mismatch");
  const double wsum = weights.sum();
  if (!(wsum > 1e-12)) throw NumericalError("degenerate component: effective size ~ 0");

  GaussianExpert e;
  e.mu = (y.transpose() * weights) / wsum;
  MatrixXd scatter = MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights[i] == 0.0) continue;
    const VectorXd c = y.row(i).transpose() - e.mu;
    scatter.noalias() += weights[i] * c * c.transpose();
  }
  e.sigma = scatter / wsum;

  bool flagged = false;
  double eps = 1e-8 * (e.sigma.trace() > 0.0 ? e.sigma.trace() / d : 1.0);
  while (Eigen::LLT<MatrixXd>(e.sigma).info() != Eigen::Success) {
    e.sigma += eps * MatrixXd::Identity(d, d);
    eps *= 10.0;
    flagged = true;
  }
  if (regularized) *regularized = flagged;
  return e;
}

GaussianRegressionExpert regression_mstep(const VectorXd& y, const MatrixXd& design,
                                          const VectorXd& weights) {
  const double wsum = weights.sum();
  if (!(wsum > 1e-12)) throw NumericalError("degenerate component: effective size ~ 0");
  const MatrixXd xw = design.transpose() * weights.asDiagonal();
  const MatrixXd xtwx = xw * design;
  GaussianRegressionExpert e;
  e.beta = xtwx.ldlt().solve(xw * y);
  const VectorXd r = y - design * e.beta;
  e.sigma2 = std::max(r.cwiseProduct(r).dot(weights) / wsum, 1e-12);
  return e;
}

BinomialExpert binomial_mstep(const std::vector<int>& counts, int trials,
                              const VectorXd& weights) {
  const double wsum = weights.sum();
  if (!(wsum > 1e-12)) throw NumericalError("degenerate component: effective size ~ 0");
  double s = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) s += weights[static_cast<Eigen::Index>(i)] * counts[i];
  BinomialExpert e{trials, s / (trials * wsum)};
  e.pi = std::clamp(e.pi, 1e-12, 1.0 - 1e-12);
  return e;
}

double plackett_luce_weighted_loglik(const std::vector<std::vector<int>>& ballots,
                                     const VectorXd& weights, const VectorXd& support) {
  double obj = 0.0;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const double w = weights[static_cast<Eigen::Index>(i)];
    if (w == 0.0) continue;
    obj += w * plackett_luce_logprob(ballots[i], support);
  }
  return obj;
}

PlackettLuceMStepResult plackett_luce_mstep(const std::vector<std::vector<int>>& ballots,
                                            int n_candidates, const VectorXd& weights,
                                            const VectorXd& init, int max_iter, double tol) {
  const int M = n_candidates;
  const double wsum = weights.sum();
  if (!(wsum > 1e-12)) throw NumericalError("degenerate component: effective size ~ 0");
  constexpr double kFloor = 1e-10;

  // Wins at stages with a real choice (>= 2 candidates available). A
  // candidate whose only wins are forced has its supremum at the boundary
  // and is pinned to the floor, as is a candidate never ranked at all.
  VectorXd wins = VectorXd::Zero(M);
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const double w = weights[static_cast<Eigen::Index>(i)];
    if (w <= 0.0) continue;
    int remaining = M;
    for (int c : ballots[i]) {
      if (remaining >= 2) wins[c - 1] += w;
      --remaining;
    }
  }
  std::vector<bool> pinned(M, false);
  int n_free = 0;
  for (int j = 0; j < M; ++j) {
    pinned[j] = wins[j] <= 0.0;
    if (!pinned[j]) ++n_free;
  }
  if (n_free == 0) throw NumericalError("no candidate has an interior support maximizer");

  VectorXd p = init;
  for (int j = 0; j < M; ++j)
    if (pinned[j]) p[j] = 0.0;
  if (p.sum() <= 0.0) p.setConstant(1.0);
  p /= p.sum();

#ifndef NDEBUG
  auto reduced_obj = [&](const VectorXd& s) {
    VectorXd full = s;
    for (int j = 0; j < M; ++j)
      if (pinned[j]) full[j] = kFloor;
    return plackett_luce_weighted_loglik(ballots, weights, full / full.sum());
  };
  double prev_obj = reduced_obj(p);
#endif

  PlackettLuceMStepResult out;
  for (out.iterations = 1; out.iterations <= max_iter; ++out.iterations) {
    VectorXd denom_acc = VectorXd::Zero(M);
    for (std::size_t i = 0; i < ballots.size(); ++i) {
      const double w = weights[static_cast<Eigen::Index>(i)];
      if (w <= 0.0) continue;
      std::vector<bool> chosen(M, false);
      double tail = p.sum();
      for (int c : ballots[i]) {
        const double inc = w / tail;
        for (int j = 0; j < M; ++j)
          if (!chosen[j] && !pinned[j]) denom_acc[j] += inc;
        chosen[c - 1] = true;
        tail -= p[c - 1];
      }
    }
    VectorXd pn = VectorXd::Zero(M);
    for (int j = 0; j < M; ++j)
      if (!pinned[j]) pn[j] = wins[j] / denom_acc[j];
    pn /= pn.sum();
    const double delta = (pn - p).cwiseAbs().maxCoeff();
    p = pn;
#ifndef NDEBUG
    const double cur_obj = reduced_obj(p);
    assert(cur_obj >= prev_obj - 1e-9 * (1.0 + std::abs(prev_obj)));
    prev_obj = cur_obj;
#endif
    if (delta < tol) break;
  }

  for (int j = 0; j < M; ++j)
    if (pinned[j]) {
      p[j] = kFloor;
      out.floored = true;
    }
  out.support = p / p.sum();
  return out;
}

MarkovChainExpert markov_mstep(const std::vector<MatrixXd>& counts, const VectorXd& weights,
                               HistorySpec spec) {
  if (counts.empty()) throw InputError("no count tensors");
  const double wsum = weights.sum();
  if (!(wsum > 1e-12)) throw NumericalError("degenerate component: effective size ~ 0");
  MatrixXd pooled = MatrixXd::Zero(counts[0].rows(), counts[0].cols());
  for (std::size_t i = 0; i < counts.size(); ++i)
    pooled += weights[static_cast<Eigen::Index>(i)] * counts[i];
  MarkovChainExpert e;
  e.history = spec;
  e.xi = pooled;
  for (Eigen::Index j = 0; j < pooled.rows(); ++j) {
    const double rs = pooled.row(j).sum();
    if (rs > 0.0)
      e.xi.row(j) /= rs;
    else
      e.xi.row(j).setConstant(1.0 / static_cast<double>(pooled.cols()));
  }
  return e;
}

// ---------------------------------------------------------------------------
// conjugate draws
// ---------------------------------------------------------------------------

MatrixXd inverse_wishart_draw(double nu, const MatrixXd& scale, Rng& rng) {
  const Eigen::Index d = scale.rows();
  if (!(nu > d - 1)) throw InputError("inverse-Wishart dof must exceed d-1");
  Eigen::LLT<MatrixXd> llt(scale.inverse());
  if (llt.info() != Eigen::Success)
    throw NumericalError("inverse-Wishart scale is not positive definite");
  const MatrixXd L = llt.matrixL();
  MatrixXd a = MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    a(i, i) = std::sqrt(rng.chi_squared(nu - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const MatrixXd la = L * a;
  const MatrixXd w = la * la.transpose();  // Wishart(nu, scale^{-1})
  return w.inverse();
}

std::vector<GaussianConditionalMoments> gaussian_conjugate_draw(
    const MatrixXd& y, const std::vector<int>& z, const GaussianPrior& prior,
    std::vector<GaussianExpert>& experts, Rng& rng) {
  const Eigen::Index d = y.cols();
  const int G = static_cast<int>(experts.size());
  const MatrixXd lambda0_inv = prior.lambda0.inverse();
  std::vector<GaussianConditionalMoments> moments(G);

  for (int g = 0; g < G; ++g) {
    double ng = 0.0;
    VectorXd ysum = VectorXd::Zero(d);
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] == g) {
        ng += 1.0;
        ysum += y.row(static_cast<Eigen::Index>(i)).transpose();
      }

    // mu_g | sigma_g, z, y
    const MatrixXd sigma_inv = experts[g].sigma.inverse();
    const MatrixXd lambda_n = (lambda0_inv + ng * sigma_inv).inverse();
    const VectorXd mu_n = lambda_n * (lambda0_inv * prior.mu0 + sigma_inv * ysum);
    Eigen::LLT<MatrixXd> llt(lambda_n);
    if (llt.info() != Eigen::Success)
      throw NumericalError("posterior covariance of mu is not positive definite");
    experts[g].mu = mu_n + MatrixXd(llt.matrixL()) * rng.normal_vector(d);

    // sigma_g | mu_g, z, y
    const double nu_n = prior.nu0 + ng;
    MatrixXd s_n = prior.s0;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] == g) {
        const VectorXd c = y.row(static_cast<Eigen::Index>(i)).transpose() - experts[g].mu;
        s_n.noalias() += c * c.transpose();
      }
    experts[g].sigma = inverse_wishart_draw(nu_n, s_n, rng);

    moments[g] = {mu_n, lambda_n, nu_n, s_n};
  }
  return moments;
}

MatrixXd markov_dirichlet_draw(const MatrixXd& pooled_counts, const MatrixXd& d0, Rng& rng) {
  if (pooled_counts.rows() != d0.rows() || pooled_counts.cols() != d0.cols())
    throw InputError("count/prior shape mismatch");
  if ((d0.array() <= 0.0).any()) throw InputError("Dirichlet prior must be positive");
  MatrixXd xi(d0.rows(), d0.cols());
  for (Eigen::Index j = 0; j < d0.rows(); ++j) {
    const VectorXd alpha = (d0.row(j) + pooled_counts.row(j)).transpose();
    xi.row(j) = rng.dirichlet(alpha).transpose();
  }
  return xi;
}

}  // namespace moe
