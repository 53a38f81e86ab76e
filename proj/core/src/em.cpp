#include "moe/em.hpp"

#include <algorithm>
#include <future>

#include "moe/stats.hpp"

namespace moe {

Responsibilities e_step(const MEModelSpec& model, const Dataset& data,
                        const std::vector<MatrixXd>* markov_cache) {
  const MatrixXd lj = log_joint_matrix(model, data, markov_cache);
  Responsibilities r;
  r.zhat.resize(lj.rows(), lj.cols());
  for (Eigen::Index i = 0; i < lj.rows(); ++i) {
    const double lse = log_sum_exp(VectorXd(lj.row(i).transpose()));
    if (!std::isfinite(lse))
      throw NumericalError("all component densities underflow at observation " +
                           std::to_string(i));
    r.zhat.row(i) = (lj.row(i).array() - lse).exp();
  }
  return r;
}

// ---------------------------------------------------------------------------
// gating M step
// ---------------------------------------------------------------------------

double gating_objective(const Gating& gating, const MatrixXd& resp, const MatrixXd& design) {
  double q = 0.0;
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const VectorXd lp = gating_log_probs(gating, design.row(i).transpose());
    q += resp.row(i).dot(lp.transpose());
  }
  return q;
}

namespace {

// gradient and negative Hessian of the weighted MNL log likelihood over
// the non-baseline coefficient rows, flattened row-major
void gating_derivatives(const Gating& gating, const MatrixXd& resp, const MatrixXd& design,
                        VectorXd& grad, MatrixXd& neg_hess) {
  const int G = gating.components();
  const int p = gating.n_coef();
  const int dim = (G - 1) * p;
  grad = VectorXd::Zero(dim);
  neg_hess = MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < design.rows(); ++i) {
    const VectorXd x = design.row(i).transpose();
    const VectorXd eta = gating_probs(gating, x);
    const MatrixXd xxt = x * x.transpose();
    for (int g = 1; g < G; ++g) {
      grad.segment((g - 1) * p, p) += (resp(i, g) - eta[g]) * x;
      for (int h = 1; h < G; ++h) {
        const double w = eta[g] * ((g == h ? 1.0 : 0.0) - eta[h]);
        neg_hess.block((g - 1) * p, (h - 1) * p, p, p) += w * xxt;
      }
    }
  }
}

Gating apply_step(const Gating& g, const VectorXd& step, double t, double cap) {
  Gating out = g;
  const int p = g.n_coef();
  for (int r = 1; r < g.components(); ++r)
    for (int k = 0; k < p; ++k) {
      double v = g.gamma(r, k) + t * step[(r - 1) * p + k];
      out.gamma(r, k) = std::clamp(v, -cap, cap);
    }
  return out;
}

}  // namespace

GatingMStepResult m_step_gating(const MatrixXd& resp, const MatrixXd& design,
                                const Gating& init, double coef_cap, int max_iter) {
  GatingMStepResult res;
  res.gating = init;
  // entry point must respect the box
  res.gating.gamma = res.gating.gamma.cwiseMax(-coef_cap).cwiseMin(coef_cap);
  res.gating.gamma.row(0).setZero();
  res.objective = gating_objective(res.gating, resp, design);
  if (init.components() == 1) return res;

  VectorXd grad;
  MatrixXd neg_hess;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    gating_derivatives(res.gating, resp, design, grad, neg_hess);
    if (grad.lpNorm<Eigen::Infinity>() < 1e-9 * (1.0 + std::abs(res.objective))) break;

    VectorXd dir = neg_hess.ldlt().solve(grad);
    if (!dir.allFinite() || dir.dot(grad) <= 0.0) dir = grad;  // ascent fallback

    bool improved = false;
    for (const VectorXd* d : {&dir, &grad}) {
      double t = 1.0;
      for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
        const Gating cand = apply_step(res.gating, *d, t, coef_cap);
        const double q = gating_objective(cand, resp, design);
        if (q > res.objective) {
          res.gating = cand;
          res.objective = q;
          improved = true;
          break;
        }
      }
      if (improved) break;
    }
    if (!improved) break;
  }

  res.separation = (res.gating.gamma.cwiseAbs().array() >= coef_cap - 1e-12).any();
  return res;
}

// ---------------------------------------------------------------------------
// ECM
// ---------------------------------------------------------------------------

namespace {

void expert_m_step(MEModelSpec& model, const Dataset& data, const MatrixXd& resp,
                   const std::vector<MatrixXd>* markov_cache,
                   std::vector<std::string>& warnings) {
  const int G = model.components();
  switch (model.family) {
    case Family::gaussian: {
      auto& ex = model.experts_as<GaussianExpert>();
      const double d = static_cast<double>(data.dim());
      for (int g = 0; g < G; ++g) {
        const double eff = resp.col(g).sum();
        if (eff < d + 1.0)
          throw NumericalError("degenerate component " + std::to_string(g + 1) +
                               " (effective size " + std::to_string(eff) + ")");
        bool reg = false;
        ex[g] = gaussian_mstep(data.continuous, resp.col(g), &reg);
        if (reg)
          warnings.push_back("covariance of component " + std::to_string(g + 1) +
                             " regularized");
      }
      break;
    }
    case Family::gaussian_regression: {
      auto& ex = model.experts_as<GaussianRegressionExpert>();
      for (int g = 0; g < G; ++g)
        ex[g] = regression_mstep(data.continuous.col(0), data.design, resp.col(g));
      break;
    }
    case Family::binomial: {
      auto& ex = model.experts_as<BinomialExpert>();
      for (int g = 0; g < G; ++g) ex[g] = binomial_mstep(data.counts, data.trials, resp.col(g));
      break;
    }
    case Family::plackett_luce: {
      auto& ex = model.experts_as<PlackettLuceExpert>();
      if (model.experts_use_covariates())
        throw NumericalError("covariate-linked Plackett-Luce M step not wired here");
      for (int g = 0; g < G; ++g) {
        auto r = plackett_luce_mstep(data.rankings, data.n_candidates, resp.col(g), ex[g].support);
        if (r.floored)
          warnings.push_back("support of component " + std::to_string(g + 1) +
                             " pinned at the floor");
        ex[g].support = r.support;
      }
      break;
    }
    case Family::markov: {
      auto& ex = model.experts_as<MarkovChainExpert>();
      for (int g = 0; g < G; ++g) ex[g] = markov_mstep(*markov_cache, resp.col(g), ex[g].history);
      break;
    }
  }
}

MatrixXd init_responsibilities(const Dataset& data, const EmConfig& config, Rng& rng) {
  const int G = config.components;
  MatrixXd resp(data.n, G);
  const bool continuous_family =
      config.family == Family::gaussian || config.family == Family::gaussian_regression;
  if (continuous_family && G > 1) {
    const KMeansResult km = kmeans(data.continuous, G, rng);
    resp.setConstant(0.05 / std::max(1, G - 1));
    for (int i = 0; i < data.n; ++i) resp(i, km.labels[i]) = 0.95;
    for (int i = 0; i < data.n; ++i) resp.row(i) /= resp.row(i).sum();
  } else if (G == 1) {
    resp.setOnes();
  } else {
    const VectorXd alpha = VectorXd::Ones(G);
    for (int i = 0; i < data.n; ++i) resp.row(i) = rng.dirichlet(alpha).transpose();
  }
  return resp;
}

MEModelSpec blank_model(const Dataset& data, const EmConfig& config) {
  MEModelSpec m;
  m.variant = config.variant;
  m.family = config.family;
  const int G = config.components;
  switch (config.family) {
    case Family::gaussian: {
      std::vector<GaussianExpert> ex(G);
      for (auto& e : ex) {
        e.mu = VectorXd::Zero(data.dim());
        e.sigma = MatrixXd::Identity(data.dim(), data.dim());
      }
      m.experts = std::move(ex);
      break;
    }
    case Family::gaussian_regression: {
      std::vector<GaussianRegressionExpert> ex(G);
      for (auto& e : ex) {
        e.beta = VectorXd::Zero(data.design.cols());
        e.sigma2 = 1.0;
      }
      m.experts = std::move(ex);
      break;
    }
    case Family::binomial: {
      std::vector<BinomialExpert> ex(G, BinomialExpert{data.trials, 0.5});
      m.experts = std::move(ex);
      break;
    }
    case Family::plackett_luce: {
      std::vector<PlackettLuceExpert> ex(G);
      for (auto& e : ex)
        e.support = VectorXd::Constant(data.n_candidates, 1.0 / data.n_candidates);
      m.experts = std::move(ex);
      break;
    }
    case Family::markov: {
      const int J = history_rows(config.history, data.n_states, data.series_len());
      std::vector<MarkovChainExpert> ex(G);
      for (auto& e : ex) {
        e.history = config.history;
        e.xi = MatrixXd::Constant(J, data.n_states, 1.0 / data.n_states);
      }
      m.experts = std::move(ex);
      break;
    }
  }
  if (m.uses_gating())
    m.gating = Gating::zero(G, static_cast<int>(data.design.cols()));
  else
    m.weights = VectorXd::Constant(G, 1.0 / G);
  return m;
}

}  // namespace

FitResult ecm_fit(const Dataset& data, const EmConfig& config) {
  if (config.components < 1) throw InputError("components must be >= 1");
  Rng rng(config.seed);

  FitResult fit;
  fit.seed = config.seed;

  std::vector<MatrixXd> markov_cache_store;
  const std::vector<MatrixXd>* markov_cache = nullptr;
  if (config.family == Family::markov) {
    markov_cache_store = markov_count_tensors(data, config.history);
    markov_cache = &markov_cache_store;
  }

  MEModelSpec model;
  MatrixXd resp;
  if (config.init_model) {
    model = *config.init_model;
    validate_model(model, data);
  } else {
    model = blank_model(data, config);
    validate_model(model, data);
    resp = config.init_resp ? *config.init_resp : init_responsibilities(data, config, rng);
    expert_m_step(model, data, resp, markov_cache, fit.warnings);
    if (!model.uses_gating())
      model.weights = resp.colwise().mean().transpose();
  }

  double prev_ll = kNegInf;
  for (fit.iterations = 1; fit.iterations <= config.max_iter; ++fit.iterations) {
    const Responsibilities r = e_step(model, data, markov_cache);
    resp = r.zhat;
    const double ll = log_likelihood(model, data, markov_cache);
    fit.loglik_trace.push_back(ll);
    if (std::abs(ll - prev_ll) < config.tol) {
      fit.converged = true;
      break;
    }
    prev_ll = ll;

    expert_m_step(model, data, resp, markov_cache, fit.warnings);
    if (model.uses_gating()) {
      const GatingMStepResult g = m_step_gating(resp, data.design, model.gating);
      static const std::string sep_msg =
          "complete separation suspected: gating coefficients capped";
      if (g.separation &&
          std::find(fit.warnings.begin(), fit.warnings.end(), sep_msg) == fit.warnings.end())
        fit.warnings.push_back(sep_msg);
      model.gating = g.gating;
    } else {
      model.weights = resp.colwise().mean().transpose();
    }
  }

  fit.model = std::move(model);
  fit.responsibilities = std::move(resp);
  fit.map_assignment.resize(data.n);
  for (int i = 0; i < data.n; ++i) {
    int best = 0;
    for (int g = 1; g < config.components; ++g)
      if (fit.responsibilities(i, g) > fit.responsibilities(i, best)) best = g;
    fit.map_assignment[i] = best;
  }
  return fit;
}

// ---------------------------------------------------------------------------
// standard errors
// ---------------------------------------------------------------------------

MatrixXd per_observation_scores(const MEModelSpec& model, const Dataset& data) {
  const VectorXd theta = pack_params(model);
  const Eigen::Index P = theta.size();

  std::vector<MatrixXd> cache_store;
  const std::vector<MatrixXd>* cache = nullptr;
  if (model.family == Family::markov) {
    cache_store = markov_count_tensors(
        data, model.experts_as<MarkovChainExpert>()[0].history);
    cache = &cache_store;
  }

  auto per_obs_ll = [&](const MEModelSpec& m) {
    const MatrixXd lj = log_joint_matrix(m, data, cache);
    VectorXd out(data.n);
    for (int i = 0; i < data.n; ++i) out[i] = log_sum_exp(VectorXd(lj.row(i).transpose()));
    return out;
  };

  MatrixXd scores(data.n, P);
  for (Eigen::Index k = 0; k < P; ++k) {
    const double h = 1e-6 * (1.0 + std::abs(theta[k]));
    VectorXd tp = theta, tm = theta;
    tp[k] += h;
    tm[k] -= h;
    const VectorXd lp = per_obs_ll(unpack_params(model, tp));
    const VectorXd lm = per_obs_ll(unpack_params(model, tm));
    scores.col(k) = (lp - lm) / (2.0 * h);
  }
  return scores;
}

StdErrorResult standard_errors(const FitResult& fit, const Dataset& data) {
  if (!fit.converged) throw NumericalError("standard errors need a converged fit");
  StdErrorResult out;
  out.names = param_names(fit.model);
  const MatrixXd s = per_observation_scores(fit.model, data);
  const MatrixXd info = s.transpose() * s;

  Eigen::FullPivLU<MatrixXd> lu(info);
  out.rank = static_cast<int>(lu.rank());
  if (out.rank < info.rows()) {
    out.se = VectorXd::Constant(info.rows(), std::numeric_limits<double>::quiet_NaN());
    out.available = false;
    return out;
  }
  const MatrixXd cov = lu.inverse();
  out.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  out.available = true;
  return out;
}

// ---------------------------------------------------------------------------
// multi start
// ---------------------------------------------------------------------------

FitResult multi_start(const Dataset& data, const EmConfig& config, int n_restarts, Rng& rng) {
  if (n_restarts < 1) throw InputError("n_restarts must be >= 1");

  std::vector<std::future<FitResult>> futures;
  futures.reserve(n_restarts);
  for (int r = 0; r < n_restarts; ++r) {
    EmConfig c = config;
    c.seed = rng.split(static_cast<std::uint64_t>(r)).seed();
    futures.push_back(std::async(std::launch::async, [&data, c]() { return ecm_fit(data, c); }));
  }

  RestartSummary summary;
  summary.n_restarts = n_restarts;
  std::optional<FitResult> best;
  std::vector<std::string> failures;
  for (auto& f : futures) {
    try {
      FitResult fit = f.get();
      summary.logliks.push_back(fit.loglik());
      if (!best || fit.loglik() > best->loglik()) best = std::move(fit);
    } catch (const std::exception& e) {
      ++summary.n_failed;
      failures.emplace_back(e.what());
    }
  }
  if (!best) {
    std::string msg = "all restarts failed";
    if (!failures.empty()) msg += ": " + failures.front();
    throw NumericalError(msg);
  }
  best->restarts = std::move(summary);
  return std::move(*best);
}

}  // namespace moe
