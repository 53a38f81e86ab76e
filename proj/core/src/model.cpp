#include "moe/model.hpp"

namespace moe {

const char* family_name(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::gaussian_regression: return "gaussian-regression";
    case Family::binomial: return "binomial";
    case Family::plackett_luce: return "plackett-luce";
    case Family::markov: return "markov";
  }
  return "?";
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::a: return "a";
    case Variant::b: return "b";
    case Variant::c: return "c";
    case Variant::d: return "d";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "gaussian") return Family::gaussian;
  if (s == "gaussian-regression") return Family::gaussian_regression;
  if (s == "binomial") return Family::binomial;
  if (s == "plackett-luce") return Family::plackett_luce;
  if (s == "markov") return Family::markov;
  throw InputError("unknown family '" + s + "'");
}

Variant variant_from_name(const std::string& s) {
  if (s == "a") return Variant::a;
  if (s == "b") return Variant::b;
  if (s == "c") return Variant::c;
  if (s == "d") return Variant::d;
  throw InputError("unknown variant '" + s + "'");
}

int MEModelSpec::components() const {
  return std::visit([](const auto& v) { return static_cast<int>(v.size()); }, experts);
}

namespace {
OutcomeKind expected_kind(Family f) {
  switch (f) {
    case Family::gaussian:
    case Family::gaussian_regression: return OutcomeKind::continuous;
    case Family::binomial: return OutcomeKind::binomial_counts;
    case Family::plackett_luce: return OutcomeKind::rankings;
    case Family::markov: return OutcomeKind::categorical_series;
  }
  throw InputError("unknown family");
}
}  // namespace

void validate_model(const MEModelSpec& model, const Dataset& data) {
  const int G = model.components();
  if (G < 1) throw InputError("model needs at least one component");
  if (expected_kind(model.family) != data.kind)
    throw InputError(std::string("outcome type does not match family ") +
                     family_name(model.family));

  const bool cov_experts = model.experts_use_covariates();
  switch (model.family) {
    case Family::gaussian:
      if (cov_experts)
        throw InputError("gaussian family has no regression form; use gaussian-regression "
                         "for variants b/d");
      break;
    case Family::gaussian_regression:
      if (!cov_experts)
        throw InputError("gaussian-regression experts carry regression coefficients; "
                         "variants a/c require the gaussian family");
      if (data.dim() != 1) throw InputError("gaussian-regression requires univariate outcomes");
      break;
    case Family::binomial:
      if (cov_experts) throw InputError("binomial family has no regression form");
      break;
    case Family::plackett_luce: {
      const auto& ex = model.experts_as<PlackettLuceExpert>();
      for (const auto& e : ex) {
        if (cov_experts && !e.beta)
          throw InputError("variants b/d need covariate-linked Plackett-Luce supports");
        if (!cov_experts && e.beta)
          throw InputError("covariate-linked supports require variant b or d");
      }
      break;
    }
    case Family::markov: {
      const auto& ex = model.experts_as<MarkovChainExpert>();
      for (const auto& e : ex) {
        if (history_uses_covariate(e.history) != cov_experts)
          throw InputError(cov_experts
                               ? "variants b/d require a gender-conditioned history"
                               : "gender-conditioned histories require variant b or d");
      }
      break;
    }
  }

  if (model.uses_gating()) {
    if (model.gating.components() != G) throw InputError("gating component count mismatch");
    if (model.gating.n_coef() != data.design.cols())
      throw InputError("gating coefficient count does not match design");
    if (model.gating.gamma.row(0).cwiseAbs().maxCoeff() != 0.0)
      throw InputError("gating baseline row must be zero");
  } else {
    if (model.weights.size() != G) throw InputError("weight vector length mismatch");
    if (std::abs(model.weights.sum() - 1.0) > 1e-8 || (model.weights.array() < 0).any())
      throw InputError("weights must lie on the simplex");
  }
}

std::vector<MatrixXd> markov_count_tensors(const Dataset& data, HistorySpec spec) {
  std::vector<MatrixXd> counts;
  counts.reserve(data.n);
  for (int i = 0; i < data.n; ++i) {
    const double cov = history_uses_covariate(spec) ? data.covariates(i, 0) : 0.0;
    counts.push_back(markov_counts(data.series.row(i), spec, data.n_states, cov));
  }
  return counts;
}

double log_weight_term(const MEModelSpec& model, const Dataset& data, int i, int g) {
  if (model.uses_gating())
    return gating_log_probs(model.gating, data.design.row(i).transpose())[g];
  return std::log(model.weights[g]);
}

double log_expert_density(const MEModelSpec& model, const Dataset& data, int i, int g,
                          const std::vector<MatrixXd>* markov_cache) {
  switch (model.family) {
    case Family::gaussian:
      return gaussian_logpdf(data.continuous.row(i).transpose(),
                             model.experts_as<GaussianExpert>()[g]);
    case Family::gaussian_regression:
      return gaussian_regression_logpdf(data.continuous(i, 0), data.design.row(i).transpose(),
                                        model.experts_as<GaussianRegressionExpert>()[g]);
    case Family::binomial:
      return binomial_logpmf(data.counts[i], model.experts_as<BinomialExpert>()[g]);
    case Family::plackett_luce: {
      const auto& e = model.experts_as<PlackettLuceExpert>()[g];
      const VectorXd support = model.experts_use_covariates()
                                   ? plackett_luce_support_at(e, data.design.row(i).transpose())
                                   : e.support;
      return plackett_luce_logprob(data.rankings[i], support);
    }
    case Family::markov: {
      const auto& e = model.experts_as<MarkovChainExpert>()[g];
      if (markov_cache) return markov_logprob((*markov_cache)[i], e.xi);
      const double cov = history_uses_covariate(e.history) ? data.covariates(i, 0) : 0.0;
      return markov_logprob(markov_counts(data.series.row(i), e.history, data.n_states, cov),
                            e.xi);
    }
  }
  throw InputError("unknown family");
}

double log_joint_density(const MEModelSpec& model, const Dataset& data, int i, int g,
                         const std::vector<MatrixXd>* markov_cache) {
  return log_weight_term(model, data, i, g) +
         log_expert_density(model, data, i, g, markov_cache);
}

double joint_density(const MEModelSpec& model, const Dataset& data, int i, int g) {
  return std::exp(log_joint_density(model, data, i, g));
}

MatrixXd log_joint_matrix(const MEModelSpec& model, const Dataset& data,
                          const std::vector<MatrixXd>* markov_cache) {
  const int G = model.components();
  MatrixXd lj(data.n, G);
  if (model.uses_gating()) {
    for (int i = 0; i < data.n; ++i) {
      const VectorXd lw = gating_log_probs(model.gating, data.design.row(i).transpose());
      for (int g = 0; g < G; ++g)
        lj(i, g) = lw[g] + log_expert_density(model, data, i, g, markov_cache);
    }
  } else {
    const VectorXd lw = model.weights.array().log();
    for (int i = 0; i < data.n; ++i)
      for (int g = 0; g < G; ++g)
        lj(i, g) = lw[g] + log_expert_density(model, data, i, g, markov_cache);
  }
  return lj;
}

double log_likelihood(const MEModelSpec& model, const Dataset& data,
                      const std::vector<MatrixXd>* markov_cache) {
  const MatrixXd lj = log_joint_matrix(model, data, markov_cache);
  double ll = 0.0;
  for (int i = 0; i < data.n; ++i) {
    const double row = log_sum_exp(VectorXd(lj.row(i).transpose()));
    if (std::isnan(row) || row == std::numeric_limits<double>::infinity())
      throw NumericalError("non-finite mixture density at observation " + std::to_string(i));
    ll += row;
  }
  return ll;
}

namespace {
template <typename T>
std::vector<T> permute_vec(const std::vector<T>& v, const std::vector<int>& sigma) {
  std::vector<T> out(v.size());
  for (std::size_t g = 0; g < v.size(); ++g) out[g] = v[sigma[g]];
  return out;
}
}  // namespace

MEModelSpec relabel_model(const MEModelSpec& model, const std::vector<int>& sigma) {
  check_permutation(sigma, model.components());
  MEModelSpec out = model;
  out.experts = std::visit(
      [&](const auto& v) { return ExpertSet(permute_vec(v, sigma)); }, model.experts);
  if (model.uses_gating()) {
    out.gating = relabel_gating(model.gating, sigma);
  } else {
    VectorXd w(model.weights.size());
    for (int g = 0; g < model.components(); ++g) w[g] = model.weights[sigma[g]];
    out.weights = w;
  }
  return out;
}

Allocation relabel_allocation(const Allocation& z, const std::vector<int>& sigma) {
  const std::vector<int> inv = invert_permutation(sigma);
  Allocation out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = inv[z[i]];
  return out;
}

}  // namespace moe
