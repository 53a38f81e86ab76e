#pragma once

#include <variant>
#include <vector>

#include "moe/dataset.hpp"
#include "moe/experts.hpp"
#include "moe/gating.hpp"

namespace moe {

enum class Family { gaussian, gaussian_regression, binomial, plackett_luce, markov };

/// The four-model taxonomy: (a) mixture, (b) mixture of regressions,
/// (c) simple mixture of experts, (d) mixture of experts regression.
/// Covariates enter the experts for b/d and the weights for c/d.
enum class Variant { a, b, c, d };

const char* family_name(Family f);
const char* variant_name(Variant v);
Family family_from_name(const std::string& s);
Variant variant_from_name(const std::string& s);

using ExpertSet =
    std::variant<std::vector<GaussianExpert>, std::vector<GaussianRegressionExpert>,
                 std::vector<BinomialExpert>, std::vector<PlackettLuceExpert>,
                 std::vector<MarkovChainExpert>>;

/// Component indices for every observation (0-based).
using Allocation = std::vector<int>;

struct MEModelSpec {
  Variant variant;
  Family family;
  VectorXd weights;  // variants a/b: covariate-free weights on the simplex
  Gating gating;     // variants c/d
  ExpertSet experts;

  int components() const;
  bool uses_gating() const { return variant == Variant::c || variant == Variant::d; }
  bool experts_use_covariates() const {
    return variant == Variant::b || variant == Variant::d;
  }

  template <typename T>
  const std::vector<T>& experts_as() const {
    return std::get<std::vector<T>>(experts);
  }
  template <typename T>
  std::vector<T>& experts_as() {
    return std::get<std::vector<T>>(experts);
  }
};

/// Checks family/variant/outcome compatibility; throws InputError.
void validate_model(const MEModelSpec& model, const Dataset& data);

/// Per-series transition count tensors (cached by EM/MCMC loops).
std::vector<MatrixXd> markov_count_tensors(const Dataset& data, HistorySpec spec);

/// log of the weight term: log eta_g (a/b) or log eta_g(x_i) (c/d).
double log_weight_term(const MEModelSpec& model, const Dataset& data, int i, int g);

/// log f_g(y_i | theta_g) resp. log f_g(y_i | theta_g(x_i)).
double log_expert_density(const MEModelSpec& model, const Dataset& data, int i, int g,
                          const std::vector<MatrixXd>* markov_cache = nullptr);

/// Variant-correct factorization p(y_i, z_i=g | x_i), log scale.
double log_joint_density(const MEModelSpec& model, const Dataset& data, int i, int g,
                         const std::vector<MatrixXd>* markov_cache = nullptr);

/// exp(log_joint_density); summing over g gives the mixture density.
double joint_density(const MEModelSpec& model, const Dataset& data, int i, int g);

/// n x G matrix of log joint densities.
MatrixXd log_joint_matrix(const MEModelSpec& model, const Dataset& data,
                          const std::vector<MatrixXd>* markov_cache = nullptr);

/// Observed-data log likelihood, sum_i log sum_g, via log-sum-exp.
/// Throws NumericalError naming the first non-finite row.
double log_likelihood(const MEModelSpec& model, const Dataset& data,
                      const std::vector<MatrixXd>* markov_cache = nullptr);

/// Relabels the whole model under sigma (sigma[g] = source component of
/// new label g): experts and weights are permuted, gating coefficients go
/// through relabel_gating. The observed-data likelihood is invariant.
MEModelSpec relabel_model(const MEModelSpec& model, const std::vector<int>& sigma);

/// Relabels an allocation consistently with relabel_model.
Allocation relabel_allocation(const Allocation& z, const std::vector<int>& sigma);

}  // namespace moe
