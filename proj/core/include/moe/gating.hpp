#pragma once

#include <vector>

#include "moe/common.hpp"

namespace moe {

/// Multinomial-logit gating network. Row g of gamma holds the coefficients
/// of component g against the baseline component (index 0), whose row is
/// identically zero.
struct Gating {
  MatrixXd gamma;  // G x (q+1), row 0 == 0

  int components() const { return static_cast<int>(gamma.rows()); }
  int n_coef() const { return static_cast<int>(gamma.cols()); }

  static Gating zero(int G, int n_coef) {
    Gating g;
    g.gamma = MatrixXd::Zero(G, n_coef);
    return g;
  }
};

/// Mixing weights eta_g(x) = exp(x~ gamma_g) / sum_g' exp(x~ gamma_g').
/// Strictly positive, sums to 1; computed with max subtraction.
VectorXd gating_probs(const Gating& gating, const VectorXd& x_tilde);

/// log eta_g(x) for all g.
VectorXd gating_log_probs(const Gating& gating, const VectorXd& x_tilde);

/// Row-wise gating probabilities for a whole design matrix, n x G.
MatrixXd gating_probs_matrix(const Gating& gating, const MatrixXd& design);

/// Relabels the coefficients under a component permutation sigma
/// (sigma[g] = source component of new label g):
/// gamma*_g = gamma_{sigma(g)} - gamma_{sigma(0)}, so that
/// eta*_g(x) = eta_{sigma(g)}(x) for all x and the baseline row stays zero.
Gating relabel_gating(const Gating& gating, const std::vector<int>& sigma);

/// Throws unless sigma is a bijection on {0..G-1}.
void check_permutation(const std::vector<int>& sigma, int G);

/// sigma^{-1}.
std::vector<int> invert_permutation(const std::vector<int>& sigma);

}  // namespace moe
