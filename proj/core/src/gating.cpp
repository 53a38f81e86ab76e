#include "moe/gating.hpp"

namespace moe {

VectorXd gating_log_probs(const Gating& gating, const VectorXd& x_tilde) {
  if (x_tilde.size() != gating.gamma.cols())
    throw InputError("design vector length " + std::to_string(x_tilde.size()) +
                     " does not match gating coefficient count " +
                     std::to_string(gating.gamma.cols()));
  VectorXd lin = gating.gamma * x_tilde;
  const double lse = log_sum_exp(lin);
  return lin.array() - lse;
}

VectorXd gating_probs(const Gating& gating, const VectorXd& x_tilde) {
  return gating_log_probs(gating, x_tilde).array().exp();
}

MatrixXd gating_probs_matrix(const Gating& gating, const MatrixXd& design) {
  MatrixXd out(design.rows(), gating.components());
  for (Eigen::Index i = 0; i < design.rows(); ++i)
    out.row(i) = gating_probs(gating, design.row(i).transpose()).transpose();
  return out;
}

void check_permutation(const std::vector<int>& sigma, int G) {
  if (static_cast<int>(sigma.size()) != G)
    throw InputError("permutation has size " + std::to_string(sigma.size()) + ", expected " +
                     std::to_string(G));
  std::vector<bool> seen(G, false);
  for (int s : sigma) {
    if (s < 0 || s >= G || seen[s]) throw InputError("not a permutation of 0..G-1");
    seen[s] = true;
  }
}

std::vector<int> invert_permutation(const std::vector<int>& sigma) {
  std::vector<int> inv(sigma.size());
  for (std::size_t g = 0; g < sigma.size(); ++g) inv[sigma[g]] = static_cast<int>(g);
  return inv;
}

Gating relabel_gating(const Gating& gating, const std::vector<int>& sigma) {
  const int G = gating.components();
  check_permutation(sigma, G);
  Gating out;
  out.gamma.resize(G, gating.gamma.cols());
  const VectorXd base = gating.gamma.row(sigma[0]);
  for (int g = 0; g < G; ++g)
    out.gamma.row(g) = gating.gamma.row(sigma[g]) - base.transpose();
  out.gamma.row(0).setZero();
  return out;
}

}  // namespace moe
