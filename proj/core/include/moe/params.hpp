#pragma once

#include <string>
#include <vector>

#include "moe/model.hpp"

namespace moe {

/// Flattened free-parameter view of a model. Layout, per component g in
/// order: expert block (gaussian: mu then lower triangle of sigma;
/// regression: beta then sigma2; binomial: pi; plackett-luce: support
/// without its last entry, or the non-baseline candidate coefficient rows
/// when covariate-linked; markov: each xi row without its last entry);
/// then the weight block (eta without its last entry for variants a/b,
/// gamma rows 2..G for c/d). Simplex and row-stochastic blocks drop one
/// coordinate, so size() is exactly the free parameter count used by BIC.
VectorXd pack_params(const MEModelSpec& model);

/// Rebuilds a model from a packed vector using `tmpl` for structure.
MEModelSpec unpack_params(const MEModelSpec& tmpl, const VectorXd& theta);

std::vector<std::string> param_names(const MEModelSpec& model);

int free_param_count(const MEModelSpec& model);

}  // namespace moe
