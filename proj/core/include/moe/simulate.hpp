#pragma once

#include "moe/model.hpp"
#include "moe/rng.hpp"

namespace moe {

struct SimResult {
  Dataset data;
  Allocation truth;  // generating component of each observation
};

/// Draws z_i from the weights (a/b) or from the gating network at x_i
/// (c/d), then y_i from the allocated expert. The covariate matrix fixes
/// n; pass an n x 0 matrix when the model uses no covariates.
SimResult simulate(const MEModelSpec& model, const MatrixXd& covariates, Rng& rng);

SimResult simulate(const MEModelSpec& model, int n, Rng& rng);

/// Markov series length (number of transitions) used by simulate; the
/// initial state is uniform on 1..K.
SimResult simulate_markov(const MEModelSpec& model, const MatrixXd& covariates,
                          int series_len, Rng& rng);

}  // namespace moe
