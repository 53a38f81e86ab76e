#pragma once

#include <vector>

#include "moe/common.hpp"

namespace moe {

enum class OutcomeKind { continuous, rankings, categorical_series, binomial_counts };

/// Observations plus covariates. The intercept column of the design matrix
/// is synthesized here from the raw covariates and is never user supplied.
/// Immutable after construction.
struct Dataset {
  OutcomeKind kind;
  int n = 0;

  // continuous outcomes, n x d
  MatrixXd continuous;

  // ranked ballots: 1-based candidate ids, distinct within a ballot, length m_i <= M
  std::vector<std::vector<int>> rankings;
  int n_candidates = 0;

  // categorical series, n x (series_len + 1), states 1..n_states
  MatrixXi series;
  int n_states = 0;

  // binomial counts, 0..trials
  std::vector<int> counts;
  int trials = 0;

  MatrixXd covariates;  // n x q, raw
  MatrixXd design;      // n x (q+1), column 0 all ones

  int q() const { return static_cast<int>(covariates.cols()); }
  int dim() const { return static_cast<int>(continuous.cols()); }
  int series_len() const { return static_cast<int>(series.cols()) - 1; }

  static Dataset make_continuous(MatrixXd y, MatrixXd x = MatrixXd());
  static Dataset make_rankings(std::vector<std::vector<int>> ballots, int n_candidates,
                               MatrixXd x = MatrixXd());
  static Dataset make_series(MatrixXi series, int n_states, MatrixXd x = MatrixXd());
  static Dataset make_binomial(std::vector<int> counts, int trials, MatrixXd x = MatrixXd());

  /// Replaces the covariates (and rebuilds the design) on a copy.
  Dataset with_covariates(MatrixXd x) const;
};

/// (1 | x): prepends the intercept column.
MatrixXd make_design(const MatrixXd& covariates, int n);

}  // namespace moe
