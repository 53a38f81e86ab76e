#include "moe/dataset.hpp"

#include <set>

namespace moe {

MatrixXd make_design(const MatrixXd& covariates, int n) {
  MatrixXd d(n, covariates.cols() + 1);
  d.col(0).setOnes();
  if (covariates.cols() > 0) d.rightCols(covariates.cols()) = covariates;
  return d;
}

namespace {
void attach_covariates(Dataset& ds, MatrixXd x) {
  if (x.size() == 0) x = MatrixXd(ds.n, 0);
  if (x.rows() != ds.n)
    throw InputError("covariate rows (" + std::to_string(x.rows()) +
                     ") do not match observation count (" + std::to_string(ds.n) + ")");
  ds.covariates = std::move(x);
  ds.design = make_design(ds.covariates, ds.n);
}
}  // namespace

Dataset Dataset::make_continuous(MatrixXd y, MatrixXd x) {
  Dataset ds;
  ds.kind = OutcomeKind::continuous;
  ds.n = static_cast<int>(y.rows());
  if (ds.n == 0 || y.cols() == 0) throw InputError("continuous outcomes must be non-empty");
  ds.continuous = std::move(y);
  attach_covariates(ds, std::move(x));
  return ds;
}

Dataset Dataset::make_rankings(std::vector<std::vector<int>> ballots, int n_candidates,
                               MatrixXd x) {
  Dataset ds;
  ds.kind = OutcomeKind::rankings;
  ds.n = static_cast<int>(ballots.size());
  if (ds.n == 0) throw InputError("no ballots");
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const auto& b = ballots[i];
    if (b.empty() || static_cast<int>(b.size()) > n_candidates)
      throw InputError("ballot " + std::to_string(i) + " has invalid length");
    std::set<int> seen;
    for (int c : b) {
      if (c < 1 || c > n_candidates)
        throw InputError("ballot " + std::to_string(i) + " ranks unknown candidate " +
                         std::to_string(c));
      if (!seen.insert(c).second)
        throw InputError("ballot " + std::to_string(i) + " ranks candidate " +
                         std::to_string(c) + " twice");
    }
  }
  ds.rankings = std::move(ballots);
  ds.n_candidates = n_candidates;
  attach_covariates(ds, std::move(x));
  return ds;
}

Dataset Dataset::make_series(MatrixXi series, int n_states, MatrixXd x) {
  Dataset ds;
  ds.kind = OutcomeKind::categorical_series;
  ds.n = static_cast<int>(series.rows());
  if (ds.n == 0 || series.cols() < 2)
    throw InputError("categorical series need at least two time points");
  for (int i = 0; i < ds.n; ++i)
    for (int t = 0; t < series.cols(); ++t)
      if (series(i, t) < 1 || series(i, t) > n_states)
        throw InputError("series " + std::to_string(i) + " has state " +
                         std::to_string(series(i, t)) + " outside 1.." +
                         std::to_string(n_states));
  ds.series = std::move(series);
  ds.n_states = n_states;
  attach_covariates(ds, std::move(x));
  return ds;
}

Dataset Dataset::make_binomial(std::vector<int> counts, int trials, MatrixXd x) {
  Dataset ds;
  ds.kind = OutcomeKind::binomial_counts;
  ds.n = static_cast<int>(counts.size());
  if (ds.n == 0) throw InputError("no binomial counts");
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] < 0 || counts[i] > trials)
      throw InputError("count " + std::to_string(counts[i]) + " at row " + std::to_string(i) +
                       " outside 0.." + std::to_string(trials));
  ds.counts = std::move(counts);
  ds.trials = trials;
  attach_covariates(ds, std::move(x));
  return ds;
}

Dataset Dataset::with_covariates(MatrixXd x) const {
  Dataset ds = *this;
  attach_covariates(ds, std::move(x));
  return ds;
}

}  // namespace moe
