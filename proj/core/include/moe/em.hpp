#pragma once

#include <cstdint>
#include <optional>

#include "moe/model.hpp"
#include "moe/params.hpp"
#include "moe/rng.hpp"

namespace moe {

/// Posterior component membership probabilities, rows on the simplex.
struct Responsibilities {
  MatrixXd zhat;  // n x G
};

struct EmConfig {
  Variant variant = Variant::a;
  Family family = Family::gaussian;
  int components = 1;
  double tol = 1e-8;
  int max_iter = 500;
  std::uint64_t seed = 1;
  HistorySpec history = HistorySpec::prev;  // markov family
  std::optional<MEModelSpec> init_model;    // overrides the default initialization
  std::optional<MatrixXd> init_resp;
};

struct RestartSummary {
  int n_restarts = 0;
  int n_failed = 0;
  std::vector<double> logliks;  // per successful restart, restart order
};

struct FitResult {
  MEModelSpec model;
  std::vector<double> loglik_trace;  // nondecreasing up to 1e-8 slack
  MatrixXd responsibilities;
  Allocation map_assignment;  // ties broken toward the lowest index
  VectorXd std_errors;        // empty until standard_errors() is applied
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;
  RestartSummary restarts;

  double loglik() const { return loglik_trace.empty() ? kNegInf : loglik_trace.back(); }
};

/// zhat_ig proportional to weight term times expert density, normalized per
/// row in log space. Throws NumericalError naming the observation whose
/// densities all underflow.
Responsibilities e_step(const MEModelSpec& model, const Dataset& data,
                        const std::vector<MatrixXd>* markov_cache = nullptr);

struct GatingMStepResult {
  Gating gating;
  double objective;        // weighted multinomial log likelihood at exit
  bool separation = false; // some coefficient sits at the cap
  int iterations = 0;
};

/// Newton-Raphson ascent of the gating part of the Q function with step
/// halving; coefficients are boxed at +-coef_cap (complete-separation
/// guard). The exit objective never falls below the entry objective.
GatingMStepResult m_step_gating(const MatrixXd& resp, const MatrixXd& design,
                                const Gating& init, double coef_cap = 30.0,
                                int max_iter = 200);

double gating_objective(const Gating& gating, const MatrixXd& resp, const MatrixXd& design);

/// ECM: E step, then conditional maximization of the experts, then of the
/// gating/weights, until the log-likelihood change drops below tol.
FitResult ecm_fit(const Dataset& data, const EmConfig& config);

struct StdErrorResult {
  VectorXd se;                      // NaN when unavailable
  std::vector<std::string> names;
  int rank = 0;
  bool available = false;
};

/// Empirical-information standard errors: I_e = sum_i s_i s_i^T with
/// per-observation scores of the observed-data log likelihood by central
/// finite differences, step 1e-6 * (1 + |param|).
StdErrorResult standard_errors(const FitResult& fit, const Dataset& data);

/// Per-observation finite-difference score matrix (n x P).
MatrixXd per_observation_scores(const MEModelSpec& model, const Dataset& data);

/// Best-by-loglik fit over seeded random restarts; deterministic for a
/// fixed seed (ties resolved toward the earliest restart).
FitResult multi_start(const Dataset& data, const EmConfig& config, int n_restarts, Rng& rng);

}  // namespace moe
