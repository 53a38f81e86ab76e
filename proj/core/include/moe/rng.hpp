#pragma once

#include <cstdint>
#include <random>

#include "moe/common.hpp"

namespace moe {

/// Seeded random generator handle. Callers own the stream; library code
/// never keeps hidden generator state. Independent sub-streams are derived
/// with split(), which hashes (seed, stream id) through splitmix64 so that
/// restart r of a multi-start or chain c of a multi-chain run is
/// reproducible in isolation.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::uint64_t stream) const;

  double uniform() { return unif_(engine_); }
  double normal() { return norm_(engine_); }
  double gamma(double shape, double scale = 1.0);
  double exponential(double rate);
  double chi_squared(double dof) { return gamma(dof / 2.0, 2.0); }
  double beta(double a, double b);

  /// Index in [0, n).
  int uniform_int(int n);

  VectorXd normal_vector(Eigen::Index n);
  VectorXd dirichlet(const VectorXd& alpha);

  /// Index draw from unnormalized probabilities.
  int categorical(const VectorXd& probs);
  /// Index draw from unnormalized log probabilities.
  int categorical_log(const VectorXd& logp);

  /// Uniform permutation of {0, .., n-1} (Fisher-Yates).
  std::vector<int> permutation(int n);

  std::mt19937_64& engine() { return engine_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
  std::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace moe
