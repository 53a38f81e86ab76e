#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace moe {

using Eigen::MatrixXd;
using Eigen::MatrixXi;
using Eigen::VectorXd;
using Eigen::VectorXi;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Bad user input (malformed files, inconsistent options). CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure during estimation (degenerate components, underflow
/// of every component density, singular information). CLI exit code 1.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// log(sum_k exp(x_k)) with max subtraction; -inf entries are ignored.
inline double log_sum_exp(const VectorXd& x) {
  const double m = x.maxCoeff();
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) s += std::exp(x[k] - m);
  return m + std::log(s);
}

inline double log_sum_exp(const std::vector<double>& x) {
  return log_sum_exp(Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
}

/// Numerically stable log of the binomial coefficient.
inline double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline double logit(double p) { return std::log(p) - std::log1p(-p); }
inline double inv_logit(double x) {
  return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace moe
