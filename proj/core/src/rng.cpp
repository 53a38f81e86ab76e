#include "moe/rng.hpp"

namespace moe {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

double Rng::gamma(double shape, double scale) {
  std::gamma_distribution<double> d(shape, scale);
  return d(engine_);
}

double Rng::exponential(double rate) {
  std::exponential_distribution<double> d(rate);
  return d(engine_);
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

int Rng::uniform_int(int n) {
  std::uniform_int_distribution<int> d(0, n - 1);
  return d(engine_);
}

VectorXd Rng::normal_vector(Eigen::Index n) {
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

VectorXd Rng::dirichlet(const VectorXd& alpha) {
  VectorXd v(alpha.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    v[i] = gamma(alpha[i]);
    s += v[i];
  }
  if (s <= 0.0) {  // all-zero gamma draws only happen for tiny alphas
    v.setConstant(1.0 / static_cast<double>(alpha.size()));
    return v;
  }
  return v / s;
}

int Rng::categorical(const VectorXd& probs) {
  const double total = probs.sum();
  double u = uniform() * total;
  for (Eigen::Index g = 0; g < probs.size(); ++g) {
    u -= probs[g];
    if (u <= 0.0) return static_cast<int>(g);
  }
  return static_cast<int>(probs.size() - 1);
}

int Rng::categorical_log(const VectorXd& logp) {
  const double m = logp.maxCoeff();
  VectorXd p = (logp.array() - m).exp();
  return categorical(p);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = uniform_int(i + 1);
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace moe
