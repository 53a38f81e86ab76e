#include "moe/params.hpp"

namespace moe {

namespace {

struct Packer {
  std::vector<double> vals;
  std::vector<std::string> names;
  void push(double v, std::string name) {
    vals.push_back(v);
    names.push_back(std::move(name));
  }
};

std::string idx(const std::string& base, int g) { return base + "[" + std::to_string(g + 1) + "]"; }

void pack_experts(const MEModelSpec& m, Packer& p) {
  const int G = m.components();
  switch (m.family) {
    case Family::gaussian: {
      const auto& ex = m.experts_as<GaussianExpert>();
      for (int g = 0; g < G; ++g) {
        const int d = static_cast<int>(ex[g].mu.size());
        for (int k = 0; k < d; ++k)
          p.push(ex[g].mu[k], idx("mu", g) + "[" + std::to_string(k + 1) + "]");
        for (int i = 0; i < d; ++i)
          for (int j = 0; j <= i; ++j)
            p.push(ex[g].sigma(i, j), idx("sigma", g) + "[" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + "]");
      }
      break;
    }
    case Family::gaussian_regression: {
      const auto& ex = m.experts_as<GaussianRegressionExpert>();
      for (int g = 0; g < G; ++g) {
        for (int k = 0; k < ex[g].beta.size(); ++k)
          p.push(ex[g].beta[k], idx("beta", g) + "[" + std::to_string(k) + "]");
        p.push(ex[g].sigma2, idx("sigma2", g));
      }
      break;
    }
    case Family::binomial: {
      const auto& ex = m.experts_as<BinomialExpert>();
      for (int g = 0; g < G; ++g) p.push(ex[g].pi, idx("pi", g));
      break;
    }
    case Family::plackett_luce: {
      const auto& ex = m.experts_as<PlackettLuceExpert>();
      for (int g = 0; g < G; ++g) {
        if (ex[g].beta) {
          const MatrixXd& b = *ex[g].beta;
          for (int j = 1; j < b.rows(); ++j)
            for (int k = 0; k < b.cols(); ++k)
              p.push(b(j, k), idx("plbeta", g) + "[" + std::to_string(j + 1) + "," +
                                  std::to_string(k) + "]");
        } else {
          for (int j = 0; j + 1 < ex[g].support.size(); ++j)
            p.push(ex[g].support[j], idx("support", g) + "[" + std::to_string(j + 1) + "]");
        }
      }
      break;
    }
    case Family::markov: {
      const auto& ex = m.experts_as<MarkovChainExpert>();
      for (int g = 0; g < G; ++g)
        for (int j = 0; j < ex[g].xi.rows(); ++j)
          for (int k = 0; k + 1 < ex[g].xi.cols(); ++k)
            p.push(ex[g].xi(j, k), idx("xi", g) + "[" + std::to_string(j + 1) + "," +
                                       std::to_string(k + 1) + "]");
      break;
    }
  }
}

void pack_weights(const MEModelSpec& m, Packer& p) {
  const int G = m.components();
  if (m.uses_gating()) {
    for (int g = 1; g < G; ++g)
      for (int k = 0; k < m.gating.n_coef(); ++k)
        p.push(m.gating.gamma(g, k), idx("gamma", g) + "[" + std::to_string(k) + "]");
  } else {
    for (int g = 0; g + 1 < G; ++g) p.push(m.weights[g], idx("eta", g));
  }
}

}  // namespace

VectorXd pack_params(const MEModelSpec& model) {
  Packer p;
  pack_experts(model, p);
  pack_weights(model, p);
  return Eigen::Map<VectorXd>(p.vals.data(), static_cast<Eigen::Index>(p.vals.size()));
}

std::vector<std::string> param_names(const MEModelSpec& model) {
  Packer p;
  pack_experts(model, p);
  pack_weights(model, p);
  return p.names;
}

int free_param_count(const MEModelSpec& model) {
  return static_cast<int>(pack_params(model).size());
}

MEModelSpec unpack_params(const MEModelSpec& tmpl, const VectorXd& theta) {
  MEModelSpec m = tmpl;
  const int G = m.components();
  Eigen::Index pos = 0;
  auto take = [&]() { return theta[pos++]; };

  switch (m.family) {
    case Family::gaussian: {
      auto& ex = m.experts_as<GaussianExpert>();
      for (int g = 0; g < G; ++g) {
        const int d = static_cast<int>(ex[g].mu.size());
        for (int k = 0; k < d; ++k) ex[g].mu[k] = take();
        for (int i = 0; i < d; ++i)
          for (int j = 0; j <= i; ++j) {
            const double v = take();
            ex[g].sigma(i, j) = v;
            ex[g].sigma(j, i) = v;
          }
      }
      break;
    }
    case Family::gaussian_regression: {
      auto& ex = m.experts_as<GaussianRegressionExpert>();
      for (int g = 0; g < G; ++g) {
        for (int k = 0; k < ex[g].beta.size(); ++k) ex[g].beta[k] = take();
        ex[g].sigma2 = take();
      }
      break;
    }
    case Family::binomial: {
      auto& ex = m.experts_as<BinomialExpert>();
      for (int g = 0; g < G; ++g) ex[g].pi = take();
      break;
    }
    case Family::plackett_luce: {
      auto& ex = m.experts_as<PlackettLuceExpert>();
      for (int g = 0; g < G; ++g) {
        if (ex[g].beta) {
          MatrixXd& b = *ex[g].beta;
          for (int j = 1; j < b.rows(); ++j)
            for (int k = 0; k < b.cols(); ++k) b(j, k) = take();
        } else {
          double head = 0.0;
          for (int j = 0; j + 1 < ex[g].support.size(); ++j) {
            ex[g].support[j] = take();
            head += ex[g].support[j];
          }
          ex[g].support[ex[g].support.size() - 1] = 1.0 - head;
        }
      }
      break;
    }
    case Family::markov: {
      auto& ex = m.experts_as<MarkovChainExpert>();
      for (int g = 0; g < G; ++g)
        for (int j = 0; j < ex[g].xi.rows(); ++j) {
          double head = 0.0;
          for (int k = 0; k + 1 < ex[g].xi.cols(); ++k) {
            ex[g].xi(j, k) = take();
            head += ex[g].xi(j, k);
          }
          ex[g].xi(j, ex[g].xi.cols() - 1) = 1.0 - head;
        }
      break;
    }
  }

  if (m.uses_gating()) {
    for (int g = 1; g < G; ++g)
      for (int k = 0; k < m.gating.n_coef(); ++k) m.gating.gamma(g, k) = take();
    m.gating.gamma.row(0).setZero();
  } else {
    double head = 0.0;
    for (int g = 0; g + 1 < G; ++g) {
      m.weights[g] = take();
      head += m.weights[g];
    }
    m.weights[G - 1] = 1.0 - head;
  }

  if (pos != theta.size()) throw InputError("parameter vector length mismatch");
  return m;
}

}  // namespace moe
