#include "moe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moe {

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

// ---------------------------------------------------------------------------
// k-means
// ---------------------------------------------------------------------------

namespace {

MatrixXd kmeanspp_init(const MatrixXd& pts, int k, Rng& rng) {
  const Eigen::Index n = pts.rows();
  MatrixXd centers(k, pts.cols());
  centers.row(0) = pts.row(rng.uniform_int(static_cast<int>(n)));
  VectorXd d2 = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        u -= d2[i];
        if (u <= 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_int(static_cast<int>(n));
    }
    centers.row(c) = pts.row(pick);
    d2 = d2.cwiseMin((pts.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(const MatrixXd& points, int k, Rng& rng, int n_init, int max_iter) {
  const Eigen::Index n = points.rows();
  if (k < 1 || n < k) throw InputError("k-means needs at least k points");

  KMeansResult best;
  best.within_ss = std::numeric_limits<double>::infinity();

  for (int init = 0; init < n_init; ++init) {
    MatrixXd centers = kmeanspp_init(points, k, rng);
    std::vector<int> labels(n, 0);
    double ss = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
      bool changed = false;
      ss = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        int arg = 0;
        double bestd = (points.row(i) - centers.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
          const double d = (points.row(i) - centers.row(c)).squaredNorm();
          if (d < bestd) {
            bestd = d;
            arg = c;
          }
        }
        if (labels[i] != arg) changed = true;
        labels[i] = arg;
        ss += bestd;
      }
      MatrixXd sums = MatrixXd::Zero(k, points.cols());
      VectorXd cnt = VectorXd::Zero(k);
      for (Eigen::Index i = 0; i < n; ++i) {
        sums.row(labels[i]) += points.row(i);
        cnt[labels[i]] += 1.0;
      }
      for (int c = 0; c < k; ++c) {
        if (cnt[c] > 0.0) {
          centers.row(c) = sums.row(c) / cnt[c];
        } else {
          // reseed empty cluster at the farthest point
          Eigen::Index far = 0;
          double fd = -1.0;
          for (Eigen::Index i = 0; i < n; ++i) {
            const double d = (points.row(i) - centers.row(labels[i])).squaredNorm();
            if (d > fd) {
              fd = d;
              far = i;
            }
          }
          centers.row(c) = points.row(far);
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (ss < best.within_ss) {
      best.centers = centers;
      best.labels = labels;
      best.within_ss = ss;
    }
  }
  return best;
}

double silhouette_score(const MatrixXd& points, const std::vector<int>& labels, int k,
                        Rng& rng, int max_points) {
  Eigen::Index n = points.rows();
  std::vector<Eigen::Index> use(n);
  std::iota(use.begin(), use.end(), 0);
  if (n > max_points) {
    const std::vector<int> perm = rng.permutation(static_cast<int>(n));
    use.assign(perm.begin(), perm.begin() + max_points);
    n = max_points;
  }

  std::vector<double> sil;
  sil.reserve(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    std::vector<double> dist_sum(k, 0.0);
    std::vector<int> cnt(k, 0);
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a == b) continue;
      const double d = (points.row(use[a]) - points.row(use[b])).norm();
      dist_sum[labels[use[b]]] += d;
      ++cnt[labels[use[b]]];
    }
    const int own = labels[use[a]];
    if (cnt[own] == 0) continue;  // singleton cluster contributes nothing
    const double ai = dist_sum[own] / cnt[own];
    double bi = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own || cnt[c] == 0) continue;
      bi = std::min(bi, dist_sum[c] / cnt[c]);
    }
    if (!std::isfinite(bi)) continue;
    sil.push_back((bi - ai) / std::max(ai, bi));
  }
  return sil.empty() ? 0.0 : mean(sil);
}

// ---------------------------------------------------------------------------
// unimodality score
// ---------------------------------------------------------------------------

namespace {

// Max gap between the mid-step empirical CDF of x[0..m] and its greatest
// convex minorant, for every prefix end m. Monotone-stack lower hull,
// rebuilt gap scan per prefix.
std::vector<double> prefix_convex_gaps(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = (i + 0.5) / n;

  std::vector<double> gaps(n, 0.0);
  std::vector<int> hull;  // indices of lower-hull vertices
  for (int m = 0; m < n; ++m) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // drop b if it lies above segment a..m
      const double cross = (x[b] - x[a]) * (f[m] - f[a]) - (f[b] - f[a]) * (x[m] - x[a]);
      if (cross >= 0.0) break;
      hull.pop_back();
    }
    hull.push_back(m);
    double gap = 0.0;
    std::size_t seg = 0;
    for (int i = 0; i <= m; ++i) {
      while (seg + 1 < hull.size() && x[hull[seg + 1]] < x[i]) ++seg;
      double fit;
      if (seg + 1 >= hull.size()) {
        fit = f[hull[seg]];
      } else {
        const int a = hull[seg], b = hull[seg + 1];
        const double dx = x[b] - x[a];
        fit = dx > 0.0 ? f[a] + (f[b] - f[a]) * (x[i] - x[a]) / dx : f[a];
      }
      gap = std::max(gap, f[i] - fit);
    }
    gaps[m] = gap;
  }
  return gaps;
}

}  // namespace

double dip_score(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const int n = static_cast<int>(x.size());
  if (n < 4) return 0.0;

  const std::vector<double> left = prefix_convex_gaps(x);

  // concave-majorant gaps of suffixes == convex gaps of the reflected sample
  std::vector<double> xr(n);
  for (int i = 0; i < n; ++i) xr[i] = -x[n - 1 - i];
  const std::vector<double> rgaps = prefix_convex_gaps(xr);
  std::vector<double> right(n);
  for (int m = 0; m < n; ++m) right[m] = rgaps[n - 1 - m];

  double best = std::numeric_limits<double>::infinity();
  for (int m = 0; m < n; ++m) best = std::min(best, std::max(left[m], right[m]));
  return 0.5 * best;
}

double dip_pvalue(const std::vector<double>& x, Rng& rng, int n_boot, int subsample) {
  std::vector<double> sample = x;
  if (static_cast<int>(sample.size()) > subsample) {
    const std::vector<int> perm = rng.permutation(static_cast<int>(sample.size()));
    std::vector<double> sub(subsample);
    for (int i = 0; i < subsample; ++i) sub[i] = sample[perm[i]];
    sample = std::move(sub);
  }
  const double observed = dip_score(sample);
  const int n = static_cast<int>(sample.size());
  int exceed = 0;
  std::vector<double> null_sample(n);
  for (int b = 0; b < n_boot; ++b) {
    for (int i = 0; i < n; ++i) null_sample[i] = rng.uniform();
    if (dip_score(null_sample) >= observed) ++exceed;
  }
  return (1.0 + exceed) / (1.0 + n_boot);
}

// ---------------------------------------------------------------------------
// interval and MC helpers
// ---------------------------------------------------------------------------

Interval hpd_interval(std::vector<double> draws, double mass) {
  if (draws.empty()) throw InputError("no draws");
  std::sort(draws.begin(), draws.end());
  const int n = static_cast<int>(draws.size());
  const int span = std::max(1, static_cast<int>(std::ceil(mass * n)) - 1);
  Interval best{draws.front(), draws.back()};
  double width = best.hi - best.lo;
  for (int i = 0; i + span < n; ++i) {
    const double w = draws[i + span] - draws[i];
    if (w < width) {
      width = w;
      best = {draws[i], draws[i + span]};
    }
  }
  return best;
}

double batch_means_se(const std::vector<double>& x, int n_batches) {
  const int n = static_cast<int>(x.size());
  if (n < 2 * n_batches) n_batches = std::max(2, n / 2);
  const int len = n / n_batches;
  std::vector<double> bm;
  for (int b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (int i = b * len; i < (b + 1) * len; ++i) s += x[i];
    bm.push_back(s / len);
  }
  return std::sqrt(variance(bm) / n_batches);
}

double potential_scale_reduction(const std::vector<std::vector<double>>& chains) {
  // split each chain in half
  std::vector<std::vector<double>> halves;
  for (const auto& c : chains) {
    const int h = static_cast<int>(c.size()) / 2;
    if (h < 2) throw InputError("chains too short for PSR");
    halves.emplace_back(c.begin(), c.begin() + h);
    halves.emplace_back(c.begin() + h, c.begin() + 2 * h);
  }
  const int m = static_cast<int>(halves.size());
  const int nn = static_cast<int>(halves[0].size());
  std::vector<double> means(m), vars(m);
  for (int j = 0; j < m; ++j) {
    means[j] = mean(halves[j]);
    vars[j] = variance(halves[j]);
  }
  const double w = mean(vars);
  const double b = nn * variance(means);
  if (w <= 0.0) return 1.0;
  const double var_plus = (nn - 1.0) / nn * w + b / nn;
  return std::sqrt(var_plus / w);
}

}  // namespace moe
