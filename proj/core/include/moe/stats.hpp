#pragma once

#include <vector>

#include "moe/common.hpp"
#include "moe/rng.hpp"

namespace moe {

struct KMeansResult {
  MatrixXd centers;         // k x dim
  std::vector<int> labels;  // per row of the input
  double within_ss = 0.0;
};

/// Lloyd iterations with k-means++ seeding; best of n_init starts.
KMeansResult kmeans(const MatrixXd& points, int k, Rng& rng, int n_init = 10,
                    int max_iter = 100);

/// Mean silhouette width; pairwise distances on at most max_points rows
/// (seeded subsample beyond that).
double silhouette_score(const MatrixXd& points, const std::vector<int>& labels, int k,
                        Rng& rng, int max_points = 2000);

/// Departure-from-unimodality score: half the smallest (over mode
/// positions) worst-side gap between the empirical CDF and its convex
/// minorant / concave majorant fits. Zero-ish for unimodal samples.
double dip_score(std::vector<double> x);

/// Monte-Carlo p-value of dip_score against the U(0,1) null on matching
/// sample size. Samples larger than `subsample` are thinned (seeded).
double dip_pvalue(const std::vector<double>& x, Rng& rng, int n_boot = 500,
                  int subsample = 500);

/// Shortest interval containing `mass` of the draws.
struct Interval {
  double lo, hi;
};
Interval hpd_interval(std::vector<double> draws, double mass = 0.95);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // with 1/(n-1)

/// MCMC standard error of the mean by non-overlapping batch means.
double batch_means_se(const std::vector<double>& x, int n_batches = 20);

/// Split-chain potential scale reduction factor.
double potential_scale_reduction(const std::vector<std::vector<double>>& chains);

}  // namespace moe
