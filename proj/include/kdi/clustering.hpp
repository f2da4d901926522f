#pragma once

#include <span>
#include <vector>

#include "kdi/transform.hpp"

namespace kdi {

enum class ClusterMethod { KdiMinima, RawKdeMinima };

//! Univariate clustering by density-valley detection.
struct ClusterResult {
  std::vector<double> boundaries_t;  // minima in transformed space (KdiMinima only)
  std::vector<double> boundaries_x;  // boundaries in original units, strictly increasing
  std::vector<int> labels;           // 0-based, by interval: sample < boundary_1 -> 0, ...
  int k_hat = 1;                     // boundaries + 1
  ClusterMethod method = ClusterMethod::KdiMinima;
};

//! Cluster by (1) KDI-transforming the sample, (2) a Gaussian KDE on the
//! transformed points with Scott's-rule bandwidth
//! N^(-0.2) * min(sigma(T), IQR(T)/1.349), (3) interior local minima of
//! the density on a grid over [0, 1], refined by 3-point parabolic
//! interpolation, mapped back through the inverse transform. Plateau
//! minima resolve to the leftmost grid point.
ClusterResult cluster_kdi(const Column& column, double alpha = 1.0, int grid_points = 1024,
                          const KernelSpec& transform_kernel = KernelSpec::poly_exp(),
                          const EvalPlan& plan = EvalPlan{},
                          const KernelSpec& density_kernel = KernelSpec::gaussian());

//! Ablation: the same valley detection on a KDE of the raw inputs
//! (Scott's rule on sigma(X), grid spanning [X_(1), X_(N)]).
ClusterResult cluster_raw_kde(const Column& column, int grid_points = 1024,
                              const KernelSpec& density_kernel = KernelSpec::gaussian());

//! Adjusted Rand index between two labelings of the same samples, from
//! the pair-counting contingency table. 1 for identical partitions (up to
//! label permutation), ~0 for independent ones.
double ari(std::span<const int> labels_a, std::span<const int> labels_b);

} // namespace kdi
