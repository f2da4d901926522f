#include "kdi/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace kdi {
namespace {

double stddev(std::span<const double> xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double interpolated_quantile(std::vector<double>& sorted, double p) {
  const double idx = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = idx - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Scott's rule with the robust scale min(sigma, IQR/1.349) standard KDE
// implementations use. The robust scale is what makes the raw-KDE
// ablation over-segment sparse exponential tails while leaving the
// transformed-space estimate unchanged. Quartiles of fewer than 5 points
// are degenerate estimators, so tiny samples fall back to sigma alone.
double scott_bandwidth(std::span<const double> xs) {
  double scale = stddev(xs);
  if (xs.size() >= 5) {
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr_scale =
        (interpolated_quantile(sorted, 0.75) - interpolated_quantile(sorted, 0.25)) / 1.349;
    if (iqr_scale > 0.0 && iqr_scale < scale) scale = iqr_scale;
  }
  return scale * std::pow(static_cast<double>(xs.size()), -0.2);
}

std::vector<double> kde_density(std::span<const double> points, double h,
                                std::span<const double> grid, const KernelSpec& kernel) {
  std::vector<double> density(grid.size(), 0.0);
  const double inv = 1.0 / (static_cast<double>(points.size()) * h);
  if (kernel.family == KernelFamily::Gaussian) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double acc = 0.0;
      for (double p : points) {
        const double z = (grid[g] - p) / h;
        acc += std::exp(-0.5 * z * z);
      }
      density[g] = acc * inv * 0.3989422804014327;  // 1/sqrt(2*pi)
    }
  } else {
    const detail::PolyExpKernel ker(kernel);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double acc = 0.0;
      for (double p : points) acc += ker.pdf((grid[g] - p) / h);
      density[g] = acc * inv;
    }
  }
  return density;
}

//! Interior strict local minima of the density samples; a plateau flanked
//! by strictly larger values counts once, at its leftmost point. Strict
//! single-point minima get sub-grid parabolic refinement.
std::vector<double> density_minima(std::span<const double> grid, std::span<const double> density) {
  std::vector<double> minima;
  const std::size_t g = grid.size();
  std::size_t i = 1;
  while (i + 1 < g) {
    if (density[i] < density[i - 1]) {
      std::size_t j = i;
      while (j + 1 < g && density[j + 1] == density[i]) ++j;
      if (j + 1 < g && density[j + 1] > density[i]) {
        double where = grid[i];
        if (j == i) {
          const double denom = density[i - 1] - 2.0 * density[i] + density[i + 1];
          if (denom > 0.0) {
            const double offset = 0.5 * (density[i - 1] - density[i + 1]) / denom;
            where += offset * (grid[i + 1] - grid[i]);
          }
        }
        minima.push_back(where);
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return minima;
}

std::vector<int> interval_labels(std::span<const double> values,
                                 std::span<const double> boundaries) {
  std::vector<int> labels(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    int k = 0;
    for (double b : boundaries) {
      if (values[i] >= b) ++k;  // sample < boundary_1 -> 0, etc.
    }
    labels[i] = k;
  }
  return labels;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    grid[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return grid;
}

void check_cluster_inputs(const Column& column, int grid_points) {
  if (column.values.size() < 2) {
    throw std::invalid_argument("clustering needs at least 2 samples");
  }
  if (grid_points < 64) {
    throw std::invalid_argument("grid_points must be at least 64");
  }
}

ClusterResult trivial_result(const Column& column, ClusterMethod method) {
  ClusterResult result;
  result.method = method;
  result.k_hat = 1;
  result.labels.assign(column.values.size(), 0);
  return result;
}

} // namespace

ClusterResult cluster_kdi(const Column& column, double alpha, int grid_points,
                          const KernelSpec& transform_kernel, const EvalPlan& plan,
                          const KernelSpec& density_kernel) {
  check_cluster_inputs(column, grid_points);
  const FittedKdi fitted = fit(column, alpha, transform_kernel, plan);
  if (fitted.degenerate) {
    return trivial_result(column, ClusterMethod::KdiMinima);
  }
  const std::vector<double> transformed = fitted.transform(column.values);

  const double h = scott_bandwidth(transformed);
  if (!(h > 0.0)) {
    return trivial_result(column, ClusterMethod::KdiMinima);
  }

  const std::vector<double> grid = linspace(0.0, 1.0, grid_points);
  const std::vector<double> density = kde_density(transformed, h, grid, density_kernel);

  ClusterResult result;
  result.method = ClusterMethod::KdiMinima;
  result.boundaries_t = density_minima(grid, density);
  result.boundaries_x = fitted.inverse_transform(result.boundaries_t);
  result.labels = interval_labels(column.values, result.boundaries_x);
  result.k_hat = static_cast<int>(result.boundaries_x.size()) + 1;
  return result;
}

ClusterResult cluster_raw_kde(const Column& column, int grid_points,
                              const KernelSpec& density_kernel) {
  check_cluster_inputs(column, grid_points);
  const auto [lo_it, hi_it] = std::minmax_element(column.values.begin(), column.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    return trivial_result(column, ClusterMethod::RawKdeMinima);
  }
  const double h = scott_bandwidth(column.values);

  const std::vector<double> grid = linspace(lo, hi, grid_points);
  const std::vector<double> density = kde_density(column.values, h, grid, density_kernel);

  ClusterResult result;
  result.method = ClusterMethod::RawKdeMinima;
  result.boundaries_x = density_minima(grid, density);
  result.labels = interval_labels(column.values, result.boundaries_x);
  result.k_hat = static_cast<int>(result.boundaries_x.size()) + 1;
  return result;
}

double ari(std::span<const int> labels_a, std::span<const int> labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw std::invalid_argument("ari: labelings must have equal length");
  }
  if (labels_a.empty()) {
    throw std::invalid_argument("ari: empty labelings");
  }
  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> rows, cols;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    ++cells[{labels_a[i], labels_b[i]}];
    ++rows[labels_a[i]];
    ++cols[labels_b[i]];
  }
  const auto choose2 = [](long long c) {
    return 0.5L * static_cast<long double>(c) * static_cast<long double>(c - 1);
  };
  long double sum_cells = 0.0L, sum_rows = 0.0L, sum_cols = 0.0L;
  for (const auto& [key, c] : cells) sum_cells += choose2(c);
  for (const auto& [key, c] : rows) sum_rows += choose2(c);
  for (const auto& [key, c] : cols) sum_cols += choose2(c);
  const long double total = choose2(static_cast<long long>(labels_a.size()));
  if (total == 0.0L) {
    return 1.0;  // single sample
  }
  const long double expected = sum_rows * sum_cols / total;
  const long double maximum = 0.5L * (sum_rows + sum_cols);
  if (maximum == expected) {
    return 1.0;  // both partitions trivial (all-singletons or one cluster)
  }
  return static_cast<double>((sum_cells - expected) / (maximum - expected));
}

} // namespace kdi
