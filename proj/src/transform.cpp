#include "kdi/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kdi/errors.hpp"

namespace kdi {
namespace {

double sample_stddev(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

void check_column(const Column& column) {
  if (column.values.empty()) {
    throw std::invalid_argument("fit: column '" + column.name + "' is empty");
  }
  for (std::size_t i = 0; i < column.values.size(); ++i) {
    if (!std::isfinite(column.values[i])) {
      throw DataError("column '" + column.name + "' has a non-finite value at row " +
                      std::to_string(i));
    }
  }
}

double degenerate_value(double x, double rep) {
  if (std::isnan(x)) return x;
  if (x < rep) return 0.0;
  if (x > rep) return 1.0;
  return 0.5;
}

} // namespace

FittedKdi fit(const Column& column, double alpha, const KernelSpec& kernel,
              const EvalPlan& plan) {
  check_column(column);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("fit: alpha must be positive and finite");
  }
  kernel.validate();
  if (plan.strategy == Strategy::PolyExpDP && kernel.family != KernelFamily::PolyExp) {
    throw std::invalid_argument("fit: the dp strategy requires the poly-exp kernel");
  }

  std::vector<double> sorted = column.values;
  std::sort(sorted.begin(), sorted.end());

  FittedKdi fitted;
  fitted.kernel = kernel;
  fitted.strategy = plan.strategy;
  fitted.bandwidth_factor = alpha;
  fitted.x_min = sorted.front();
  fitted.x_max = sorted.back();
  fitted.sigma_hat = sample_stddev(sorted);
  fitted.bandwidth = alpha * fitted.sigma_hat;

  const double span = fitted.x_max - fitted.x_min;
  if (!(span > 0.0) || !(fitted.sigma_hat > 0.0)) {
    fitted.degenerate = true;
    fitted.bandwidth = 0.0;
    return fitted;
  }

  const double scale = fitted.bandwidth / kernel_stddev(kernel);
  if (plan.strategy == Strategy::Exact) {
    const auto ends = kde_cdf_direct(sorted, scale,
                                     std::vector<double>{fitted.x_min, fitted.x_max}, kernel);
    fitted.exact_f_lo = ends[0];
    fitted.exact_f_hi = ends[1];
    fitted.samples = std::move(sorted);
  } else {
    fitted.grid = build_reference_grid(sorted, scale, kernel, plan);
  }
  return fitted;
}

double FittedKdi::transform_one(double x) const {
  if (std::isnan(x)) return x;
  if (degenerate) return degenerate_value(x, x_min);
  if (x < x_min) return 0.0;
  if (x >= x_max) return 1.0;
  if (strategy == Strategy::Exact) {
    const double scale = bandwidth / kernel_stddev(kernel);
    const double f = kde_cdf_direct(samples, scale, std::vector<double>{x}, kernel)[0];
    const double denom = exact_f_hi - exact_f_lo;
    if (!(denom > 0.0)) return (x - x_min) / (x_max - x_min);
    return std::clamp((f - exact_f_lo) / denom, 0.0, 1.0);
  }
  return interp_eval_one(grid, x);
}

std::vector<double> FittedKdi::transform(std::span<const double> values,
                                         std::size_t* nan_count) const {
  std::vector<double> out(values.size());
  std::size_t nans = 0;
  if (!degenerate && strategy == Strategy::Exact) {
    // One direct-evaluation batch instead of per-value O(N) calls.
    const double scale = bandwidth / kernel_stddev(kernel);
    const double denom = exact_f_hi - exact_f_lo;
    std::vector<double> inside;
    inside.reserve(values.size());
    for (double x : values) {
      if (!std::isnan(x) && x > x_min && x < x_max) inside.push_back(x);
    }
    const auto fs = kde_cdf_direct(samples, scale, inside, kernel);
    std::size_t k = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double x = values[j];
      if (std::isnan(x)) {
        ++nans;
        out[j] = x;
      } else if (x <= x_min) {
        out[j] = 0.0;
      } else if (x >= x_max) {
        out[j] = 1.0;
      } else if (!(denom > 0.0)) {
        out[j] = (x - x_min) / (x_max - x_min);
      } else {
        out[j] = std::clamp((fs[k++] - exact_f_lo) / denom, 0.0, 1.0);
      }
    }
  } else {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (std::isnan(values[j])) ++nans;
      out[j] = transform_one(values[j]);
    }
  }
  if (nan_count != nullptr) *nan_count += nans;
  return out;
}

double FittedKdi::inverse_one(double t) const {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw std::invalid_argument("inverse_transform: t must lie in [0, 1]");
  }
  if (degenerate) return x_min;
  if (strategy == Strategy::Exact) {
    // No grid to invert; bisect the monotone transform instead.
    double lo = x_min, hi = x_max;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (transform_one(mid) < t) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return t <= 0.0 ? x_min : (t >= 1.0 ? x_max : 0.5 * (lo + hi));
  }
  const auto& v = grid.values;
  const auto it = std::lower_bound(v.begin(), v.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - v.begin());
  if (k >= v.size()) return x_max;
  if (v[k] == t || k == 0) return grid.positions[k];  // left endpoint of any flat run
  const double dv = v[k] - v[k - 1];
  const double frac = (t - v[k - 1]) / dv;
  return grid.positions[k - 1] + frac * (grid.positions[k] - grid.positions[k - 1]);
}

std::vector<double> FittedKdi::inverse_transform(std::span<const double> t) const {
  std::vector<double> out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    out[j] = inverse_one(t[j]);
  }
  return out;
}

std::vector<double> minmax_transform(const Column& column, std::span<const double> values) {
  check_column(column);
  const auto [lo_it, hi_it] = std::minmax_element(column.values.begin(), column.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = hi - lo;
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = values[j];
    if (!(span > 0.0)) {
      out[j] = degenerate_value(x, lo);
    } else if (std::isnan(x)) {
      out[j] = x;
    } else {
      out[j] = std::clamp((x - lo) / span, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<double> quantile_transform(const Column& column, std::span<const double> values) {
  check_column(column);
  std::vector<double> sorted = column.values;
  std::sort(sorted.begin(), sorted.end());
  const double n2 = 2.0 * static_cast<double>(sorted.size());
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = values[j];
    if (std::isnan(x)) {
      out[j] = x;
      continue;
    }
    const auto lt = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const auto le = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    // Mid-rank at sample values: (count_lt + count_le + 1) / 2N equals the
    // average rank of the tied block over N. Elsewhere lt == le and this is
    // the plain empirical CDF.
    const double bump = le > lt ? 1.0 : 0.0;
    out[j] = (static_cast<double>(lt) + static_cast<double>(le) + bump) / n2;
  }
  return out;
}

} // namespace kdi
