#include "kdi/fast_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kdi {
namespace {

void require_sorted(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = xs[i];
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + " must be finite");
    }
    if (i > 0 && !(xs[i - 1] <= v)) {
      throw std::invalid_argument(std::string(what) + " must be sorted ascending");
    }
  }
}

void require_inputs(std::span<const double> samples, double h) {
  if (samples.empty()) {
    throw std::invalid_argument("samples must be non-empty");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("bandwidth must be positive and finite");
  }
  require_sorted(samples, "samples");
}

inline double gauss_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Running weighted sums for one side of the poly-exp recurrence.
//
// state[m] = Σ_over_absorbed_points d^m e^{-d} with d the scaled distance to
// the current anchor. Moving the anchor by delta >= 0 multiplies each
// absorbed distance's e^{-d} by e^{-delta} and shifts d^m through the
// binomial expansion of (d + delta)^m.
class PolyExpSums {
public:
  PolyExpSums(const detail::PolyExpKernel& kernel)
    : kernel_(kernel), state_(static_cast<std::size_t>(kernel.order) + 1, 0.0),
      scratch_(state_.size(), 0.0), binom_(pascal(kernel.order)) {}

  void advance(double delta) {
    if (delta == 0.0) return;
    const double decay = std::exp(-delta);
    if (decay == 0.0) {
      // Gap so large the entire carried mass underflows; drop it exactly
      // rather than risk inf * 0 from the delta powers.
      std::fill(state_.begin(), state_.end(), 0.0);
      return;
    }
    const int order = kernel_.order;
    double dpow = 1.0;
    std::vector<double>& out = scratch_;
    std::fill(out.begin(), out.end(), 0.0);
    // out[m] += C(m, j) delta^{m-j} state[j]; iterate by power p = m - j.
    for (int p = 0; p <= order; ++p) {
      for (int m = p; m <= order; ++m) {
        out[static_cast<std::size_t>(m)] +=
            binom_[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)] * dpow *
            state_[static_cast<std::size_t>(m - p)];
      }
      dpow *= delta;
    }
    for (std::size_t m = 0; m < state_.size(); ++m) {
      state_[m] = decay * out[m];
    }
  }

  void absorb_point() { state_[0] += 1.0; }  // distance 0: d^0 e^0 = 1

  // Σ_m gamma_m state[m] — the weighted sum the CDF assembly needs.
  double weighted() const {
    double s = 0.0;
    for (std::size_t m = 0; m < state_.size(); ++m) {
      s += kernel_.gamma[m] * state_[m];
    }
    return s;
  }

private:
  static std::vector<std::vector<double>> pascal(int order) {
    std::vector<std::vector<double>> c(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) {
      c[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(m) + 1, 1.0);
      for (int j = 1; j < m; ++j) {
        c[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
            c[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - 1)] +
            c[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j)];
      }
    }
    return c;
  }

  const detail::PolyExpKernel& kernel_;
  std::vector<double> state_;
  std::vector<double> scratch_;
  std::vector<std::vector<double>> binom_;
};

} // namespace

std::vector<double> kde_cdf_direct(std::span<const double> samples, double h,
                                   std::span<const double> queries,
                                   const KernelSpec& kernel) {
  require_inputs(samples, h);
  kernel.validate();
  const double n = static_cast<double>(samples.size());
  std::vector<double> out(queries.size());
  if (kernel.family == KernelFamily::Gaussian) {
    for (std::size_t j = 0; j < queries.size(); ++j) {
      double acc = 0.0;
      for (double x : samples) acc += gauss_cdf((queries[j] - x) / h);
      out[j] = acc / n;
    }
  } else {
    const detail::PolyExpKernel ker(kernel);
    for (std::size_t j = 0; j < queries.size(); ++j) {
      double acc = 0.0;
      for (double x : samples) acc += ker.cdf((queries[j] - x) / h);
      out[j] = acc / n;
    }
  }
  return out;
}

std::vector<double> kde_cdf_exact(std::span<const double> samples, double h,
                                  std::span<const double> queries) {
  return kde_cdf_direct(samples, h, queries, KernelSpec::gaussian());
}

std::vector<double> kde_cdf_polyexp(std::span<const double> samples, double h,
                                    std::span<const double> queries,
                                    const KernelSpec& kernel) {
  require_inputs(samples, h);
  require_sorted(queries, "queries");
  if (kernel.family != KernelFamily::PolyExp) {
    throw std::invalid_argument("kde_cdf_polyexp requires a poly-exp kernel");
  }
  const detail::PolyExpKernel ker(kernel);
  const std::size_t n = samples.size();
  const std::size_t m = queries.size();

  std::vector<double> left_weighted(m, 0.0);
  std::vector<double> left_count(m, 0.0);
  std::vector<double> right_weighted(m, 0.0);

  // Forward pass: samples with X <= q (samples first on ties).
  {
    PolyExpSums sums(ker);
    double anchor = 0.0;
    bool started = false;
    std::size_t si = 0, qi = 0;
    while (si < n || qi < m) {
      const bool take_sample = si < n && (qi >= m || samples[si] <= queries[qi]);
      const double pos = take_sample ? samples[si] : queries[qi];
      if (started) {
        sums.advance((pos - anchor) / h);
      }
      anchor = pos;
      started = true;
      if (take_sample) {
        sums.absorb_point();
        ++si;
      } else {
        left_weighted[qi] = sums.weighted();
        left_count[qi] = static_cast<double>(si);
        ++qi;
      }
    }
  }

  // Backward pass: samples with X > q (queries first on ties).
  {
    PolyExpSums sums(ker);
    double anchor = 0.0;
    bool started = false;
    std::size_t si = n, qi = m;
    while (si > 0 || qi > 0) {
      const bool take_sample = si > 0 && (qi == 0 || samples[si - 1] > queries[qi - 1]);
      const double pos = take_sample ? samples[si - 1] : queries[qi - 1];
      if (started) {
        sums.advance((anchor - pos) / h);
      }
      anchor = pos;
      started = true;
      if (take_sample) {
        sums.absorb_point();
        --si;
      } else {
        right_weighted[qi - 1] = sums.weighted();
        --qi;
      }
    }
  }

  std::vector<double> out(m);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) {
    const double f =
        (left_count[j] - ker.norm * left_weighted[j] + ker.norm * right_weighted[j]) * inv_n;
    out[j] = std::clamp(f, 0.0, 1.0);
  }
  return out;
}

ReferenceGrid build_reference_grid(std::span<const double> samples, double h,
                                   const KernelSpec& kernel, const EvalPlan& plan) {
  require_inputs(samples, h);
  if (plan.strategy == Strategy::Exact) {
    throw std::invalid_argument("reference grids are for Grid or PolyExpDP plans");
  }
  if (plan.grid_size < 2) {
    throw std::invalid_argument("grid_size must be at least 2");
  }
  const double lo = samples.front();
  const double hi = samples.back();
  const double span = hi - lo;
  if (!(span > 0.0)) {
    throw std::invalid_argument("samples span must be positive");
  }

  const std::size_t r =
      std::min<std::size_t>(static_cast<std::size_t>(plan.grid_size), std::max<std::size_t>(samples.size(), 2));

  ReferenceGrid grid;
  grid.positions.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    grid.positions[k] = lo + span * (static_cast<double>(k) / static_cast<double>(r - 1));
  }
  grid.positions.front() = lo;
  grid.positions.back() = hi;

  std::vector<double> raw;
  if (plan.strategy == Strategy::PolyExpDP) {
    raw = kde_cdf_polyexp(samples, h, grid.positions, kernel);
  } else {
    raw = kde_cdf_direct(samples, h, grid.positions, kernel);
  }

  grid.values.resize(r);
  const double denom = raw.back() - raw.front();
  if (denom > 0.0) {
    for (std::size_t k = 0; k < r; ++k) {
      grid.values[k] = (raw[k] - raw.front()) / denom;
    }
  } else {
    // Bandwidth so large the CDF is numerically constant across the span;
    // the normalized ratio degenerates to the min-max limit.
    for (std::size_t k = 0; k < r; ++k) {
      grid.values[k] = (grid.positions[k] - lo) / span;
    }
  }
  grid.values.front() = 0.0;
  grid.values.back() = 1.0;
  for (std::size_t k = 1; k < r; ++k) {
    grid.values[k] = std::clamp(grid.values[k], grid.values[k - 1], 1.0);
  }
  return grid;
}

double interp_eval_one(const ReferenceGrid& grid, double x) {
  const auto& p = grid.positions;
  const auto& v = grid.values;
  if (x <= p.front()) return v.front();
  if (x >= p.back()) return v.back();
  const auto it = std::upper_bound(p.begin(), p.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - p.begin()) - 1;
  const double width = p[k + 1] - p[k];
  const double t = (x - p[k]) / width;
  return v[k] + t * (v[k + 1] - v[k]);
}

std::vector<double> interp_eval(const ReferenceGrid& grid, std::span<const double> queries) {
  if (grid.empty()) {
    throw std::invalid_argument("interp_eval on an empty grid");
  }
  std::vector<double> out(queries.size());
  for (std::size_t j = 0; j < queries.size(); ++j) {
    out[j] = interp_eval_one(grid, queries[j]);
  }
  return out;
}

} // namespace kdi
