#include "kdi/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kdi/rng.hpp"
#include "kdi/transform.hpp"

namespace kdi {
namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("correlation inputs must have equal length");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("correlation needs at least 2 samples");
  }
}

std::vector<double> kdi_scores(std::span<const double> values, double alpha,
                               const KernelSpec& kernel, const EvalPlan& plan) {
  Column col{"", std::vector<double>(values.begin(), values.end()), ""};
  return fit(col, alpha, kernel, plan).transform(values);
}

} // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();  // constant variable
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> midranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  return pearson(midranks(x), midranks(y));
}

double kdi_corr(std::span<const double> x, std::span<const double> y, double alpha,
                const KernelSpec& kernel, const EvalPlan& plan) {
  check_pair(x, y);
  return pearson(kdi_scores(x, alpha, kernel, plan), kdi_scores(y, alpha, kernel, plan));
}

double general_gamma(std::span<const double> scores_x, std::span<const double> scores_y) {
  check_pair(scores_x, scores_y);
  const std::size_t n = scores_x.size();
  long double sab = 0.0L, saa = 0.0L, sbb = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = static_cast<long double>(scores_x[j]) - scores_x[i];
      const long double b = static_cast<long double>(scores_y[j]) - scores_y[i];
      sab += a * b;
      saa += a * a;
      sbb += b * b;
    }
  }
  if (!(saa > 0.0L) || !(sbb > 0.0L)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

BootstrapSd bootstrap_sd(std::span<const double> x, std::span<const double> y, double alpha,
                         int n_boot, std::uint64_t seed, const KernelSpec& kernel,
                         const EvalPlan& plan) {
  check_pair(x, y);
  if (n_boot <= 1) {
    throw std::invalid_argument("bootstrap_sd needs n_boot > 1");
  }
  const std::size_t n = x.size();
  std::vector<double> ps(static_cast<std::size_t>(n_boot));
  std::vector<double> ss(static_cast<std::size_t>(n_boot));
  std::vector<double> ks(static_cast<std::size_t>(n_boot));
  std::vector<double> bx(n), by(n);
  for (int b = 0; b < n_boot; ++b) {
    rng::Engine eng(rng::derive_seed(seed, static_cast<std::uint64_t>(b)));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = rng::index(eng, n);
      bx[i] = x[k];
      by[i] = y[k];
    }
    ps[static_cast<std::size_t>(b)] = pearson(bx, by);
    ss[static_cast<std::size_t>(b)] = spearman(bx, by);
    ks[static_cast<std::size_t>(b)] = kdi_corr(bx, by, alpha, kernel, plan);
  }
  const auto sd = [](const std::vector<double>& vs) {
    double mean = 0.0;
    for (double v : vs) mean += v;
    mean /= static_cast<double>(vs.size());
    double acc = 0.0;
    for (double v : vs) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(vs.size() - 1));
  };
  return BootstrapSd{sd(ps), sd(ss), sd(ks)};
}

CorrelationReport analyze_pair(const std::string& name_x, std::span<const double> x,
                               const std::string& name_y, std::span<const double> y,
                               double alpha, int n_boot, std::uint64_t seed,
                               const KernelSpec& kernel, const EvalPlan& plan) {
  CorrelationReport report;
  report.name_x = name_x;
  report.name_y = name_y;
  report.alpha = alpha;
  report.n_boot = n_boot > 0 ? n_boot : 0;
  report.pearson = pearson(x, y);
  report.spearman = spearman(x, y);
  report.kdi = kdi_corr(x, y, alpha, kernel, plan);
  if (n_boot > 0) {
    report.bootstrap = bootstrap_sd(x, y, alpha, n_boot, seed, kernel, plan);
  }
  return report;
}

} // namespace kdi
