#include "kdi/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kdi {
namespace {

constexpr int kMaxOrder = 30;  // factorials stay comfortably inside double range

std::vector<double> inverse_factorials(int order) {
  std::vector<double> beta(static_cast<std::size_t>(order) + 1);
  double fact = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) fact *= i;
    beta[static_cast<std::size_t>(i)] = 1.0 / fact;
  }
  return beta;
}

void check_finite(double z) {
  if (!std::isfinite(z)) {
    throw std::domain_error("kernel evaluation requires finite z");
  }
}

} // namespace

KernelSpec KernelSpec::gaussian() {
  KernelSpec spec;
  spec.family = KernelFamily::Gaussian;
  spec.order = 0;
  spec.coefficients.clear();
  return spec;
}

KernelSpec KernelSpec::poly_exp(int order) {
  KernelSpec spec;
  spec.family = KernelFamily::PolyExp;
  spec.order = order;
  if (order >= 0 && order <= kMaxOrder) {
    spec.coefficients = inverse_factorials(order);
  }
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::poly_exp_with(std::vector<double> coefficients) {
  KernelSpec spec;
  spec.family = KernelFamily::PolyExp;
  spec.order = static_cast<int>(coefficients.size()) - 1;
  spec.coefficients = std::move(coefficients);
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (family == KernelFamily::Gaussian) {
    return;  // order/coefficients ignored
  }
  if (order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("poly-exp order must be in [0, 30]");
  }
  if (coefficients.size() != static_cast<std::size_t>(order) + 1) {
    throw std::invalid_argument("poly-exp needs order+1 coefficients");
  }
  double total = 0.0;
  for (double b : coefficients) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("poly-exp coefficients must be finite and non-negative");
    }
    total += b;
  }
  if (total <= 0.0) {
    throw std::invalid_argument("poly-exp coefficients must not all be zero");
  }
}

namespace detail {

PolyExpKernel::PolyExpKernel(const KernelSpec& spec) {
  spec.validate();
  if (spec.family != KernelFamily::PolyExp) {
    throw std::invalid_argument("PolyExpKernel requires a poly-exp spec");
  }
  order = spec.order;
  beta = spec.coefficients;

  std::vector<double> fact(static_cast<std::size_t>(order) + 1, 1.0);
  for (int i = 1; i <= order; ++i) {
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  }
  double mass = 0.0;  // Σ beta_i i!
  for (int i = 0; i <= order; ++i) {
    mass += beta[static_cast<std::size_t>(i)] * fact[static_cast<std::size_t>(i)];
  }
  norm = 1.0 / (2.0 * mass);

  gamma.assign(static_cast<std::size_t>(order) + 1, 0.0);
  for (int m = 0; m <= order; ++m) {
    double g = 0.0;
    for (int i = m; i <= order; ++i) {
      g += beta[static_cast<std::size_t>(i)] * fact[static_cast<std::size_t>(i)];
    }
    gamma[static_cast<std::size_t>(m)] = g / fact[static_cast<std::size_t>(m)];
  }
}

double PolyExpKernel::pdf(double z) const {
  const double u = std::abs(z);
  double poly = 0.0;
  for (int i = order; i >= 0; --i) {
    poly = poly * u + beta[static_cast<std::size_t>(i)];
  }
  return norm * poly * std::exp(-u);
}

double PolyExpKernel::cdf(double z) const {
  // Upper-tail mass beyond |z|, then one reflection for the sign. Keeping a
  // single code path makes cdf(z) + cdf(-z) == 1 exact.
  const double u = std::abs(z);
  double poly = 0.0;
  for (int m = order; m >= 0; --m) {
    poly = poly * u + gamma[static_cast<std::size_t>(m)];
  }
  const double tail = norm * std::exp(-u) * poly;
  return z >= 0.0 ? 1.0 - tail : tail;
}

} // namespace detail

double kernel_pdf(const KernelSpec& spec, double z) {
  check_finite(z);
  if (spec.family == KernelFamily::Gaussian) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  }
  return detail::PolyExpKernel(spec).pdf(z);
}

double kernel_cdf(const KernelSpec& spec, double z) {
  check_finite(z);
  if (spec.family == KernelFamily::Gaussian) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
  }
  return detail::PolyExpKernel(spec).cdf(z);
}

double kernel_stddev(const KernelSpec& spec) {
  spec.validate();
  if (spec.family == KernelFamily::Gaussian) {
    return 1.0;
  }
  double fact = 1.0;
  double mass = 0.0;      // Σ beta_i i!
  double second = 0.0;    // Σ beta_i (i+2)!
  for (int i = 0; i <= spec.order; ++i) {
    if (i > 0) fact *= i;
    const double b = spec.coefficients[static_cast<std::size_t>(i)];
    mass += b * fact;
    second += b * fact * (i + 1) * (i + 2);
  }
  return std::sqrt(second / mass);
}

} // namespace kdi
