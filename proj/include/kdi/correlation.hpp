#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdi/fast_eval.hpp"
#include "kdi/kernels.hpp"

namespace kdi {

//! Product-moment correlation. Returns NaN when either variable is
//! constant (undefined correlation is reported, never silently dropped).
//! Throws std::invalid_argument on length mismatch or length < 2.
double pearson(std::span<const double> x, std::span<const double> y);

//! Mid-ranks (average rank over each tie block), 1..N.
std::vector<double> midranks(std::span<const double> x);

//! Pearson applied to mid-ranks of both variables.
double spearman(std::span<const double> x, std::span<const double> y);

//! Pearson applied to the KDI transforms of both variables, each fitted
//! independently (its own sigma_hat and extrema) at the given alpha.
double kdi_corr(std::span<const double> x, std::span<const double> y, double alpha = 1.0,
                const KernelSpec& kernel = KernelSpec::poly_exp(),
                const EvalPlan& plan = EvalPlan{});

//! General correlation coefficient over per-sample scores:
//!   Gamma = sum_ij a_ij b_ij / sqrt(sum a_ij^2 sum b_ij^2),
//! a_ij = r_j - r_i, b_ij = s_j - s_i over all N^2 pairs. O(N^2); used as
//! the algebraic cross-check for the product-moment route.
double general_gamma(std::span<const double> scores_x, std::span<const double> scores_y);

struct BootstrapSd {
  double pearson_sd = 0.0;
  double spearman_sd = 0.0;
  double kdi_sd = 0.0;
};

//! Standard deviation of each coefficient over n_boot resamples of the
//! row pairs, with replacement. The KDI transform is refit inside every
//! resample. Per-resample seeds derive from the master seed, so the
//! result does not depend on evaluation order.
BootstrapSd bootstrap_sd(std::span<const double> x, std::span<const double> y, double alpha,
                         int n_boot, std::uint64_t seed,
                         const KernelSpec& kernel = KernelSpec::poly_exp(),
                         const EvalPlan& plan = EvalPlan{});

struct CorrelationReport {
  std::string name_x;
  std::string name_y;
  double pearson = 0.0;
  double spearman = 0.0;
  double kdi = 0.0;
  std::optional<BootstrapSd> bootstrap;
  int n_boot = 0;
  double alpha = 1.0;
};

CorrelationReport analyze_pair(const std::string& name_x, std::span<const double> x,
                               const std::string& name_y, std::span<const double> y,
                               double alpha, int n_boot, std::uint64_t seed,
                               const KernelSpec& kernel = KernelSpec::poly_exp(),
                               const EvalPlan& plan = EvalPlan{});

} // namespace kdi
