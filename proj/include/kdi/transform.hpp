#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kdi/fast_eval.hpp"
#include "kdi/kernels.hpp"

namespace kdi {

//! A named univariate sample of finite real values with provenance
//! (file+column or generator+seed).
struct Column {
  std::string name;
  std::vector<double> values;
  std::string provenance;
};

//! A fitted kernel density integral transform.
//!
//! The transform maps x to the normalized definite integral of the KDE
//! from the training minimum to x:
//!   T(x) = P_h(X_(1), x) / P_h(X_(1), X_(N)),  clamped to 0 below X_(1)
//! and 1 at/above X_(N). The bandwidth is h = alpha * sigma_hat; the
//! kernel's internal scale is h / kernel_stddev(kernel) so that alpha
//! means the same amount of smoothing for every kernel family.
//!
//! Immutable after fit; transform/inverse_transform are read-only and
//! safe to call from any number of threads.
struct FittedKdi {
  double x_min = 0.0;
  double x_max = 0.0;
  double bandwidth_factor = 1.0;  // alpha
  double bandwidth = 0.0;         // alpha * sigma_hat
  double sigma_hat = 0.0;         // sample std, N-1 denominator
  KernelSpec kernel;
  Strategy strategy = Strategy::PolyExpDP;
  ReferenceGrid grid;             // empty for degenerate or Exact-strategy fits
  bool degenerate = false;        // zero span or zero sigma_hat

  // Exact strategy only: sorted training samples plus the raw KDE CDF at
  // the extrema, kept so queries can be evaluated without a grid.
  std::vector<double> samples;
  double exact_f_lo = 0.0;
  double exact_f_hi = 1.0;

  //! Transform values to [0,1]. NaN inputs propagate as NaN outputs; the
  //! optional counter reports how many were seen (pipelines should warn,
  //! not abort).
  std::vector<double> transform(std::span<const double> values,
                                std::size_t* nan_count = nullptr) const;
  double transform_one(double x) const;

  //! Map t in [0,1] back to data units. Piecewise-linear inverse of the
  //! grid; flat segments resolve to their left endpoint. Throws
  //! std::invalid_argument if t is outside [0,1].
  std::vector<double> inverse_transform(std::span<const double> t) const;
  double inverse_one(double t) const;
};

//! Fit the transform on a training column. Throws std::invalid_argument
//! on an empty column or non-positive alpha, DataError (naming the
//! column) on non-finite values. A zero-span column yields a degenerate
//! fit whose transform maps the repeated value to 0.5.
FittedKdi fit(const Column& column, double alpha = 1.0,
              const KernelSpec& kernel = KernelSpec::poly_exp(),
              const EvalPlan& plan = EvalPlan{});

//! Min-max scaling fitted on the column: (x - X_(1)) / (X_(N) - X_(1)),
//! clamped to [0,1] outside the training range. The limiting transform as
//! alpha -> infinity.
std::vector<double> minmax_transform(const Column& column, std::span<const double> values);

//! Empirical CDF with the mid-rank tie convention: values present in the
//! sample map to (average rank)/N, values between samples map to the
//! plain <=-count CDF. The limiting transform as alpha -> 0.
std::vector<double> quantile_transform(const Column& column, std::span<const double> values);

} // namespace kdi
