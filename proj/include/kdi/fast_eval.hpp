#pragma once

#include <span>
#include <vector>

#include "kdi/kernels.hpp"

namespace kdi {

//! How KDE cumulative sums are evaluated when fitting a transform.
//!
//! Exact      - direct O(N) sum per query (the precision oracle; no grid).
//! Grid       - direct sums at R reference positions, interpolation after.
//! PolyExpDP  - single merge-pass recurrences over sorted data, O((N+M)K^2);
//!              requires the poly-exp kernel family.
enum class Strategy { Exact, Grid, PolyExpDP };

struct EvalPlan {
  Strategy strategy = Strategy::PolyExpDP;
  int grid_size = 1000;  // R_max; the grid actually uses min(grid_size, N)
};

//! R reference positions equally spaced over [X_(1), X_(N)] with the
//! normalized KD-integral value stored at each. First value is exactly 0,
//! last exactly 1, values non-decreasing.
struct ReferenceGrid {
  std::vector<double> positions;
  std::vector<double> values;

  bool empty() const { return positions.empty(); }
  std::size_t size() const { return positions.size(); }
};

//! KDE CDF by direct summation, any kernel: out[j] = mean_n kernel_cdf((q_j - X_n)/h).
//! O(N*M). Samples must be sorted ascending and non-empty; h > 0.
std::vector<double> kde_cdf_direct(std::span<const double> samples, double h,
                                   std::span<const double> queries,
                                   const KernelSpec& kernel);

//! Exact Gaussian KDE CDF, O(N*M); the precision oracle for the
//! approximate strategies.
std::vector<double> kde_cdf_exact(std::span<const double> samples, double h,
                                  std::span<const double> queries);

//! Poly-exp KDE CDF via the sorted merge-pass dynamic program.
//!
//! Maintains, per monomial degree m <= K, running sums
//!   L_m(x) = Σ_{X_n <= x} ((x-X_n)/h)^m e^{-(x-X_n)/h}
//! advanced by the binomial shift-and-decay recurrence, plus the mirrored
//! right-side sums, and assembles the CDF at each query from the
//! closed-form incomplete-gamma expansion of kernel_cdf. All recurrence
//! factors decay (no compensating growth terms), so arbitrarily large gaps
//! between samples underflow harmlessly to zero contribution.
//!
//! Both samples and queries must be sorted ascending (checked with one
//! linear scan). Cost O((N+M)*K^2) after sorting.
std::vector<double> kde_cdf_polyexp(std::span<const double> samples, double h,
                                    std::span<const double> queries,
                                    const KernelSpec& kernel = KernelSpec::poly_exp());

//! Build the reference grid for a Grid or PolyExpDP plan. Samples must be
//! sorted with positive span; h is the kernel scale parameter.
ReferenceGrid build_reference_grid(std::span<const double> samples, double h,
                                   const KernelSpec& kernel, const EvalPlan& plan);

//! Piecewise-linear interpolation on the grid; queries outside the grid
//! range clamp to the endpoint values (0 and 1 for transform grids).
//! O(log R) per query.
std::vector<double> interp_eval(const ReferenceGrid& grid, std::span<const double> queries);
double interp_eval_one(const ReferenceGrid& grid, double x);

} // namespace kdi
