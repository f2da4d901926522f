#pragma once

#include <vector>

namespace kdi {

enum class KernelFamily { Gaussian, PolyExp };

//! Kernel family identifier plus parameters.
//!
//! Gaussian has no parameters. PolyExp is the poly(|z|)*exp(-|z|) family:
//! an order-K polynomial with non-negative coefficients beta_0..beta_K,
//! normalized to integrate to 1. The canonical choice beta_i = 1/i! gives a
//! smooth kernel with infinite support.
struct KernelSpec {
  KernelFamily family = KernelFamily::PolyExp;
  int order = 4;                      // PolyExp only
  std::vector<double> coefficients;   // PolyExp only, size order+1

  static KernelSpec gaussian();
  static KernelSpec poly_exp(int order = 4);  // beta_i = 1/i!
  static KernelSpec poly_exp_with(std::vector<double> coefficients);

  // Throws std::invalid_argument on violated invariants (negative or
  // all-zero coefficients, size mismatch, absurd order).
  void validate() const;
};

//! Density of the unit-scale normalized kernel; integrates to 1.
double kernel_pdf(const KernelSpec& spec, double z);

//! Definite integral of the unit-scale kernel from -inf to z.
//!
//! Gaussian: standard normal CDF via erfc. PolyExp: closed form from the
//! identity ∫_z^∞ t^i e^{-t} dt = i! e^{-z} Σ_{m<=i} z^m/m! (z >= 0),
//! reflected by symmetry for z < 0. Throws std::domain_error for
//! non-finite z.
double kernel_cdf(const KernelSpec& spec, double z);

//! Standard deviation of the unit-scale kernel: 1 for Gaussian,
//! sqrt(Σ beta_i (i+2)! / Σ beta_i i!) for PolyExp (sqrt(14) for the
//! default order-4 kernel). Used to convert a bandwidth into the kernel's
//! scale parameter so that one bandwidth means the same amount of
//! smoothing for every family.
double kernel_stddev(const KernelSpec& spec);

namespace detail {

// Constants for one poly-exp kernel, precomputed once so the hot loops
// do not redo the factorial sums per evaluation.
struct PolyExpKernel {
  std::vector<double> beta;
  std::vector<double> gamma;  // gamma_m = Σ_{i>=m} beta_i * i!/m!
  double norm = 0.0;          // c = 1 / (2 Σ beta_i i!)
  int order = 0;

  explicit PolyExpKernel(const KernelSpec& spec);

  double pdf(double z) const;
  double cdf(double z) const;
};

} // namespace detail
} // namespace kdi
