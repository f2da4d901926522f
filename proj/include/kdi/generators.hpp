#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kdi::gen {

//! One mixture component. Exp uses the rate parameterization (mean
//! 1/rate): Exp(rate), ShiftedExp = shift + Exp(rate), ReflectedExp =
//! shift - Exp(rate). Getting rate-vs-scale wrong silently breaks the
//! clustering benchmarks, hence the explicit naming.
struct Component {
  enum class Kind { Normal, Uniform, Exp, ShiftedExp, ReflectedExp };
  Kind kind = Kind::Normal;
  double a = 0.0;  // Normal: mu, Uniform: lower, Exp: rate, Shifted/ReflectedExp: shift
  double b = 1.0;  // Normal: sigma, Uniform: upper, Shifted/ReflectedExp: rate

  static Component normal(double mu, double sigma) { return {Kind::Normal, mu, sigma}; }
  static Component uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  static Component exponential(double rate) { return {Kind::Exp, rate, 0.0}; }
  static Component shifted_exp(double shift, double rate) { return {Kind::ShiftedExp, shift, rate}; }
  static Component reflected_exp(double shift, double rate) { return {Kind::ReflectedExp, shift, rate}; }
};

struct WeightedComponent {
  double weight = 0.0;
  Component component;
};

struct MixtureSpec {
  std::vector<WeightedComponent> components;

  // Throws std::invalid_argument unless weights are positive and sum to 1
  // within 1e-12.
  void validate() const;

  double mean() const;
  double variance() const;

  //! The five benchmark mixtures, index 1..5.
  static MixtureSpec benchmark(int index);

  //! Parse {"components": [{"weight": .., "kind": "normal", ...}, ...]}.
  static MixtureSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct MixtureSample {
  std::vector<double> values;
  std::vector<int> labels;  // generating component index per draw
};

//! n i.i.d. draws: component chosen categorically by weight, then sampled;
//! bit-deterministic per (spec, n, seed).
MixtureSample sample_mixture(const MixtureSpec& spec, int n, std::uint64_t seed);

//! LogNormal(0, 1) draws.
std::vector<double> gen_lognormal(int n, std::uint64_t seed);

enum class CorrScenario { MonotoneNonlinear, NoisyLinear, LinearWithOutliers };

struct ScenarioParams {
  double noise_sd = 0.5;
  double outlier_frac = 0.05;   // LinearWithOutliers only
  double outlier_offset = 8.0;  // magnitude added to y for outlier rows
};

struct XYSample {
  std::vector<double> x;
  std::vector<double> y;
};

//! Synthetic correlation scenarios:
//!   MonotoneNonlinear  - x ~ U(0, 2), y = x^3 + noise_sd * eps
//!   NoisyLinear        - x ~ N(0, 1), y = x + noise_sd * eps
//!   LinearWithOutliers - NoisyLinear, then a outlier_frac fraction of rows
//!                        gets +-outlier_offset added to y. Outlier draws
//!                        come from a separate derived stream, so
//!                        outlier_frac = 0 reproduces NoisyLinear exactly.
XYSample gen_corr_scenario(CorrScenario scenario, int n, const ScenarioParams& params,
                           std::uint64_t seed);

} // namespace kdi::gen
