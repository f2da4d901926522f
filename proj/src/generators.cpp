#include "kdi/generators.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "kdi/errors.hpp"
#include "kdi/rng.hpp"

namespace kdi::gen {
namespace {

using nlohmann::json;

double component_mean(const Component& c) {
  switch (c.kind) {
    case Component::Kind::Normal: return c.a;
    case Component::Kind::Uniform: return 0.5 * (c.a + c.b);
    case Component::Kind::Exp: return 1.0 / c.a;
    case Component::Kind::ShiftedExp: return c.a + 1.0 / c.b;
    case Component::Kind::ReflectedExp: return c.a - 1.0 / c.b;
  }
  return 0.0;
}

double component_second_moment(const Component& c) {
  switch (c.kind) {
    case Component::Kind::Normal: return c.a * c.a + c.b * c.b;
    case Component::Kind::Uniform: return (c.a * c.a + c.a * c.b + c.b * c.b) / 3.0;
    case Component::Kind::Exp: return 2.0 / (c.a * c.a);
    case Component::Kind::ShiftedExp: {
      const double m = 1.0 / c.b;
      return c.a * c.a + 2.0 * c.a * m + 2.0 * m * m;
    }
    case Component::Kind::ReflectedExp: {
      const double m = 1.0 / c.b;
      return c.a * c.a - 2.0 * c.a * m + 2.0 * m * m;
    }
  }
  return 0.0;
}

void validate_component(const Component& c) {
  switch (c.kind) {
    case Component::Kind::Normal:
      if (!(c.b > 0.0)) throw std::invalid_argument("normal component needs sigma > 0");
      break;
    case Component::Kind::Uniform:
      if (!(c.b > c.a)) throw std::invalid_argument("uniform component needs b > a");
      break;
    case Component::Kind::Exp:
      if (!(c.a > 0.0)) throw std::invalid_argument("exp component needs rate > 0");
      break;
    case Component::Kind::ShiftedExp:
    case Component::Kind::ReflectedExp:
      if (!(c.b > 0.0)) throw std::invalid_argument("shifted/reflected exp needs rate > 0");
      break;
  }
}

double draw(const Component& c, rng::Engine& eng) {
  switch (c.kind) {
    case Component::Kind::Normal: return rng::normal(eng, c.a, c.b);
    case Component::Kind::Uniform: return rng::uniform(eng, c.a, c.b);
    case Component::Kind::Exp: return rng::exponential(eng, c.a);
    case Component::Kind::ShiftedExp: return c.a + rng::exponential(eng, c.b);
    case Component::Kind::ReflectedExp: return c.a - rng::exponential(eng, c.b);
  }
  return 0.0;
}

const char* kind_name(Component::Kind kind) {
  switch (kind) {
    case Component::Kind::Normal: return "normal";
    case Component::Kind::Uniform: return "uniform";
    case Component::Kind::Exp: return "exp";
    case Component::Kind::ShiftedExp: return "shifted_exp";
    case Component::Kind::ReflectedExp: return "reflected_exp";
  }
  return "?";
}

} // namespace

void MixtureSpec::validate() const {
  if (components.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  double total = 0.0;
  for (const auto& wc : components) {
    if (!(wc.weight > 0.0)) {
      throw std::invalid_argument("mixture weights must be positive");
    }
    validate_component(wc.component);
    total += wc.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
}

double MixtureSpec::mean() const {
  double m = 0.0;
  for (const auto& wc : components) m += wc.weight * component_mean(wc.component);
  return m;
}

double MixtureSpec::variance() const {
  double m2 = 0.0;
  for (const auto& wc : components) m2 += wc.weight * component_second_moment(wc.component);
  const double m = mean();
  return m2 - m * m;
}

MixtureSpec MixtureSpec::benchmark(int index) {
  MixtureSpec spec;
  switch (index) {
    case 1:
      spec.components = {{0.55, Component::normal(1.0, 0.75)},
                         {0.30, Component::normal(4.0, 1.0)},
                         {0.15, Component::uniform(0.0, 20.0)}};
      break;
    case 2:
      spec.components = {{0.45, Component::normal(1.0, 0.5)},
                         {0.45, Component::normal(4.0, 1.0)},
                         {0.10, Component::uniform(0.0, 20.0)}};
      break;
    case 3:
      spec.components = {{0.67, Component::normal(1.0, 0.5)},
                         {0.33, Component::normal(4.0, 1.0)}};
      break;
    case 4:
      spec.components = {{0.80, Component::exponential(1.0)},
                         {0.20, Component::shifted_exp(10.0, 4.0)}};
      break;
    case 5:
      spec.components = {{0.50, Component::exponential(8.0)},
                         {0.50, Component::reflected_exp(100.0, 5.0)}};
      break;
    default:
      throw std::invalid_argument("benchmark mixture index must be 1..5");
  }
  return spec;
}

MixtureSpec MixtureSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("mixture spec is not valid JSON: ") + e.what());
  }
  MixtureSpec spec;
  try {
    for (const auto& cj : j.at("components")) {
      WeightedComponent wc;
      wc.weight = cj.at("weight").get<double>();
      const std::string kind = cj.at("kind").get<std::string>();
      if (kind == "normal") {
        wc.component = Component::normal(cj.at("mu").get<double>(), cj.at("sigma").get<double>());
      } else if (kind == "uniform") {
        wc.component = Component::uniform(cj.at("a").get<double>(), cj.at("b").get<double>());
      } else if (kind == "exp") {
        wc.component = Component::exponential(cj.at("rate").get<double>());
      } else if (kind == "shifted_exp") {
        wc.component = Component::shifted_exp(cj.at("shift").get<double>(), cj.at("rate").get<double>());
      } else if (kind == "reflected_exp") {
        wc.component = Component::reflected_exp(cj.at("shift").get<double>(), cj.at("rate").get<double>());
      } else {
        throw DataError("unknown mixture component kind '" + kind + "'");
      }
      spec.components.push_back(wc);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed mixture spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string MixtureSpec::to_json_text() const {
  json parts = json::array();
  for (const auto& wc : components) {
    json cj{{"weight", wc.weight}, {"kind", kind_name(wc.component.kind)}};
    switch (wc.component.kind) {
      case Component::Kind::Normal:
        cj["mu"] = wc.component.a;
        cj["sigma"] = wc.component.b;
        break;
      case Component::Kind::Uniform:
        cj["a"] = wc.component.a;
        cj["b"] = wc.component.b;
        break;
      case Component::Kind::Exp:
        cj["rate"] = wc.component.a;
        break;
      case Component::Kind::ShiftedExp:
      case Component::Kind::ReflectedExp:
        cj["shift"] = wc.component.a;
        cj["rate"] = wc.component.b;
        break;
    }
    parts.push_back(cj);
  }
  return json{{"components", parts}}.dump(2);
}

MixtureSample sample_mixture(const MixtureSpec& spec, int n, std::uint64_t seed) {
  spec.validate();
  if (n <= 0) {
    throw std::invalid_argument("sample_mixture: n must be positive");
  }
  rng::Engine eng(seed);
  MixtureSample out;
  out.values.resize(static_cast<std::size_t>(n));
  out.labels.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = rng::uniform01(eng);
    double cum = 0.0;
    int k = 0;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      cum += spec.components[c].weight;
      if (u < cum || c + 1 == spec.components.size()) {
        k = static_cast<int>(c);
        break;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = k;
    out.values[static_cast<std::size_t>(i)] = draw(spec.components[static_cast<std::size_t>(k)].component, eng);
  }
  return out;
}

std::vector<double> gen_lognormal(int n, std::uint64_t seed) {
  if (n <= 0) {
    throw std::invalid_argument("gen_lognormal: n must be positive");
  }
  rng::Engine eng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = std::exp(rng::normal(eng));
  return out;
}

XYSample gen_corr_scenario(CorrScenario scenario, int n, const ScenarioParams& params,
                           std::uint64_t seed) {
  if (n <= 0) {
    throw std::invalid_argument("gen_corr_scenario: n must be positive");
  }
  if (!(params.outlier_frac >= 0.0 && params.outlier_frac <= 1.0)) {
    throw std::invalid_argument("outlier_frac must lie in [0, 1]");
  }
  rng::Engine base(rng::derive_seed(seed, 0));
  XYSample out;
  out.x.resize(static_cast<std::size_t>(n));
  out.y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x, y;
    if (scenario == CorrScenario::MonotoneNonlinear) {
      x = rng::uniform(base, 0.0, 2.0);
      y = x * x * x + params.noise_sd * rng::normal(base);
    } else {
      x = rng::normal(base);
      y = x + params.noise_sd * rng::normal(base);
    }
    out.x[static_cast<std::size_t>(i)] = x;
    out.y[static_cast<std::size_t>(i)] = y;
  }
  if (scenario == CorrScenario::LinearWithOutliers && params.outlier_frac > 0.0) {
    rng::Engine tail(rng::derive_seed(seed, 1));
    for (int i = 0; i < n; ++i) {
      if (rng::uniform01(tail) < params.outlier_frac) {
        const double sign = rng::uniform01(tail) < 0.5 ? -1.0 : 1.0;
        out.y[static_cast<std::size_t>(i)] += sign * params.outlier_offset;
      }
    }
  }
  return out;
}

} // namespace kdi::gen
