#include "kdi/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "kdi/errors.hpp"

namespace kdi {
namespace {

using nlohmann::json;

json kernel_to_json(const KernelSpec& spec) {
  if (spec.family == KernelFamily::Gaussian) {
    return json{{"family", "gaussian"}};
  }
  return json{{"family", "polyexp"}, {"order", spec.order}, {"coefficients", spec.coefficients}};
}

KernelSpec kernel_from_json(const json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "gaussian") {
    return KernelSpec::gaussian();
  }
  if (family == "polyexp") {
    auto spec = KernelSpec::poly_exp_with(j.at("coefficients").get<std::vector<double>>());
    if (spec.order != j.at("order").get<int>()) {
      throw DataError("model kernel order does not match its coefficients");
    }
    return spec;
  }
  throw DataError("unknown kernel family '" + family + "' in model");
}

json model_to_json(const FittedKdi& model) {
  if (!model.degenerate && model.strategy == Strategy::Exact) {
    throw std::invalid_argument("exact-strategy fits carry no grid and cannot be serialized");
  }
  json j{{"kernel", kernel_to_json(model.kernel)},
         {"strategy", model.strategy == Strategy::PolyExpDP ? "dp" : "grid"},
         {"alpha", model.bandwidth_factor},
         {"bandwidth", model.bandwidth},
         {"sigma_hat", model.sigma_hat},
         {"x_min", model.x_min},
         {"x_max", model.x_max},
         {"degenerate", model.degenerate},
         {"grid_positions", model.grid.positions},
         {"grid_values", model.grid.values}};
  return j;
}

FittedKdi model_from_json(const json& j) {
  FittedKdi model;
  model.kernel = kernel_from_json(j.at("kernel"));
  model.strategy = j.at("strategy").get<std::string>() == "dp" ? Strategy::PolyExpDP : Strategy::Grid;
  model.bandwidth_factor = j.at("alpha").get<double>();
  model.bandwidth = j.at("bandwidth").get<double>();
  model.sigma_hat = j.at("sigma_hat").get<double>();
  model.x_min = j.at("x_min").get<double>();
  model.x_max = j.at("x_max").get<double>();
  model.degenerate = j.at("degenerate").get<bool>();
  model.grid.positions = j.at("grid_positions").get<std::vector<double>>();
  model.grid.values = j.at("grid_values").get<std::vector<double>>();
  if (model.grid.positions.size() != model.grid.values.size()) {
    throw DataError("model grid positions/values length mismatch");
  }
  if (!model.degenerate && model.grid.size() < 2) {
    throw DataError("non-degenerate model must carry a grid");
  }
  return model;
}

} // namespace

std::string models_to_json(const std::map<std::string, FittedKdi>& models) {
  json columns = json::object();
  for (const auto& [name, model] : models) {
    columns[name] = model_to_json(model);
  }
  const json artifact{{"format", "kdi-model"}, {"version", kModelFormatVersion},
                      {"columns", columns}};
  return artifact.dump(2);
}

void save_models(const std::map<std::string, FittedKdi>& models, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  out << models_to_json(models) << '\n';
}

std::map<std::string, FittedKdi> models_from_json(const std::string& text) {
  json artifact;
  try {
    artifact = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model artifact is not valid JSON: ") + e.what());
  }
  try {
    if (artifact.at("format").get<std::string>() != "kdi-model") {
      throw DataError("not a kdi-model artifact");
    }
    if (artifact.at("version").get<int>() != kModelFormatVersion) {
      throw DataError("unsupported kdi-model version " +
                      std::to_string(artifact.at("version").get<int>()));
    }
    std::map<std::string, FittedKdi> models;
    for (const auto& [name, j] : artifact.at("columns").items()) {
      models[name] = model_from_json(j);
    }
    return models;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed kdi-model artifact: ") + e.what());
  }
}

std::map<std::string, FittedKdi> load_models(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open model file '" + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return models_from_json(text);
}

} // namespace kdi
