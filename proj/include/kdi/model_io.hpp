#pragma once

#include <map>
#include <string>

#include "kdi/transform.hpp"

namespace kdi {

inline constexpr int kModelFormatVersion = 1;

//! Serialize fitted transforms to a versioned JSON artifact. Numbers are
//! written with shortest round-trip precision, so a loaded model
//! reproduces transform outputs bit-exactly. Exact-strategy fits carry no
//! grid and are rejected.
std::string models_to_json(const std::map<std::string, FittedKdi>& models);
void save_models(const std::map<std::string, FittedKdi>& models, const std::string& path);

//! Load a model artifact; throws DataError on a missing file, unknown
//! format, or version mismatch.
std::map<std::string, FittedKdi> load_models(const std::string& path);
std::map<std::string, FittedKdi> models_from_json(const std::string& text);

} // namespace kdi
