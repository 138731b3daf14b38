#pragma once

#include "hilbcalc/surface_model.hpp"

#include <string>
#include <vector>

namespace hilbcalc {

/// Names of the models compiled into the library: P2, P1xP1, K3like, Abelianlike.
std::vector<std::string> builtin_model_names();
/// Parsed and validated; throws std::out_of_range for an unknown name.
const SurfaceModel& builtin_model(const std::string& name);
/// The raw JSON document of a builtin model.
const std::string& builtin_model_source(const std::string& name);

}  // namespace hilbcalc
