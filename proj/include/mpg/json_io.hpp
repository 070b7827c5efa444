#pragma once

#include <string>

#include "mpg/instance.hpp"

namespace mpg {

// Instance documents: graph_g / graph_h / score / optional start, plus an
// optional "numeric_mode": "float64" extension used by the gallery export.
GameInstance parse_instance(const std::string& json_text);
GameInstance parse_instance_file(const std::string& path);

std::string serialize_instance(const GameInstance& inst, bool pretty = false);

}  // namespace mpg
