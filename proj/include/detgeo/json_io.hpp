#pragma once

#include <json.hpp>

#include "detgeo/grassmann.hpp"

namespace detgeo {

/// Matrices travel as {"rows": r, "cols": c, "re": [...], "im": [...]} with
/// row-major entry order.
nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const GrassmannPoint& p);
GrassmannPoint point_from_json(const nlohmann::json& j);

nlohmann::json frame_to_json(const Frame& w);
Frame frame_from_json(const nlohmann::json& j);

}  // namespace detgeo
