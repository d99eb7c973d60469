#pragma once

#include <string>
#include <vector>

#include "flatgap/surface_json.hpp"

namespace flatgap {

// Bundled surface definitions: torus, l_2_2, golden_l, octagon, stsurf_3.
std::vector<std::string> corpus_list();

// Raw JSON document for a bundled surface; throws UnknownSurface.
const std::string& corpus_json(const std::string& name);

// Builds the bundled surface (exact model for the square-tiled ones, float
// model for golden_l and octagon).
AnySurface corpus_get(const std::string& name);

}  // namespace flatgap
