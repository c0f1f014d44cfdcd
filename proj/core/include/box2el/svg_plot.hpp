#pragma once

#include <string>

#include "box2el/embedding.hpp"

namespace box2el {

// Render a 2-d store as SVG: one labeled rectangle per embedded concept,
// shaded rectangles for role head/tail boxes, individual points, and an
// arrow per non-zero bump vector. Throws DataError when dim != 2.
std::string render_svg(const EmbeddingStore& store);

}  // namespace box2el
