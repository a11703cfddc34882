#pragma once

#include <string>
#include <vector>

#include "invis/io/scene_file.hpp"
#include "invis/tracer.hpp"

namespace invis::io {

struct SvgOptions {
  double width_px = 800.0;
  int arc_samples = 128;
  bool draw_solids = true;
};

/// 2D scenes only; throws Unsupported for 3D.
std::string export_svg(const LoadedScene& scene, const std::vector<TraceRecord2>& rays, const SvgOptions& opt = {});

}  // namespace invis::io
