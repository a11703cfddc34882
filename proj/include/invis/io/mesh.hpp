#pragma once

#include <string>

#include "invis/io/scene_file.hpp"

namespace invis::io {

struct MeshOptions {
  int nu = 32;
  int nv = 8;
};

struct MeshStats {
  std::size_t vertices = 0;
  std::size_t faces = 0;
};

/// Wavefront OBJ of every trimmed patch; 3D scenes only, throws Unsupported for 2D.
std::string export_obj(const LoadedScene& scene, const MeshOptions& opt = {}, MeshStats* stats = nullptr);

}  // namespace invis::io
