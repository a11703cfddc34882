#pragma once

#include <string>
#include <vector>

#include "invis/body2d.hpp"
#include "invis/body3d.hpp"
#include "invis/geom.hpp"
#include "invis/patch3.hpp"

namespace invis {

struct Surface2 {
  Curve2 curve;
  SurfaceRole role = SurfaceRole::Reflecting;
  int group = 0;
  Box2 box;
};

struct Surface3 {
  CylinderPatch3 patch;
  SurfaceRole role = SurfaceRole::Reflecting;
  int group = 0;
  Box3 box;
};

template <class S, class V>
struct SceneT {
  using Surface = S;
  using Vec = V;

  std::vector<S> surfaces;
  std::vector<std::string> group_names;
  Box<V> bbox;
  /// Points whose convex hull contains every surface; flows cover its shadow.
  std::vector<V> hull;
  double diameter = 1.0;
  int max_bounces = 64;
  Tolerances tol = Tolerances::for_diameter(1.0);
};

using Scene2 = SceneT<Surface2, Vec2>;
using Scene3 = SceneT<Surface3, Vec3>;

/// Computes surface boxes, the scene box, diameter and tolerances.
void finalize_scene(Scene2& scene);
void finalize_scene(Scene3& scene);

Scene2 make_scene(const Body2D& body);
Scene3 make_scene(const Body3D& body);

}  // namespace invis
