#include "invis/scene.hpp"

#include <algorithm>

namespace invis {

namespace {

template <class Scene, class BoundsFn>
void finalize_impl(Scene& scene, BoundsFn bounds) {
  using V = typename Scene::Vec;
  Box<V> all;
  for (auto& s : scene.surfaces) {
    s.box = bounds(s);
    all.extend(s.box);
  }
  for (const auto& h : scene.hull) all.extend(h);
  if (scene.bbox.empty) scene.bbox = all;
  if (scene.hull.empty() && !scene.bbox.empty) {
    if constexpr (std::is_same_v<V, Vec2>) {
      const V lo = scene.bbox.lo, hi = scene.bbox.hi;
      scene.hull = {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}};
    } else {
      for (int m = 0; m < 8; ++m) {
        V p;
        for (int k = 0; k < 3; ++k) p[k] = (m >> k & 1) ? scene.bbox.hi[k] : scene.bbox.lo[k];
        scene.hull.push_back(p);
      }
    }
  }
  const double d = scene.bbox.empty ? 0.0 : scene.bbox.max_extent();
  scene.diameter = d > 0.0 ? d : 1.0;
  scene.tol = Tolerances::for_diameter(scene.diameter);
  const double pad = scene.tol.eps_sing;
  for (auto& s : scene.surfaces) s.box = s.box.inflated(pad);
}

}  // namespace

void finalize_scene(Scene2& scene) {
  finalize_impl(scene, [](const Surface2& s) { return curve_bounds(s.curve); });
}

void finalize_scene(Scene3& scene) {
  finalize_impl(scene, [](const Surface3& s) {
    Box3 b = s.patch.bounds();
    return b;
  });
}

Scene2 make_scene(const Body2D& body) {
  Scene2 sc;
  sc.group_names = body.group_names;
  for (const auto& b : body.surfaces) sc.surfaces.push_back({b.curve, b.role, b.group, {}});
  sc.bbox = body.bbox;
  sc.hull = body.hull;
  finalize_scene(sc);
  return sc;
}

Scene3 make_scene(const Body3D& body) {
  Scene3 sc;
  for (const auto& s : body.subs) sc.group_names.push_back(s.name);
  for (const auto& p : body.patches) sc.surfaces.push_back({p.patch, p.role, p.sub, {}});
  sc.bbox = body.bbox;
  finalize_scene(sc);
  return sc;
}

}  // namespace invis
