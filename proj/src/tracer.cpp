#include "invis/tracer.hpp"

#include <cmath>
#include <limits>

#include "invis/errors.hpp"

namespace invis {

const char* to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::Exited:
      return "exited";
    case TraceStatus::SingularHit:
      return "singular";
    case TraceStatus::BounceCapExceeded:
      return "bounce-cap";
    case TraceStatus::WallAnomaly:
      return "wall";
  }
  return "?";
}

namespace {

std::optional<Hit2> hit_surface(const Surface2& s, const Ray2& r, const Tolerances& tol) {
  return intersect_ray_curve(r, s.curve, tol);
}

std::optional<Hit3> hit_surface(const Surface3& s, const Ray3& r, const Tolerances& tol) {
  return intersect_ray_patch3(r, s.patch, tol);
}

template <class Scene, class Ray>
auto nearest_impl(const Scene& scene, const Ray& ray, double t_eps) {
  using V = typename Scene::Vec;
  std::optional<HitT<V>> best;
  double best_t = std::numeric_limits<double>::infinity();
  Tolerances tol = scene.tol;
  tol.t_eps = t_eps;
  for (std::size_t id = 0; id < scene.surfaces.size(); ++id) {
    const auto& s = scene.surfaces[id];
    double t0 = 0.0, t1 = best_t;
    if (!s.box.clip(ray.origin, ray.dir, t0, t1)) continue;
    auto h = hit_surface(s, ray, tol);
    // Strict comparison: tangent mirrors near a piece tip can be hit at
    // parameters only ~1e-14 apart. Exact ties go to the lower id.
    if (!h || !(h->t < best_t)) continue;
    h->surface_id = static_cast<int>(id);
    best_t = h->t;
    best = h;
  }
  return best;
}

template <class Scene, class Ray>
auto trace_impl(const Scene& scene, const Ray& ray) {
  using V = typename Scene::Vec;
  TraceRecordT<V, Ray> rec;
  rec.entry = ray;
  if (scene.bbox.contains(ray.origin, -scene.tol.eps_sing))
    throw InvalidArgument("ray origin lies inside the scene box");
  Ray cur = ray;
  for (;;) {
    const auto hit = nearest_impl(scene, cur, scene.tol.t_eps);
    if (!hit) {
      rec.exit = cur;
      rec.status = TraceStatus::Exited;
      return rec;
    }
    const auto& surf = scene.surfaces[hit->surface_id];
    if (hit->at_boundary || surf.role != SurfaceRole::Reflecting) {
      rec.status = hit->at_boundary ? TraceStatus::SingularHit : TraceStatus::WallAnomaly;
      rec.stop_point = hit->point;
      rec.stop_surface = hit->surface_id;
      return rec;
    }
    if (static_cast<int>(rec.reflections.size()) >= scene.max_bounces) {
      rec.status = TraceStatus::BounceCapExceeded;
      rec.stop_point = hit->point;
      rec.stop_surface = hit->surface_id;
      return rec;
    }
    const V out = reflect(cur.dir, hit->normal);
    rec.reflections.push_back({hit->point, cur.dir, out, hit->surface_id});
    cur = Ray{hit->point, out};
  }
}

template <class B, class R>
double exit_impl(const B& box, const R& ray) {
  double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
  if (!box.clip(ray.origin, ray.dir, t0, t1)) return 0.0;
  return t1;
}

}  // namespace

std::optional<Hit2> nearest_hit(const Scene2& scene, const Ray2& ray, double t_eps) {
  return nearest_impl(scene, ray, t_eps);
}
std::optional<Hit3> nearest_hit(const Scene3& scene, const Ray3& ray, double t_eps) {
  return nearest_impl(scene, ray, t_eps);
}
TraceRecord2 trace(const Scene2& scene, const Ray2& ray) { return trace_impl(scene, ray); }
TraceRecord3 trace(const Scene3& scene, const Ray3& ray) { return trace_impl(scene, ray); }
double exit_parameter(const Box2& box, const Ray2& ray) { return exit_impl(box, ray); }
double exit_parameter(const Box3& box, const Ray3& ray) { return exit_impl(box, ray); }

}  // namespace invis
