#pragma once

#include <optional>
#include <vector>

#include "invis/scene.hpp"

namespace invis {

enum class TraceStatus { Exited, SingularHit, BounceCapExceeded, WallAnomaly };

const char* to_string(TraceStatus s);

template <class V>
struct Reflection {
  V point;
  V v_in;
  V v_out;
  int surface_id = -1;
};

template <class V, class R>
struct TraceRecordT {
  R entry;
  std::vector<Reflection<V>> reflections;
  std::optional<R> exit;
  TraceStatus status = TraceStatus::Exited;
  /// Where tracing stopped for SingularHit and WallAnomaly.
  V stop_point{};
  int stop_surface = -1;
};

using TraceRecord2 = TraceRecordT<Vec2, Ray2>;
using TraceRecord3 = TraceRecordT<Vec3, Ray3>;

std::optional<Hit2> nearest_hit(const Scene2& scene, const Ray2& ray, double t_eps);
std::optional<Hit3> nearest_hit(const Scene3& scene, const Ray3& ray, double t_eps);

/// The ray origin must lie outside the scene box or on its boundary.
TraceRecord2 trace(const Scene2& scene, const Ray2& ray);
TraceRecord3 trace(const Scene3& scene, const Ray3& ray);

/// Parameter at which a ray leaves the scene box (0 if it never enters).
double exit_parameter(const Box2& box, const Ray2& ray);
double exit_parameter(const Box3& box, const Ray3& ray);

}  // namespace invis
