#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "invis/vec.hpp"

namespace invis {

struct Ray2 {
  Vec2 origin;
  Vec2 dir;
};

struct Ray3 {
  Vec3 origin;
  Vec3 dir;
};

/// Tolerances derived from the scene diameter.
struct Tolerances {
  double t_eps = 1e-9;     // minimum advance after a reflection
  double eps_sing = 1e-9;  // rim proximity
  double disc_eps = 1e-14; // grazing discriminant band

  static Tolerances for_diameter(double d) { return {1e-9 * d, 1e-9 * d, 1e-14 * d * d}; }
};

template <class V>
struct HitT {
  double t = 0.0;
  V point{};
  V normal{};
  int surface_id = -1;
  bool at_boundary = false;
};

using Hit2 = HitT<Vec2>;
using Hit3 = HitT<Vec3>;

Vec2 reflect(Vec2 v, Vec2 n);
Vec3 reflect(const Vec3& v, const Vec3& n);

/// Parabola with focus F, unit opening direction `axis` and focal length f.
/// Local frame: e_u = (axis.y, -axis.x), vertex V = F - f*axis,
/// point(u) = V + u*e_u + u^2/(4f)*axis.
struct Parabola2 {
  Vec2 focus;
  Vec2 axis;
  double f = 0.0;

  Vec2 e_u() const { return {axis.y, -axis.x}; }
  Vec2 vertex() const { return focus - axis * f; }
  Vec2 point_at(double u) const { return vertex() + e_u() * u + axis * (u * u / (4.0 * f)); }
  double local_u(Vec2 p) const { return dot(p - vertex(), e_u()); }
  double local_w(Vec2 p) const { return dot(p - vertex(), axis); }
  /// Distance to focus minus distance to directrix; zero on the curve.
  double residual(Vec2 p) const { return norm(p - focus) - (local_w(p) + f); }
  /// Unit normal on the convex side.
  Vec2 normal_at(double u) const { return normalized(e_u() * u - axis * (2.0 * f)); }
  /// Height along the axis of the point with transverse coordinate u.
  double height(double u) const { return u * u / (4.0 * f); }
};

struct ParabolicArc2 {
  Parabola2 parabola;
  double t_min = 0.0;
  double t_max = 0.0;

  Vec2 start() const { return parabola.point_at(t_min); }
  Vec2 end() const { return parabola.point_at(t_max); }
};

struct Segment2 {
  Vec2 a;
  Vec2 b;
};

using Curve2 = std::variant<ParabolicArc2, Segment2>;

struct Homothety2 {
  Vec2 center;
  double ratio = 1.0;
};

/// x -> m*x + b with m orthogonal.
struct Isometry2 {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  Vec2 b{};

  static Isometry2 rotation(double cos_a, double sin_a) { return {cos_a, -sin_a, sin_a, cos_a, {}}; }
  /// Reflection across the line through the origin with unit direction d.
  static Isometry2 line_reflection(Vec2 d) {
    return {2 * d.x * d.x - 1, 2 * d.x * d.y, 2 * d.x * d.y, 2 * d.y * d.y - 1, {}};
  }
  static Isometry2 central() { return {-1, 0, 0, -1, {}}; }
  static Isometry2 diag(double sx, double sy) { return {sx, 0, 0, sy, {}}; }

  Vec2 linear(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  Vec2 operator()(Vec2 p) const { return linear(p) + b; }
  double det() const { return m00 * m11 - m01 * m10; }
  Isometry2 inverse() const {
    Isometry2 t{m00, m10, m01, m11, {}};
    t.b = -t.linear(b);
    return t;
  }
  Isometry2 then(const Isometry2& o) const {
    Isometry2 r{o.m00 * m00 + o.m01 * m10, o.m00 * m01 + o.m01 * m11,
                o.m10 * m00 + o.m11 * m10, o.m10 * m01 + o.m11 * m11, {}};
    r.b = o(b);
    return r;
  }
};

ParabolicArc2 transform(const Isometry2& g, const ParabolicArc2& arc);
Segment2 transform(const Isometry2& g, const Segment2& s);
Curve2 transform(const Isometry2& g, const Curve2& c);

Parabola2 parabola_from_focus_and_point(Vec2 focus, Vec2 p, Vec2 opening);

/// Roots of the ray/parabola quadratic, ascending. Returns how many were written.
/// Grazing contact (|disc| below disc_eps) yields no roots.
int ray_parabola_roots(const Ray2& ray, const Parabola2& par, double disc_eps, double out[2]);

std::optional<Hit2> intersect_ray_parabola(const Ray2& ray, const ParabolicArc2& arc, const Tolerances& tol);
std::optional<Hit2> intersect_ray_segment(const Ray2& ray, const Segment2& seg, const Tolerances& tol);
std::optional<Hit2> intersect_ray_curve(const Ray2& ray, const Curve2& curve, const Tolerances& tol);

Vec2 apply_homothety(const Homothety2& h, Vec2 p);

/// Evenly spaced points along a curve, endpoints included.
std::vector<Vec2> sample_curve(const Curve2& c, int n);
Box2 curve_bounds(const Curve2& c);

}  // namespace invis
