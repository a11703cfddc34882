#include "invis/geom.hpp"

#include <algorithm>
#include <cmath>

#include "invis/errors.hpp"

namespace invis {

Vec2 reflect(Vec2 v, Vec2 n) { return v - n * (2.0 * dot(v, n)); }

Vec3 reflect(const Vec3& v, const Vec3& n) { return v - n * (2.0 * dot(v, n)); }

ParabolicArc2 transform(const Isometry2& g, const ParabolicArc2& arc) {
  ParabolicArc2 out;
  out.parabola.focus = g(arc.parabola.focus);
  out.parabola.axis = g.linear(arc.parabola.axis);
  out.parabola.f = arc.parabola.f;
  if (g.det() < 0) {
    out.t_min = -arc.t_max;
    out.t_max = -arc.t_min;
  } else {
    out.t_min = arc.t_min;
    out.t_max = arc.t_max;
  }
  return out;
}

Segment2 transform(const Isometry2& g, const Segment2& s) { return {g(s.a), g(s.b)}; }

Curve2 transform(const Isometry2& g, const Curve2& c) {
  return std::visit([&](const auto& x) -> Curve2 { return transform(g, x); }, c);
}

Parabola2 parabola_from_focus_and_point(Vec2 focus, Vec2 p, Vec2 opening) {
  const Vec2 d = p - focus;
  const double r = norm(d);
  const double f = 0.5 * (r - dot(d, opening));
  if (!(r > 0.0) || f <= 1e-15 * r) {
    throw DegenerateParabola("point lies on the opening ray from the focus");
  }
  return {focus, opening, f};
}

int ray_parabola_roots(const Ray2& ray, const Parabola2& par, double disc_eps, double out[2]) {
  const Vec2 rel = ray.origin - par.vertex();
  const Vec2 eu = par.e_u();
  const double u0 = dot(rel, eu);
  const double w0 = dot(rel, par.axis);
  const double du = dot(ray.dir, eu);
  const double dw = dot(ray.dir, par.axis);
  const double a = du * du;
  const double b = 2.0 * u0 * du - 4.0 * par.f * dw;
  const double c = u0 * u0 - 4.0 * par.f * w0;

  if (a == 0.0) {
    if (b == 0.0) return 0;
    out[0] = -c / b;
    return 1;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || std::abs(disc) < disc_eps) return 0;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double t1 = q / a;
  double t2 = (q != 0.0) ? c / q : t1;
  if (t1 > t2) std::swap(t1, t2);
  out[0] = t1;
  out[1] = t2;
  return 2;
}

namespace {

double rim_distance(double u, double lo, double hi) { return std::min(u - lo, hi - u); }

}  // namespace

std::optional<Hit2> intersect_ray_parabola(const Ray2& ray, const ParabolicArc2& arc, const Tolerances& tol) {
  double roots[2];
  const int n = ray_parabola_roots(ray, arc.parabola, tol.disc_eps, roots);
  for (int k = 0; k < n; ++k) {
    const double t = roots[k];
    if (!(t > tol.t_eps)) continue;
    const Vec2 p = ray.origin + ray.dir * t;
    const double u = arc.parabola.local_u(p);
    if (u < arc.t_min || u > arc.t_max) continue;
    Hit2 h;
    h.t = t;
    h.point = p;
    h.normal = arc.parabola.normal_at(u);
    if (dot(h.normal, ray.dir) > 0.0) h.normal = -h.normal;
    h.at_boundary = rim_distance(u, arc.t_min, arc.t_max) < tol.eps_sing;
    return h;
  }
  return std::nullopt;
}

std::optional<Hit2> intersect_ray_segment(const Ray2& ray, const Segment2& seg, const Tolerances& tol) {
  const Vec2 e = seg.b - seg.a;
  const double len = norm(e);
  const double denom = cross(ray.dir, e);
  if (len == 0.0 || std::abs(denom) <= 1e-15 * len) return std::nullopt;
  const Vec2 w = seg.a - ray.origin;
  const double t = cross(w, e) / denom;
  const double s = cross(w, ray.dir) / denom;
  if (!(t > tol.t_eps) || s < 0.0 || s > 1.0) return std::nullopt;
  Hit2 h;
  h.t = t;
  h.point = ray.origin + ray.dir * t;
  h.normal = perp(e / len);
  if (dot(h.normal, ray.dir) > 0.0) h.normal = -h.normal;
  h.at_boundary = std::min(s, 1.0 - s) * len < tol.eps_sing;
  return h;
}

std::optional<Hit2> intersect_ray_curve(const Ray2& ray, const Curve2& curve, const Tolerances& tol) {
  if (const auto* arc = std::get_if<ParabolicArc2>(&curve)) return intersect_ray_parabola(ray, *arc, tol);
  return intersect_ray_segment(ray, std::get<Segment2>(curve), tol);
}

Vec2 apply_homothety(const Homothety2& h, Vec2 p) { return h.center + (p - h.center) * h.ratio; }

std::vector<Vec2> sample_curve(const Curve2& c, int n) {
  std::vector<Vec2> pts;
  n = std::max(n, 2);
  pts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    if (const auto* arc = std::get_if<ParabolicArc2>(&c)) {
      pts.push_back(arc->parabola.point_at(arc->t_min + s * (arc->t_max - arc->t_min)));
    } else {
      const auto& seg = std::get<Segment2>(c);
      pts.push_back(seg.a + (seg.b - seg.a) * s);
    }
  }
  return pts;
}

Box2 curve_bounds(const Curve2& c) {
  Box2 box;
  if (const auto* arc = std::get_if<ParabolicArc2>(&c)) {
    const auto& par = arc->parabola;
    box.extend(arc->start());
    box.extend(arc->end());
    // Interior extremes where the tangent is parallel to a coordinate axis.
    const Vec2 eu = par.e_u();
    for (int k = 0; k < 2; ++k) {
      const double ax = par.axis[k];
      if (ax == 0.0) continue;
      const double u = -2.0 * par.f * eu[k] / ax;
      if (u > arc->t_min && u < arc->t_max) box.extend(par.point_at(u));
    }
  } else {
    const auto& seg = std::get<Segment2>(c);
    box.extend(seg.a);
    box.extend(seg.b);
  }
  return box;
}

}  // namespace invis
