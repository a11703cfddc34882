#include "invis/patch3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace invis {

double Trim::margin(const Vec3& p) const {
  const double a = s * p[k];
  switch (kind) {
    case TrimKind::Range:
      return std::min(a - lo, hi - a);
    case TrimKind::Order:
      return s2 * p[k2] - a;
    case TrimKind::BelowCurve:
      return (qa * a + qb) * a + qc - s2 * p[k2];
    case TrimKind::AboveCurve:
      return s2 * p[k2] - ((qa * a + qb) * a + qc);
  }
  return 0.0;
}

Vec3 CylinderPatch3::lift(Vec2 uv, double w) const {
  Vec3 p;
  p[u_axis] = uv.x;
  p[v_axis] = uv.y;
  p[w_axis] = w;
  return p;
}

double CylinderPatch3::trim_margin(const Vec3& p) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : trims) m = std::min(m, t.margin(p));
  return m;
}

Box3 CylinderPatch3::bounds() const {
  const Box2 b2 = curve_bounds(base);
  Box3 box;
  box.extend(lift(b2.lo, w_lo));
  box.extend(lift(b2.hi, w_hi));
  return box;
}

std::optional<Hit3> intersect_ray_patch3(const Ray3& ray, const CylinderPatch3& patch, const Tolerances& tol) {
  const Vec2 o2{ray.origin[patch.u_axis], ray.origin[patch.v_axis]};
  const Vec2 d2{ray.dir[patch.u_axis], ray.dir[patch.v_axis]};
  const double len = norm(d2);
  if (len < 1e-12) return std::nullopt;  // parallel to the extrusion axis
  const Ray2 r2{o2, d2 / len};

  double cand[2];
  int n = 0;
  const auto* arc = std::get_if<ParabolicArc2>(&patch.base);
  const auto* seg = std::get_if<Segment2>(&patch.base);
  if (arc) {
    n = ray_parabola_roots(r2, arc->parabola, tol.disc_eps, cand);
  } else {
    const Vec2 e = seg->b - seg->a;
    const double denom = cross(r2.dir, e);
    if (std::abs(denom) > 1e-15 * norm(e)) {
      cand[0] = cross(seg->a - r2.origin, e) / denom;
      n = 1;
    }
  }

  for (int k = 0; k < n; ++k) {
    const double t = cand[k] / len;
    if (!(t > tol.t_eps)) continue;
    const Vec3 p = ray.origin + ray.dir * t;
    const Vec2 uv{p[patch.u_axis], p[patch.v_axis]};
    double rim;
    Vec2 n2;
    if (arc) {
      const double u = arc->parabola.local_u(uv);
      if (u < arc->t_min || u > arc->t_max) continue;
      rim = std::min(u - arc->t_min, arc->t_max - u);
      n2 = arc->parabola.normal_at(u);
    } else {
      const Vec2 e = seg->b - seg->a;
      const double el = norm(e);
      const double s = dot(uv - seg->a, e) / (el * el);
      if (s < 0.0 || s > 1.0) continue;
      rim = std::min(s, 1.0 - s) * el;
      n2 = perp(e / el);
    }
    const double w = p[patch.w_axis];
    if (w < patch.w_lo || w > patch.w_hi) continue;
    const double tm = patch.trim_margin(p);
    if (tm < 0.0) continue;

    Hit3 h;
    h.t = t;
    h.point = p;
    Vec3 nrm;
    nrm[patch.u_axis] = n2.x;
    nrm[patch.v_axis] = n2.y;
    if (dot(nrm, ray.dir) > 0.0) nrm = -nrm;
    h.normal = nrm;
    h.at_boundary = std::min({rim, w - patch.w_lo, patch.w_hi - w, tm}) < tol.eps_sing;
    return h;
  }
  return std::nullopt;
}

}  // namespace invis
