#pragma once

#include <optional>
#include <vector>

#include "invis/geom.hpp"

namespace invis {

enum class TrimKind { Range, Order, BelowCurve, AboveCurve };

/// Pointwise trim constraint on sign-resolved coordinates.
///   Range:      lo <= s*x[k] <= hi
///   Order:      s*x[k] <= s2*x[k2]
///   BelowCurve: s2*x[k2] <= F(s*x[k]),  F(t) = qa*t^2 + qb*t + qc
///   AboveCurve: s2*x[k2] >= F(s*x[k])
struct Trim {
  TrimKind kind = TrimKind::Range;
  int k = 0;
  double s = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  int k2 = 0;
  double s2 = 1.0;
  double qa = 0.0, qb = 0.0, qc = 0.0;

  static Trim range(int k, double s, double lo, double hi) {
    Trim t;
    t.kind = TrimKind::Range;
    t.k = k;
    t.s = s;
    t.lo = lo;
    t.hi = hi;
    return t;
  }
  static Trim order(int k, double s, int k2, double s2) {
    Trim t;
    t.kind = TrimKind::Order;
    t.k = k;
    t.s = s;
    t.k2 = k2;
    t.s2 = s2;
    return t;
  }
  static Trim curve(bool below, int k, double s, int k2, double s2, double qa, double qb, double qc) {
    Trim t;
    t.kind = below ? TrimKind::BelowCurve : TrimKind::AboveCurve;
    t.k = k;
    t.s = s;
    t.k2 = k2;
    t.s2 = s2;
    t.qa = qa;
    t.qb = qb;
    t.qc = qc;
    return t;
  }

  /// Non-negative iff the constraint holds.
  double margin(const Vec3& p) const;
};

/// Base curve in the (u_axis, v_axis) coordinate plane, extruded along w_axis
/// over [w_lo, w_hi] and cut by trims.
struct CylinderPatch3 {
  int u_axis = 0;
  int v_axis = 1;
  int w_axis = 2;
  Curve2 base;
  double w_lo = 0.0;
  double w_hi = 0.0;
  std::vector<Trim> trims;

  Vec3 lift(Vec2 uv, double w) const;
  Vec2 project(const Vec3& p) const { return {p[u_axis], p[v_axis]}; }
  double trim_margin(const Vec3& p) const;
  Box3 bounds() const;
};

using ParabolicCylinderPatch3 = CylinderPatch3;

std::optional<Hit3> intersect_ray_patch3(const Ray3& ray, const CylinderPatch3& patch, const Tolerances& tol);

}  // namespace invis
