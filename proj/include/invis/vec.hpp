#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace invis {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;

  constexpr double operator[](int i) const { return i == 0 ? x : y; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 normalized(Vec2 v) { return v / norm(v); }
/// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

template <class V>
struct Box {
  static constexpr int dim = std::is_same_v<V, Vec2> ? 2 : 3;

  V lo{};
  V hi{};
  bool empty = true;

  void extend(const V& p) {
    if (empty) {
      lo = hi = p;
      empty = false;
      return;
    }
    for (int i = 0; i < dim; ++i) {
      set(lo, i, std::min(lo[i], p[i]));
      set(hi, i, std::max(hi[i], p[i]));
    }
  }
  void extend(const Box& b) {
    if (!b.empty) {
      extend(b.lo);
      extend(b.hi);
    }
  }
  Box inflated(double pad) const {
    Box b = *this;
    for (int i = 0; i < dim; ++i) {
      set(b.lo, i, lo[i] - pad);
      set(b.hi, i, hi[i] + pad);
    }
    return b;
  }
  bool contains(const V& p, double slack = 0.0) const {
    if (empty) return false;
    for (int i = 0; i < dim; ++i) {
      if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
    }
    return true;
  }
  V center() const { return (lo + hi) * 0.5; }
  /// Largest extent along any coordinate axis.
  double max_extent() const {
    double e = 0.0;
    for (int i = 0; i < dim; ++i) e = std::max(e, hi[i] - lo[i]);
    return e;
  }
  double half_diagonal() const { return 0.5 * norm(hi - lo); }

  /// Slab test; returns the parameter interval of the ray inside the box.
  bool clip(const V& origin, const V& dir, double& t0, double& t1) const {
    if (empty) return false;
    for (int i = 0; i < dim; ++i) {
      if (dir[i] == 0.0) {
        if (origin[i] < lo[i] || origin[i] > hi[i]) return false;
        continue;
      }
      const double inv = 1.0 / dir[i];
      double ta = (lo[i] - origin[i]) * inv;
      double tb = (hi[i] - origin[i]) * inv;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return false;
    }
    return true;
  }

 private:
  static void set(V& v, int i, double value) {
    if constexpr (std::is_same_v<V, Vec2>) {
      (i == 0 ? v.x : v.y) = value;
    } else {
      v[i] = value;
    }
  }
};

using Box2 = Box<Vec2>;
using Box3 = Box<Vec3>;

}  // namespace invis
