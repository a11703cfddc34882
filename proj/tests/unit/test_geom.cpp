#include <cmath>
#include <numbers>

#include "doctest.h"
#include "invis/errors.hpp"
#include "invis/geom.hpp"
#include "invis/patch3.hpp"
#include "invis/rng.hpp"
#include "invis/scene.hpp"
#include "oracle.hpp"

using namespace invis;

namespace {

// y = x^2/2 + 1/2 on 1/2 <= x <= 1: focus (0,1), f = 1/2.
ParabolicArc2 unit_arc() { return {{{0.0, 1.0}, {0.0, 1.0}, 0.5}, 0.5, 1.0}; }

double rnd(std::uint64_t seed, std::uint64_t i, std::uint64_t slot, double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, i, slot);
}

Vec2 random_unit(std::uint64_t seed, std::uint64_t i, std::uint64_t slot) {
  const double a = rnd(seed, i, slot, 0.0, 2.0 * std::numbers::pi);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

TEST_CASE("reflect flips the normal component") {
  const Vec2 r1 = reflect(Vec2{0, -1}, Vec2{0, 1});
  CHECK(r1.x == 0.0);
  CHECK(r1.y == 1.0);
  const double s = std::sqrt(0.5);
  const Vec2 r2 = reflect(Vec2{1, 0}, Vec2{-s, s});
  CHECK(r2.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r2.y == doctest::Approx(1.0));
  const Vec3 r3 = reflect(Vec3{1, 2, -3}, Vec3{0, 0, 1});
  CHECK(r3 == Vec3{1, 2, 3});
}

TEST_CASE("reflect is an isometric involution") {
  double worst_norm = 0.0, worst_inv = 0.0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const Vec2 v = random_unit(3, i, 0) * rnd(3, i, 1, 0.1, 10.0);
    const Vec2 n = random_unit(3, i, 2);
    const Vec2 r = reflect(v, n);
    worst_norm = std::max(worst_norm, std::abs(norm(r) - norm(v)) / norm(v));
    worst_inv = std::max(worst_inv, norm(reflect(r, n) - v) / norm(v));
  }
  CHECK(worst_norm <= 4e-16 * 4);
  CHECK(worst_inv <= 4e-16 * 4);
}

TEST_CASE("parabola from focus and point") {
  const Parabola2 p = parabola_from_focus_and_point({0, 1}, {-1, 1}, {0, 1});
  CHECK(p.f == doctest::Approx(0.5));
  CHECK(p.vertex().y == doctest::Approx(0.5));
  for (double x : {-1.0, -0.3, 0.0, 0.7}) CHECK(p.point_at(x).y == doctest::Approx(0.5 * x * x + 0.5));

  // Through (-1/2, 1) with focus (0, 1): y = x^2 + 3/4.
  const Parabola2 q = parabola_from_focus_and_point({0, 1}, {-0.5, 1}, {0, 1});
  CHECK(q.f == doctest::Approx(0.25));
  for (double x : {-0.5, 0.1, 0.4}) CHECK(q.point_at(x).y == doctest::Approx(x * x + 0.75));

  CHECK_THROWS_AS(parabola_from_focus_and_point({0, 1}, {0, 3}, {0, 1}), DegenerateParabola);
  CHECK_THROWS_AS(parabola_from_focus_and_point({0, 1}, {0, 1}, {0, 1}), DegenerateParabola);
  CHECK_NOTHROW(parabola_from_focus_and_point({0, 1}, {0, -3}, {0, 1}));
}

TEST_CASE("arc hit, miss and rim flag") {
  const auto tol = Tolerances::for_diameter(2.0);
  const auto hit = intersect_ray_parabola({{0.75, 2.0}, {0, -1}}, unit_arc(), tol);
  REQUIRE(hit);
  CHECK(hit->point.x == doctest::Approx(0.75));
  CHECK(hit->point.y == doctest::Approx(0.78125).epsilon(1e-15));
  CHECK(hit->t == doctest::Approx(2.0 - 0.78125));
  CHECK(dot(hit->normal, Vec2{0, -1}) < 0.0);
  CHECK(norm(hit->normal) == doctest::Approx(1.0));
  CHECK_FALSE(hit->at_boundary);

  CHECK_FALSE(intersect_ray_parabola({{0.3, 2.0}, {0, -1}}, unit_arc(), tol));

  const auto rim = intersect_ray_parabola({{0.5 + 1e-14, 2.0}, {0, -1}}, unit_arc(), tol);
  REQUIRE(rim);
  CHECK(rim->at_boundary);

  // Starting on the curve must not report the start point again.
  const auto again = intersect_ray_parabola({hit->point, {0, 1}}, unit_arc(), tol);
  CHECK_FALSE(again);
}

TEST_CASE("grazing contact is a miss") {
  const auto tol = Tolerances::for_diameter(2.0);
  // Tangent line to y = x^2/2 + 1/2 at x = 0.75 has slope 0.75.
  const Vec2 p{0.75, 0.78125};
  const Vec2 d = normalized(Vec2{1, 0.75});
  CHECK_FALSE(intersect_ray_parabola({p - d * 1.0, d}, unit_arc(), tol));
}

TEST_CASE("focal property: axis-parallel rays reflect through the focus") {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Vec2 axis = random_unit(5, i, 0);
    const Parabola2 par{{rnd(5, i, 1, -1, 1), rnd(5, i, 2, -1, 1)}, axis, rnd(5, i, 3, 0.05, 2.0)};
    const ParabolicArc2 arc{par, -3.0, 3.0};
    const double u = rnd(5, i, 4, -2.9, 2.9);
    const Vec2 start = par.point_at(u) + axis * 20.0;
    const auto h = intersect_ray_parabola({start, -axis}, arc, Tolerances::for_diameter(10.0));
    REQUIRE(h);
    const Vec2 out = reflect(-axis, h->normal);
    const Vec2 to_f = par.focus - h->point;
    worst = std::max(worst, std::abs(cross(out, to_f)) / (1.0 + norm(to_f)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("hits lie on the curve and match a sweep") {
  const auto tol = Tolerances::for_diameter(4.0);
  double worst_res = 0.0;
  int compared = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Vec2 axis = random_unit(9, i, 0);
    const Parabola2 par{{rnd(9, i, 1, -0.5, 0.5), rnd(9, i, 2, -0.5, 0.5)}, axis, rnd(9, i, 3, 0.2, 1.0)};
    const ParabolicArc2 arc{par, -1.0, 1.0};
    const Vec2 d = random_unit(9, i, 4);
    const Ray2 ray{Vec2{0, 0} - d * 3.0 + perp(d) * rnd(9, i, 5, -1.5, 1.5), d};
    const auto h = intersect_ray_parabola(ray, arc, tol);
    if (h) worst_res = std::max(worst_res, std::abs(par.residual(h->point)));
    if (i % 20 != 0) continue;
    Scene2 sc;
    sc.surfaces.push_back({arc, SurfaceRole::Reflecting, 0, {}});
    finalize_scene(sc);
    const auto path = oracle::trace(sc, ray, 20000, 1);
    const bool sweep_hit = !path.points.empty();
    // The sweep cannot see a double crossing within one step; skip near-grazing rays.
    double roots[2];
    const int nr = ray_parabola_roots(ray, par, 0.0, roots);
    if (nr == 2 && std::abs(roots[1] - roots[0]) < 1e-3) continue;
    ++compared;
    REQUIRE(sweep_hit == h.has_value());
    if (h) CHECK(norm(path.points.front() - h->point) <= 1e-9);
  }
  CHECK(worst_res <= 1e-12);
  CHECK(compared > 400);
}

TEST_CASE("segment intersection") {
  const auto tol = Tolerances::for_diameter(2.0);
  const Segment2 s{{-1, 0}, {1, 0}};
  const auto h = intersect_ray_segment({{0.25, 1}, {0, -1}}, s, tol);
  REQUIRE(h);
  CHECK(h->point.x == 0.25);
  CHECK(h->t == 1.0);
  CHECK(h->normal.y == 1.0);
  CHECK_FALSE(intersect_ray_segment({{2, 1}, {0, -1}}, s, tol));
  CHECK_FALSE(intersect_ray_segment({{0, 1}, {1, 0}}, s, tol));
  CHECK(intersect_ray_segment({{1 - 1e-12, 1}, {0, -1}}, s, tol)->at_boundary);
}

TEST_CASE("homothety") {
  const Vec2 p = apply_homothety({{0, 1}, 0.5}, {1, 1});
  CHECK(p == Vec2{0.5, 1});
  const Vec2 q = apply_homothety({{1, 1}, 2.0}, {0, 0});
  CHECK(q == Vec2{-1, -1});
  const Vec2 r = apply_homothety({{0, 0}, -1.0}, {0.3, -0.7});
  CHECK(r == Vec2{-0.3, 0.7});
}

TEST_CASE("confocal homothety maps one parabola onto the other") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Vec2 F{rnd(12, i, 0, -1, 1), rnd(12, i, 1, -1, 1)};
    const Vec2 axis = random_unit(12, i, 2);
    const double fp = rnd(12, i, 3, 0.1, 1.0), fq = rnd(12, i, 4, 0.1, 1.0);
    const Parabola2 P{F, axis, fp}, Q{F, axis, fq};
    const Homothety2 h{F, fq / fp};
    for (int k = 0; k <= 10; ++k) {
      const Vec2 img = apply_homothety(h, P.point_at(-2.0 + 0.4 * k));
      CHECK(std::abs(Q.residual(img)) <= 1e-12 * (1.0 + norm(img - F)));
    }
  }
}

TEST_CASE("isometries carry arcs to arcs") {
  const ParabolicArc2 a = unit_arc();
  const double s = std::sqrt(0.5);
  for (const Isometry2& g : {Isometry2::central(), Isometry2::rotation(s, s), Isometry2::line_reflection({s, s}),
                             Isometry2::diag(-1, 1)}) {
    const ParabolicArc2 b = transform(g, a);
    // Orientation reversing maps swap the ends.
    const bool swapped = g.det() < 0.0;
    CHECK(norm((swapped ? b.end() : b.start()) - g(a.start())) <= 1e-15);
    CHECK(norm((swapped ? b.start() : b.end()) - g(a.end())) <= 1e-15);
    for (int k = 0; k <= 8; ++k) {
      const Vec2 p = g(a.parabola.point_at(0.5 + k / 16.0));
      CHECK(std::abs(b.parabola.residual(p)) <= 1e-15);
      const double u = b.parabola.local_u(p);
      CHECK(u >= b.t_min - 1e-15);
      CHECK(u <= b.t_max + 1e-15);
    }
    const Isometry2 back = g.then(g.inverse());
    CHECK(norm(back({0.3, 0.4}) - Vec2{0.3, 0.4}) <= 1e-15);
  }
}

TEST_CASE("patch hit and trim rejection") {
  // z = y^2/2 + 1/2 in the (y,z) plane, extruded along x, trimmed to 1/2 <= x <= z.
  CylinderPatch3 p;
  p.u_axis = 1;
  p.v_axis = 2;
  p.w_axis = 0;
  p.base = unit_arc();
  p.w_lo = -1.0;
  p.w_hi = 1.0;
  p.trims = {Trim::range(0, 1.0, 0.5, 1.0), Trim::order(0, 1.0, 2, 1.0)};
  const auto tol = Tolerances::for_diameter(2.0);

  const auto h = intersect_ray_patch3({{0.6, 0.8, 2.0}, {0, 0, -1}}, p, tol);
  REQUIRE(h);
  CHECK(h->point.x == doctest::Approx(0.6));
  CHECK(h->point.y == doctest::Approx(0.8));
  CHECK(h->point.z == doctest::Approx(0.82));
  CHECK(h->normal.x == 0.0);
  CHECK(h->normal.z > 0.0);  // faces the incoming ray

  CHECK_FALSE(intersect_ray_patch3({{0.3, 0.8, 2.0}, {0, 0, -1}}, p, tol));
  // x = 0.9 exceeds z = 0.82 at the crossing.
  CHECK_FALSE(intersect_ray_patch3({{0.9, 0.8, 2.0}, {0, 0, -1}}, p, tol));
  // Parallel to the rulings.
  CHECK_FALSE(intersect_ray_patch3({{-2.0, 0.8, 0.82}, {1, 0, 0}}, p, tol));

  CHECK(oracle::inside_trims(p, {0.6, 0.8, 0.82}));
  CHECK(p.trim_margin({0.6, 0.8, 0.82}) >= 0.0);
  CHECK(p.trim_margin({0.3, 0.8, 0.82}) < 0.0);
}

TEST_CASE("sampled curves include both endpoints") {
  const auto pts = sample_curve(unit_arc(), 5);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front().x == doctest::Approx(0.5));
  CHECK(pts.back().x == doctest::Approx(1.0));
  const Box2 b = curve_bounds(unit_arc());
  CHECK(b.lo.y == doctest::Approx(0.625));
  CHECK(b.hi.y == doctest::Approx(1.0));
}
