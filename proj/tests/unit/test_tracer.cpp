#include <cmath>
#include <numbers>

#include "doctest.h"
#include "invis/body2d.hpp"
#include "invis/body3d.hpp"
#include "invis/errors.hpp"
#include "invis/rng.hpp"
#include "invis/scene.hpp"
#include "invis/tracer.hpp"
#include "invis/verify.hpp"
#include "oracle.hpp"

using namespace invis;

namespace {

Scene2 segment_scene(std::vector<std::pair<Segment2, SurfaceRole>> segs) {
  Scene2 s;
  for (auto& [g, role] : segs) s.surfaces.push_back({g, role, 0, {}});
  s.group_names = {"all"};
  finalize_scene(s);
  return s;
}

// Random ray that starts outside the box and points through its interior.
Ray2 random_ray(const Box2& box, std::uint64_t seed, std::uint64_t i) {
  const double a = 2.0 * std::numbers::pi * uniform01(seed, i, 0);
  const Vec2 d{std::cos(a), std::sin(a)};
  const Vec2 target = box.lo + Vec2{(box.hi.x - box.lo.x) * uniform01(seed, i, 1),
                                    (box.hi.y - box.lo.y) * uniform01(seed, i, 2)};
  return {target - d * (2.0 * box.max_extent()), d};
}

}  // namespace

TEST_CASE("thin depth 4: a ray at -0.75 reflects four times and leaves on its line") {
  const Scene2 sc = make_scene(build_thin_orthogonal(4));
  const auto rec = trace(sc, {{-0.75, 2.0}, {0, -1}});
  REQUIRE(rec.status == TraceStatus::Exited);
  CHECK(rec.reflections.size() == 4);
  REQUIRE(rec.exit);
  CHECK(std::abs(rec.exit->dir.x) <= 1e-12);
  CHECK(rec.exit->dir.y == doctest::Approx(-1.0));
  CHECK(std::abs(rec.exit->origin.x + 0.75) <= 1e-12);
  for (const auto& r : rec.reflections) CHECK(norm(r.v_out) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("thin depth 4: a ray at -0.3 is handled by level 2") {
  const Body2D b = build_thin_orthogonal(4);
  const Scene2 sc = make_scene(b);
  const auto rec = trace(sc, {{-0.3, 2.0}, {0, -1}});
  REQUIRE(rec.status == TraceStatus::Exited);
  REQUIRE(rec.reflections.size() == 4);
  const auto& first = b.surfaces[rec.reflections.front().surface_id];
  CHECK(first.level + 1 == 2);
  CHECK(first.group == 0);
  CHECK(std::abs(rec.exit->origin.x + 0.3) <= 1e-12);
}

TEST_CASE("a ray on a ladder abscissa stops as singular") {
  const Scene2 sc = make_scene(build_thin_orthogonal(4));
  const auto rec = trace(sc, {{-0.5, 2.0}, {0, -1}});
  CHECK(rec.status == TraceStatus::SingularHit);
  CHECK(rec.stop_surface >= 0);
}

TEST_CASE("band rays pass straight through") {
  const Scene2 sc = make_scene(build_thin_orthogonal(4));
  const auto rec = trace(sc, {{0.01, 2.0}, {0, -1}});
  CHECK(rec.status == TraceStatus::Exited);
  CHECK(rec.reflections.empty());
}

TEST_CASE("empty scene") {
  Scene2 sc;
  finalize_scene(sc);
  CHECK_FALSE(nearest_hit(sc, {{0, 0}, {1, 0}}, 1e-9));
  const auto rec = trace(sc, {{0, 0}, {1, 0}});
  CHECK(rec.status == TraceStatus::Exited);
  CHECK(rec.reflections.empty());
}

TEST_CASE("nearest of two confocal arcs") {
  Scene2 sc;
  const ParabolicArc2 lo{{{0, 1}, {0, 1}, 0.5}, -1, 1};   // y = x^2/2 + 1/2
  const ParabolicArc2 hi{{{0, 1}, {0, 1}, 0.25}, -1, 1};  // y = x^2 + 3/4
  sc.surfaces.push_back({hi, SurfaceRole::Reflecting, 0, {}});
  sc.surfaces.push_back({lo, SurfaceRole::Reflecting, 0, {}});
  finalize_scene(sc);
  // From above, the upper graph at x = 0.25 is 0.8125 and the lower one 0.53125.
  const auto h = nearest_hit(sc, {{0.25, 3}, {0, -1}}, 1e-9);
  REQUIRE(h);
  CHECK(h->surface_id == 0);
  CHECK(h->point.y == doctest::Approx(0.8125));
  const auto g = nearest_hit(sc, {{0.25, -3}, {0, 1}}, 1e-9);
  REQUIRE(g);
  CHECK(g->surface_id == 1);
}

TEST_CASE("origin inside the box is rejected") {
  const Scene2 sc = make_scene(build_thin_orthogonal(2));
  CHECK_THROWS_AS(trace(sc, {{0, 0}, {0, -1}}), InvalidArgument);
  CHECK_NOTHROW(trace(sc, {{0, 1}, {0, -1}}));
}

TEST_CASE("bounce cap") {
  // Two facing mirrors 1 apart and 10 long; slope 10 gives about 100 bounces.
  const Scene2 sc = segment_scene({{{{0, 0}, {10, 0}}, SurfaceRole::Reflecting},
                                   {{{0, 1}, {10, 1}}, SurfaceRole::Reflecting}});
  const auto rec = trace(sc, {{-0.01, 0.5}, normalized(Vec2{0.1, 1.0})});
  CHECK(rec.status == TraceStatus::BounceCapExceeded);
  CHECK(static_cast<int>(rec.reflections.size()) == sc.max_bounces);
}

TEST_CASE("wall hits are anomalies") {
  const Scene2 sc = segment_scene({{{{-1, 0}, {1, 0}}, SurfaceRole::Wall}});
  const auto rec = trace(sc, {{0, 1}, {0, -1}});
  CHECK(rec.status == TraceStatus::WallAnomaly);
  CHECK(rec.stop_surface == 0);
  CHECK(std::string(to_string(rec.status)) == "wall");
}

TEST_CASE("flat mirror reverses the flow") {
  const Scene2 sc = segment_scene({{{{-1, 0}, {1, 0}}, SurfaceRole::Reflecting}});
  const auto rec = trace(sc, {{0.3, 1}, {0, -1}});
  REQUIRE(rec.reflections.size() == 1);
  CHECK(rec.exit->dir == Vec2{0, 1});
}

TEST_CASE("tracing is deterministic") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 6);
  const Scene2 sc = make_scene(build_rhombus_body(RhombusFrame::make(1.0, {0, 1}, {0.8, 0.6}), seq));
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Ray2 r = random_ray(sc.bbox, 51, i);
    const auto a = trace(sc, r), b = trace(sc, r);
    REQUIRE(a.reflections.size() == b.reflections.size());
    for (std::size_t k = 0; k < a.reflections.size(); ++k) {
      CHECK(a.reflections[k].point == b.reflections[k].point);
      CHECK(a.reflections[k].surface_id == b.reflections[k].surface_id);
    }
    CHECK(a.status == b.status);
  }
}

TEST_CASE("speed is conserved and reversed paths retrace") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 6);
  const Scene2 sc = make_scene(build_rhombus_body(RhombusFrame::make(1.0, {0, 1}, {0.8, 0.6}), seq));
  std::vector<TraceRecord2> recs;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rec = trace(sc, random_ray(sc.bbox, 52, i));
    for (const auto& r : rec.reflections) CHECK(std::abs(norm(r.v_out) - 1.0) <= 1e-12);
    if (rec.status == TraceStatus::Exited && !rec.reflections.empty()) recs.push_back(std::move(rec));
  }
  REQUIRE(recs.size() > 100);
  const auto tr = check_time_reversal(sc, recs);
  CHECK(tr.checked == recs.size());
  CHECK(tr.count_mismatches == 0);
  CHECK(tr.max_point_error <= 1e-9);
}

TEST_CASE("reflection points agree with the sweep oracle") {
  const Scene2 sc = make_scene(build_thin_orthogonal(3));
  int compared = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Ray2 r = random_ray(sc.bbox, 53, i);
    const auto rec = trace(sc, r);
    if (rec.status != TraceStatus::Exited) continue;
    const auto path = oracle::trace(sc, r);
    REQUIRE(path.points.size() == rec.reflections.size());
    for (std::size_t k = 0; k < path.points.size(); ++k)
      CHECK(norm(path.points[k] - rec.reflections[k].point) <= 1e-9);
    if (!path.points.empty()) CHECK(norm(path.exit_dir - rec.exit->dir) <= 1e-9);
    ++compared;
  }
  CHECK(compared > 150);
}

TEST_CASE("3D z-flow ray through the body") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 3);
  const Scene3 sc = make_scene(build_body3(1.0, 0.5, seq, 3));
  const auto rec = trace(sc, {{0.7, 0.8, 2.0}, {0, 0, -1}});
  REQUIRE(rec.status == TraceStatus::Exited);
  CHECK(rec.reflections.size() == 4);
  CHECK(norm(rec.exit->dir - Vec3{0, 0, -1}) <= 1e-12);
  CHECK(std::abs(rec.exit->origin.x - 0.7) <= 1e-12);
  CHECK(std::abs(rec.exit->origin.y - 0.8) <= 1e-12);
  for (const auto& r : rec.reflections) CHECK(sc.surfaces[r.surface_id].group <= 1);

  const auto miss = trace(sc, {{0.2, 0.3, 2.0}, {0, 0, -1}});
  CHECK(miss.status == TraceStatus::Exited);
  CHECK(miss.reflections.empty());
}

TEST_CASE("box exit parameter") {
  Box2 b;
  b.extend(Vec2{-1, -1});
  b.extend(Vec2{1, 1});
  CHECK(exit_parameter(b, {{0, 3}, {0, -1}}) == doctest::Approx(4.0));
  CHECK(exit_parameter(b, {{3, 3}, {0, -1}}) == 0.0);
}
