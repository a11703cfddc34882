#include <cmath>
#include <string>

#include "doctest.h"
#include "invis/body2d.hpp"
#include "invis/body3d.hpp"
#include "invis/errors.hpp"
#include "invis/scene.hpp"
#include "invis/verify.hpp"

using namespace invis;

namespace {

template <class V>
FlowSpecT<V> grid(V dir, std::size_t n, int jobs = 1) {
  FlowSpecT<V> f;
  f.direction = dir;
  f.sampling = Sampling::grid(n);
  f.jobs = jobs;
  return f;
}

Scene2 mirror_scene(Segment2 seg, SurfaceRole role = SurfaceRole::Reflecting) {
  Scene2 s;
  s.surfaces.push_back({seg, role, 0, {}});
  s.group_names = {"mirror"};
  s.hull = {seg.a, seg.b};
  finalize_scene(s);
  return s;
}

Curve2 scaled(const Curve2& c, double k) {
  if (const auto* a = std::get_if<ParabolicArc2>(&c)) {
    ParabolicArc2 r = *a;
    r.parabola.focus = r.parabola.focus * k;
    r.parabola.f *= k;
    r.t_min *= k;
    r.t_max *= k;
    return r;
  }
  const auto& g = std::get<Segment2>(c);
  return Segment2{g.a * k, g.b * k};
}

bool same(const VerificationReport& a, const VerificationReport& b) {
  return a.reflection_histogram == b.reflection_histogram && a.max_velocity_dev == b.max_velocity_dev &&
         a.max_lateral_dev == b.max_lateral_dev && a.resistance == b.resistance && a.rays_total == b.rays_total &&
         a.rays_excluded == b.rays_excluded && a.rays_singular == b.rays_singular && a.group_hits == b.group_hits;
}

}  // namespace

TEST_CASE("thin body is invisible along the axes") {
  const Body2D b = build_thin_orthogonal(6);
  const Scene2 sc = make_scene(b);
  for (Vec2 d : {Vec2{0, -1}, Vec2{0, 1}, Vec2{1, 0}, Vec2{-1, 0}}) {
    const auto r = verify_invisibility(sc, classifier_for(b), grid(d, 4000), 1e-9);
    CHECK(r.invisible);
    CHECK(r.zero_resistance);
    CHECK(r.rays_anomaly == 0);
    CHECK(r.band_max_reflections == 0);
    for (const auto& [k, n] : r.reflection_histogram) CHECK((k == 0 || k == 4));
    CHECK(r.histogram_total() + r.rays_singular + r.rays_excluded == r.rays_total);
    CHECK(r.band_measure == doctest::Approx(std::ldexp(1.0, -6)).epsilon(0.05));
    // At most one grid ray falls in each singular window.
    CHECK(r.rays_excluded - r.rays_partial_ring <= 2u * (6u + 1u));
    CHECK(r.singular_fraction() <= 1e-3);
    CHECK(std::abs(r.resistance[0]) <= 1e-9);
    CHECK(std::abs(r.resistance[1]) <= 1e-9);
  }
}

TEST_CASE("empty scene is invisible") {
  Scene2 sc;
  sc.hull = {{-1, -1}, {1, 1}};
  finalize_scene(sc);
  const auto r = verify_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 500), 1e-9);
  CHECK(r.invisible);
  REQUIRE(r.reflection_histogram.size() == 1);
  CHECK(r.reflection_histogram.begin()->first == 0);
  CHECK(r.resistance == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("flat mirror is visible and pushed back") {
  const Scene2 sc = mirror_scene({{-1, 0}, {1, 0}});
  const auto r = verify_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 1000), 1e-9);
  CHECK_FALSE(r.invisible);
  CHECK(r.reflection_histogram.at(1) == 1000);
  // R = 2 v L with L = 2.
  CHECK(r.resistance[0] == doctest::Approx(0.0));
  CHECK(r.resistance[1] == doctest::Approx(-4.0));
  const auto R = resistance(sc, no_classifier2(), grid(Vec2{0, -1}, 1000));
  CHECK(R == r.resistance);
}

TEST_CASE("45 degree mirror deflects sideways") {
  const Scene2 sc = mirror_scene({{-0.5, -0.5}, {0.5, 0.5}});
  const auto r = collect_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 1000), 1e-9);
  CHECK_FALSE(r.invisible);
  CHECK(r.cross_section == doctest::Approx(1.0));
  CHECK(r.resistance[0] == doctest::Approx(1.0));
  CHECK(r.resistance[1] == doctest::Approx(-1.0));
}

TEST_CASE("wall hits raise on verify and are counted on collect") {
  const Scene2 sc = mirror_scene({{-1, 0}, {1, 0}}, SurfaceRole::Wall);
  CHECK_THROWS_AS(verify_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 100), 1e-9), TracerAnomaly);
  const auto r = collect_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 100), 1e-9);
  CHECK(r.rays_anomaly == 100);
  CHECK_FALSE(r.first_anomaly.empty());
  CHECK_THROWS_AS(collect_invisibility(sc, no_classifier2(), grid(Vec2{0, -1}, 100), 0.0), InvalidArgument);
}

TEST_CASE("reports do not depend on the worker count") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 6);
  const Body2D b = build_rhombus_body(RhombusFrame::make(1.0, {0, 1}, {0.8, 0.6}), seq);
  const Scene2 sc = make_scene(b);
  const auto one = collect_invisibility(sc, classifier_for(b), grid(Vec2{0, -1}, 3000, 1), 1e-9);
  const auto four = collect_invisibility(sc, classifier_for(b), grid(Vec2{0, -1}, 3000, 4), 1e-9);
  CHECK(same(one, four));
  CHECK(one.invisible);

  FlowSpec2 mc = grid(Vec2{0.8, 0.6}, 3000, 3);
  mc.sampling = Sampling::monte_carlo(3000, 77);
  const auto m1 = collect_invisibility(sc, classifier_for(b), mc, 1e-9);
  mc.jobs = 1;
  const auto m2 = collect_invisibility(sc, classifier_for(b), mc, 1e-9);
  CHECK(same(m1, m2));
  CHECK(m1.invisible);
}

TEST_CASE("grading is scale invariant") {
  const Body2D b = build_thin_orthogonal(5);
  const Scene2 base = make_scene(b);
  const auto cls = classifier_for(b);
  const auto ref = collect_invisibility(base, cls, grid(Vec2{0, -1}, 2000), 1e-9);
  for (double k : {1e-3, 1e3}) {
    Scene2 sc = base;
    for (auto& s : sc.surfaces) s.curve = scaled(s.curve, k);
    for (auto& p : sc.hull) p = p * k;
    sc.bbox = Box2{};
    finalize_scene(sc);
    CHECK(sc.diameter == doctest::Approx(2.0 * k));
    const Classifier2 scaled_cls = [&](const Ray2& r, double m) {
      return cls({r.origin / k, r.dir}, m / k);
    };
    // The exclusion margin is a distance, so it scales with the scene.
    auto flow = grid(Vec2{0, -1}, 2000);
    flow.exclusion_margin *= k;
    const auto r = collect_invisibility(sc, scaled_cls, flow, 1e-9);
    CHECK(r.rays_excluded == ref.rays_excluded);
    CHECK(r.invisible);
    CHECK(r.reflection_histogram == ref.reflection_histogram);
    CHECK(r.max_lateral_dev <= 1e-12 * k);
    CHECK(r.max_velocity_dev <= 1e-12);
  }
}

TEST_CASE("shading of the thin body") {
  const Body2D b = build_thin_orthogonal(5);
  const Scene2 sc = make_scene(b);
  const auto g = verify_shading(sc, classifier_for(b), grid(Vec2{0, -1}, 2000), shaded_region_g(b));
  CHECK(g.shaded);
  CHECK(g.rays_traced > 0);

  // A slab across the central corridor is crossed by band rays.
  Region2 slab;
  RegionPart<Vec2> part;
  part.box.extend(Vec2{-0.2, -0.05});
  part.box.extend(Vec2{0.2, 0.05});
  part.depth = [](const Vec2& p) { return std::min(0.2 - std::abs(p.x), 0.05 - std::abs(p.y)); };
  slab.parts.push_back(part);
  const auto s = verify_shading(sc, classifier_for(b), grid(Vec2{0, -1}, 2000), slab);
  CHECK_FALSE(s.shaded);
  CHECK(s.rays_crossing > 0);
}

TEST_CASE("3D z-flow leaves the x and y families in shadow") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 3);
  const Body3D b = build_body3(1.0, 0.5, seq, 3);
  const Scene3 sc = make_scene(b);
  const auto r = verify_shading(sc, classifier_for(b), grid(Vec3{0, 0, -1}, 400), cells_region(b, {2, 3, 4, 5}));
  CHECK(r.shaded);
  CHECK(r.samples_checked > 0);
  const auto v = verify_invisibility(sc, classifier_for(b), grid(Vec3{0, 0, -1}, 2500), 1e-9);
  CHECK(v.invisible);
  REQUIRE(v.group_hits.size() == 6);
  for (int k = 2; k < 6; ++k) CHECK(v.group_hits[k] == 0);
}

TEST_CASE("projection cases") {
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 4);
  Body3D b = build_body3(1.0, 0.5, seq, 4);
  const CaseReport rep = verify_projection_cases(b, 300, 5);
  REQUIRE(rep.cases.size() == 4);
  CHECK(rep.violations == 0);
  for (const auto& c : rep.cases) {
    CHECK(c.rays == 300);
    CHECK(c.foreign_hits == 0);
  }
  // The inner square case never touches the body.
  CHECK(rep.cases[0].reflection_histogram.size() == 1);
  CHECK(rep.cases[0].reflection_histogram.count(0) == 1);

  // Turning the outer mirrors of B_yz into walls must be caught.
  for (auto& p : b.patches)
    if (p.sub == 0 && p.kind == 'p') p.role = SurfaceRole::Wall;
  CHECK_THROWS_AS(verify_projection_cases(b, 300, 5), CaseViolation);
}

TEST_CASE("shallow bodies have an empty rectangle case") {
  // At depth 2 the only ladder ring below c_1 is the truncated one.
  const auto seq = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 2);
  const CaseReport rep = verify_projection_cases(build_body3(1.0, 0.5, seq, 2), 100, 3);
  REQUIRE(rep.cases.size() == 4);
  CHECK(rep.cases[3].rays == 0);
  CHECK(rep.cases[2].rays == 100);
}
