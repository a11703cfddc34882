#include "invis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invis/errors.hpp"
#include "invis/parallel.hpp"
#include "invis/rng.hpp"

namespace invis {

namespace {

std::array<double, 3> to_array(Vec2 v) { return {v.x, v.y, 0.0}; }
std::array<double, 3> to_array(const Vec3& v) { return {v.x, v.y, v.z}; }

bool near(double v, double target, double m) { return std::abs(v - target) <= m; }

}  // namespace

std::size_t VerificationReport::histogram_total() const {
  std::size_t t = 0;
  for (const auto& [k, v] : reflection_histogram) t += v;
  return t;
}

// ---------------------------------------------------------------------------
// Classifiers

Classifier2 no_classifier2() {
  return [](const Ray2&, double) { return RayClass::Treated; };
}

Classifier3 no_classifier3() {
  return [](const Ray3&, double) { return RayClass::Treated; };
}

Classifier2 classifier_for(const Body2D& body) {
  const RhombusFrame fr = body.frame;
  const std::vector<double> c = body.seq.c;
  const auto V = fr.vertices();
  const Isometry2 L = Isometry2::line_reflection(normalized(V[1] - V[3]));
  return [fr, c, L](const Ray2& ray, double m) {
    const Vec2 q0 = fr.to_internal(ray.origin);
    const Vec2 qd = fr.to_internal.linear(ray.dir);
    double x;
    if (std::abs(qd.x) < 1e-12) {
      x = q0.x;
    } else if (std::abs(L.linear(qd).x) < 1e-12) {
      x = L(q0).x;
    } else {
      return RayClass::Treated;
    }
    const double t = std::abs(x);
    const int N = static_cast<int>(c.size()) - 1;
    for (double ci : c) {
      if (near(t, ci, m)) return RayClass::Singular;
    }
    if (t > c[0]) return RayClass::Treated;
    if (t < c[N]) return RayClass::Band;
    if (t < c[N - 1]) return RayClass::PartialRing;
    return RayClass::Treated;
  };
}

Classifier3 classifier_for(const Body3D& body) {
  const SequencePair seq = body.seq;
  const double c = body.c, c1 = body.c1;
  return [seq, c, c1](const Ray3& ray, double m) {
    int b = 0;
    for (int k = 1; k < 3; ++k) {
      if (std::abs(ray.dir[k]) > std::abs(ray.dir[b])) b = k;
    }
    for (int k = 0; k < 3; ++k) {
      if (k != b && std::abs(ray.dir[k]) > 1e-12) return RayClass::Treated;
    }
    const double X = std::abs(ray.origin[(b + 1) % 3]);
    const double Y = std::abs(ray.origin[(b + 2) % 3]);
    const double P = std::max(X, Y), Q = std::min(X, Y);
    if (P > c + m) return RayClass::Treated;
    if (near(P, c, m) || near(P, c1, m) || near(Q, c1, m) || near(P, Q, m)) return RayClass::Singular;
    if (P < c1 || Q > c1) return RayClass::Treated;
    const auto& cs = seq.c;
    const int N = seq.depth();
    for (double ci : cs) {
      if (near(Q, ci, m)) return RayClass::Singular;
    }
    if (Q < cs[N]) return RayClass::Band;
    int i = 0;
    while (i < N && !(Q > cs[i + 1])) ++i;
    if (near(P, profile_p(seq, i, Q), m)) return RayClass::Singular;
    if (Q < cs[N - 1]) return RayClass::PartialRing;
    return RayClass::Treated;
  };
}

// ---------------------------------------------------------------------------
// Flow generation

std::vector<Ray2> flow_rays(const Scene2& scene, const FlowSpec2& flow, double& measure) {
  const Vec2 v = normalized(flow.direction);
  const Vec2 w = perp(v);
  double smin = INFINITY, smax = -INFINITY, back = INFINITY;
  for (const auto& h : scene.hull) {
    smin = std::min(smin, dot(h, w));
    smax = std::max(smax, dot(h, w));
    back = std::min(back, dot(h, v));
  }
  std::vector<Ray2> rays;
  if (scene.hull.empty()) {
    smin = -0.5;
    smax = 0.5;
    back = -1.0;
  }
  back -= 0.01 * scene.diameter;
  measure = smax - smin;
  const std::size_t n = flow.sampling.n;
  rays.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double f;
    if (flow.sampling.kind == SamplingKind::UniformGrid) {
      f = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    } else {
      f = uniform01(flow.sampling.seed, k, 0);
    }
    rays.push_back({w * (smin + f * measure) + v * back, v});
  }
  return rays;
}

std::vector<Ray3> flow_rays(const Scene3& scene, const FlowSpec3& flow, double& measure) {
  const Vec3 v = normalized(flow.direction);
  int least = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(v[k]) < std::abs(v[least])) least = k;
  }
  Vec3 e;
  e[least] = 1.0;
  const Vec3 w1 = normalized(cross(v, e));
  const Vec3 w2 = cross(v, w1);
  double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY, back = INFINITY;
  for (const auto& h : scene.hull) {
    lo1 = std::min(lo1, dot(h, w1));
    hi1 = std::max(hi1, dot(h, w1));
    lo2 = std::min(lo2, dot(h, w2));
    hi2 = std::max(hi2, dot(h, w2));
    back = std::min(back, dot(h, v));
  }
  if (scene.hull.empty()) {
    lo1 = lo2 = -0.5;
    hi1 = hi2 = 0.5;
    back = -1.0;
  }
  back -= 0.01 * scene.diameter;
  measure = (hi1 - lo1) * (hi2 - lo2);
  std::vector<Ray3> rays;
  const std::size_t n = flow.sampling.n;
  if (flow.sampling.kind == SamplingKind::UniformGrid) {
    const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    rays.reserve(k * k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double f1 = (a + 0.5) / k, f2 = (b + 0.5) / k;
        rays.push_back({w1 * (lo1 + f1 * (hi1 - lo1)) + w2 * (lo2 + f2 * (hi2 - lo2)) + v * back, v});
      }
    }
  } else {
    rays.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double f1 = uniform01(flow.sampling.seed, k, 0), f2 = uniform01(flow.sampling.seed, k, 1);
      rays.push_back({w1 * (lo1 + f1 * (hi1 - lo1)) + w2 * (lo2 + f2 * (hi2 - lo2)) + v * back, v});
    }
  }
  return rays;
}

// ---------------------------------------------------------------------------
// Invisibility

namespace {

template <class V, class Rec>
struct RayOutcome {
  RayClass cls = RayClass::Treated;
  bool traced = false;
  Rec rec;
};

template <class Scene, class Cls, class Flow>
VerificationReport collect_impl(const Scene& scene, const Cls& cls, const Flow& flow, double tau) {
  using V = typename Scene::Vec;
  if (!(tau > 0.0)) throw InvalidArgument("tolerance must be positive");
  double measure = 0.0;
  const auto rays = flow_rays(scene, flow, measure);
  const V v = normalized(flow.direction);
  using Rec = decltype(trace(scene, rays.front()));
  std::vector<RayOutcome<V, Rec>> out(rays.size());
  parallel_for(rays.size(), flow.jobs, [&](std::size_t i) {
    out[i].cls = cls(rays[i], flow.exclusion_margin);
    if (out[i].cls == RayClass::Singular || out[i].cls == RayClass::PartialRing) return;
    out[i].traced = true;
    out[i].rec = trace(scene, rays[i]);
  });

  VerificationReport r;
  r.dim = std::is_same_v<V, Vec2> ? 2 : 3;
  r.direction = to_array(v);
  r.rays_total = rays.size();
  r.group_names = scene.group_names;
  r.group_hits.assign(scene.group_names.size(), 0);
  r.cross_section = measure;
  r.diameter = scene.diameter;
  r.tau = tau;
  const double weight = rays.empty() ? 0.0 : measure / static_cast<double>(rays.size());
  std::array<double, 3> R{};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& o = out[i];
    if (o.cls == RayClass::Singular || o.cls == RayClass::PartialRing) {
      ++r.rays_excluded;
      if (o.cls == RayClass::PartialRing) ++r.rays_partial_ring;
      continue;
    }
    if (o.cls == RayClass::Band) ++r.rays_band;
    for (const auto& refl : o.rec.reflections) {
      const int g = scene.surfaces[refl.surface_id].group;
      if (g >= 0 && g < static_cast<int>(r.group_hits.size())) ++r.group_hits[g];
    }
    switch (o.rec.status) {
      case TraceStatus::SingularHit:
        ++r.rays_singular;
        continue;
      case TraceStatus::BounceCapExceeded:
      case TraceStatus::WallAnomaly: {
        ++r.rays_anomaly;
        if (r.first_anomaly.empty()) {
          std::ostringstream os;
          os.precision(17);
          os << to_string(o.rec.status) << " on ray " << i << " at surface " << o.rec.stop_surface;
          r.first_anomaly = os.str();
        }
        continue;
      }
      case TraceStatus::Exited:
        break;
    }
    const int nrefl = static_cast<int>(o.rec.reflections.size());
    ++r.reflection_histogram[nrefl];
    if (o.cls == RayClass::Band) r.band_max_reflections = std::max(r.band_max_reflections, nrefl);
    const V vout = o.rec.exit->dir;
    const V dv = v - vout;
    r.max_velocity_dev = std::max(r.max_velocity_dev, norm(dv));
    const V delta = o.rec.exit->origin - o.rec.entry.origin;
    r.max_lateral_dev = std::max(r.max_lateral_dev, norm(delta - v * dot(delta, v)));
    const auto a = to_array(dv);
    for (int k = 0; k < 3; ++k) R[k] += a[k] * weight;
  }
  const double total = static_cast<double>(std::max<std::size_t>(r.rays_total, 1));
  r.band_measure = static_cast<double>(r.rays_band) / total;
  r.partial_ring_measure = static_cast<double>(r.rays_partial_ring) / total;
  r.excluded_measure = static_cast<double>(r.rays_excluded) / total;
  r.resistance = R;
  for (int k = 0; k < 3; ++k) r.resistance_per_area[k] = measure > 0 ? R[k] / measure : 0.0;
  r.zero_resistance = r.max_velocity_dev <= tau;
  r.invisible = r.zero_resistance && r.max_lateral_dev <= tau * scene.diameter;
  r.invisible_report = r.max_velocity_dev <= r.tau_report && r.max_lateral_dev <= r.tau_report * scene.diameter;
  return r;
}

template <class Scene, class Cls, class Flow>
VerificationReport verify_impl(const Scene& scene, const Cls& cls, const Flow& flow, double tau) {
  VerificationReport r = collect_impl(scene, cls, flow, tau);
  if (r.rays_anomaly > 0)
    throw TracerAnomaly(std::to_string(r.rays_anomaly) + " anomalous rays; first: " + r.first_anomaly);
  return r;
}

}  // namespace

VerificationReport collect_invisibility(const Scene2& s, const Classifier2& c, const FlowSpec2& f, double tau) {
  return collect_impl(s, c, f, tau);
}
VerificationReport collect_invisibility(const Scene3& s, const Classifier3& c, const FlowSpec3& f, double tau) {
  return collect_impl(s, c, f, tau);
}
VerificationReport verify_invisibility(const Scene2& s, const Classifier2& c, const FlowSpec2& f, double tau) {
  return verify_impl(s, c, f, tau);
}
VerificationReport verify_invisibility(const Scene3& s, const Classifier3& c, const FlowSpec3& f, double tau) {
  return verify_impl(s, c, f, tau);
}
std::array<double, 3> resistance(const Scene2& s, const Classifier2& c, const FlowSpec2& f) {
  return verify_impl(s, c, f, 1e-9).resistance;
}
std::array<double, 3> resistance(const Scene3& s, const Classifier3& c, const FlowSpec3& f) {
  return verify_impl(s, c, f, 1e-9).resistance;
}

// ---------------------------------------------------------------------------
// Shading

namespace {

template <class V, class R>
std::vector<V> polyline(const TraceRecordT<V, R>& rec, const Box<V>& box) {
  std::vector<V> pts{rec.entry.origin};
  for (const auto& r : rec.reflections) pts.push_back(r.point);
  if (rec.exit) {
    const double t = exit_parameter(box, *rec.exit);
    pts.push_back(rec.exit->origin + rec.exit->dir * t);
  } else {
    pts.push_back(rec.stop_point);
  }
  return pts;
}

template <class Scene, class Cls, class Flow, class Reg>
ShadingReport shading_impl(const Scene& scene, const Cls& cls, const Flow& flow, const Reg& region) {
  using V = typename Scene::Vec;
  double measure = 0.0;
  const auto rays = flow_rays(scene, flow, measure);
  const double step = 1e-4 * scene.diameter;
  const double inside = 1e-9 * scene.diameter;
  const Box<V> box = scene.bbox.inflated(0.02 * scene.diameter);
  struct Local {
    bool traced = false;
    bool crossed = false;
    std::size_t samples = 0;
    V first{};
  };
  std::vector<Local> res(rays.size());
  parallel_for(rays.size(), flow.jobs, [&](std::size_t i) {
    if (cls(rays[i], flow.exclusion_margin) == RayClass::Singular) return;
    Local& L = res[i];
    L.traced = true;
    const auto rec = trace(scene, rays[i]);
    const auto pts = polyline(rec, box);
    for (std::size_t s = 0; s + 1 < pts.size() && !L.crossed; ++s) {
      const V a = pts[s];
      const V d = pts[s + 1] - a;
      const double len = norm(d);
      if (len == 0.0) continue;
      const V u = d / len;
      for (const auto& part : region.parts) {
        double t0 = 0.0, t1 = len;
        if (!part.box.clip(a, u, t0, t1)) continue;
        for (double t = t0;; t += step) {
          const double tt = std::min(t, t1);
          const V p = a + u * tt;
          ++L.samples;
          if (part.depth(p) > inside) {
            L.crossed = true;
            L.first = p;
            break;
          }
          if (tt >= t1) break;
        }
        if (L.crossed) break;
      }
    }
  });
  ShadingReport r;
  for (const auto& L : res) {
    if (!L.traced) continue;
    ++r.rays_traced;
    r.samples_checked += L.samples;
    if (L.crossed) {
      if (r.rays_crossing == 0) r.first_point = to_array(L.first);
      ++r.rays_crossing;
    }
  }
  r.shaded = r.rays_crossing == 0;
  return r;
}

}  // namespace

ShadingReport verify_shading(const Scene2& s, const Classifier2& c, const FlowSpec2& f, const Region2& region) {
  return shading_impl(s, c, f, region);
}
ShadingReport verify_shading(const Scene3& s, const Classifier3& c, const FlowSpec3& f, const Region3& region) {
  return shading_impl(s, c, f, region);
}

// ---------------------------------------------------------------------------
// Time reversal

namespace {

template <class Scene, class Rec>
TimeReversalReport reversal_impl(const Scene& scene, const std::vector<Rec>& records) {
  TimeReversalReport r;
  for (const auto& rec : records) {
    if (rec.status != TraceStatus::Exited || rec.reflections.empty()) continue;
    ++r.checked;
    auto back = *rec.exit;
    const double t = exit_parameter(scene.bbox, back) + 0.01 * scene.diameter;
    back.origin = back.origin + back.dir * t;
    back.dir = -back.dir;
    const auto rev = trace(scene, back);
    const std::size_t n = rec.reflections.size();
    if (rev.status != TraceStatus::Exited || rev.reflections.size() != n) {
      ++r.count_mismatches;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double e = norm(rev.reflections[k].point - rec.reflections[n - 1 - k].point);
      r.max_point_error = std::max(r.max_point_error, e);
    }
  }
  return r;
}

}  // namespace

TimeReversalReport check_time_reversal(const Scene2& s, const std::vector<TraceRecord2>& recs) {
  return reversal_impl(s, recs);
}
TimeReversalReport check_time_reversal(const Scene3& s, const std::vector<TraceRecord3>& recs) {
  return reversal_impl(s, recs);
}

// ---------------------------------------------------------------------------
// 3D case analysis

namespace {

struct CaseRay {
  double x = 0, y = 0;
  bool expect_zero = false;
};

}  // namespace

CaseReport verify_projection_cases(const Body3D& body, int n, std::uint64_t seed, double tau, int jobs) {
  const Scene3 scene = make_scene(body);
  const double c = body.c, c1 = body.c1;
  const auto& cs = body.seq.c;
  const int N = body.depth;
  const double m = 1e-6 * c;
  const double top = c + 0.01 * scene.diameter;
  const char* names[4] = {"inner-square", "outer-frame", "triangle", "rectangle"};

  CaseReport report;
  std::string first_violation;
  std::uint64_t stream = 0;
  for (int kase = 0; kase < 4; ++kase) {
    // Draw n admissible projections for this case.
    std::vector<CaseRay> pts;
    std::uint64_t k = 0;
    // Below depth 3 the rectangle case lies entirely in the truncated ring.
    const bool empty = kase == 3 && !(c1 - cs[std::max(N - 1, 0)] > 2 * m);
    const std::uint64_t budget = 1000 * static_cast<std::uint64_t>(std::max(n, 1)) + 100000;
    while (!empty && static_cast<int>(pts.size()) < n) {
      if (k >= budget) throw InvalidArgument(std::string("case ") + names[kase] + ": sampling domain too thin");
      const double u1 = uniform01(seed + stream, k, 0), u2 = uniform01(seed + stream, k, 1);
      const double u3 = uniform01(seed + stream, k, 2);
      ++k;
      CaseRay r;
      if (kase == 0) {
        r.x = (2 * u1 - 1) * (c1 - m);
        r.y = (2 * u2 - 1) * (c1 - m);
        r.expect_zero = true;
      } else if (kase == 1) {
        r.x = (2 * u1 - 1) * 1.5 * c;
        r.y = (2 * u2 - 1) * 1.5 * c;
        if (std::max(std::abs(r.x), std::abs(r.y)) <= c + m) continue;
        r.expect_zero = true;
      } else if (kase == 2) {
        double a = c1 + u1 * (c - c1), b = c1 + u2 * (c - c1);
        if (a > b) std::swap(a, b);
        if (a - c1 <= m || b - a <= m || c - b <= m) continue;
        r.x = a;
        r.y = b;
      } else {
        const double x = c1 + u1 * (c - c1);
        const double y = cs[N - 1] + u2 * (c1 - cs[N - 1]);
        if (x - c1 <= m || c - x <= m) continue;
        bool sing = false;
        for (double ci : cs) sing = sing || std::abs(y - ci) <= m;
        if (sing) continue;
        int i = 0;
        while (!(y > cs[i + 1])) ++i;
        const double pi = profile_p(body.seq, i, y);
        if (std::abs(x - pi) <= m) continue;
        r.x = x;
        r.y = y;
        r.expect_zero = x > pi;
      }
      // Spread over the symmetric images of the reduced case.
      if (kase >= 2) {
        const auto bits = static_cast<unsigned>(u3 * 8.0);
        if (bits & 1u) std::swap(r.x, r.y);
        if (bits & 2u) r.x = -r.x;
        if (bits & 4u) r.y = -r.y;
      }
      pts.push_back(r);
    }
    ++stream;

    std::vector<TraceRecord3> recs(pts.size());
    parallel_for(pts.size(), jobs, [&](std::size_t i) {
      recs[i] = trace(scene, Ray3{{pts[i].x, pts[i].y, top}, {0, 0, -1}});
    });

    CaseStats st;
    st.name = names[kase];
    st.rays = pts.size();
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& rec = recs[i];
      const CaseRay& pr = pts[i];
      std::string why;
      const std::size_t nr = rec.reflections.size();
      if (rec.status != TraceStatus::Exited) {
        why = std::string("status ") + to_string(rec.status);
      } else {
        ++st.reflection_histogram[static_cast<int>(nr)];
        const Vec3 v{0, 0, -1};
        const double dv = norm(rec.exit->dir - v);
        const Vec3 d = rec.exit->origin - rec.entry.origin;
        const double lat = norm(d - v * dot(d, v));
        st.max_velocity_dev = std::max(st.max_velocity_dev, dv);
        st.max_lateral_dev = std::max(st.max_lateral_dev, lat);
        for (const auto& rf : rec.reflections) {
          const int g = scene.surfaces[rf.surface_id].group;
          if (body.subs[g].flow != 2) ++st.foreign_hits, why = "reflection outside B_z";
        }
        if (pr.expect_zero) {
          ++st.zero_expected;
          if (nr != 0) why = "expected no reflections, got " + std::to_string(nr);
        } else if (nr != 4) {
          why = "expected 4 reflections, got " + std::to_string(nr);
        } else {
          if (dv > tau || lat > tau * scene.diameter) why = "exit line differs from entry line";
          for (int j = 0; j < 2 && why.empty(); ++j) {
            const Vec3& p = rec.reflections[j].point;
            if (!(std::abs(p.z) > std::max(std::abs(p.x), std::abs(p.y))))
              why = "reflection " + std::to_string(j + 1) + " outside the open z-pyramid";
          }
        }
      }
      if (!why.empty()) {
        ++report.violations;
        if (first_violation.empty()) {
          std::ostringstream os;
          os.precision(17);
          os << "case " << names[kase] << ", ray through (" << pr.x << ", " << pr.y << "): " << why;
          first_violation = os.str();
        }
      }
    }
    report.cases.push_back(st);
  }
  if (report.violations > 0)
    throw CaseViolation(std::to_string(report.violations) + " violations; first: " + first_violation);
  return report;
}

}  // namespace invis
