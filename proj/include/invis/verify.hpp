#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "invis/body2d.hpp"
#include "invis/body3d.hpp"
#include "invis/region.hpp"
#include "invis/scene.hpp"
#include "invis/tracer.hpp"

namespace invis {

enum class SamplingKind { UniformGrid, MonteCarlo };

struct Sampling {
  SamplingKind kind = SamplingKind::UniformGrid;
  std::size_t n = 1000;
  std::uint64_t seed = 1;

  static Sampling grid(std::size_t n) { return {SamplingKind::UniformGrid, n, 0}; }
  static Sampling monte_carlo(std::size_t n, std::uint64_t seed) { return {SamplingKind::MonteCarlo, n, seed}; }
};

template <class V>
struct FlowSpecT {
  V direction{};
  Sampling sampling;
  double exclusion_margin = 1e-6;
  int jobs = 1;
};

using FlowSpec2 = FlowSpecT<Vec2>;
using FlowSpec3 = FlowSpecT<Vec3>;

/// Ray categories known in advance from the construction.
enum class RayClass {
  Treated,      // traced and graded
  Singular,     // within the margin of a known singular line; skipped
  Band,         // central corridor below the last level; traced, expected 0 reflections
  PartialRing,  // last ring whose partner mirror lies beyond the truncation; skipped
};

using Classifier2 = std::function<RayClass(const Ray2&, double margin)>;
using Classifier3 = std::function<RayClass(const Ray3&, double margin)>;

Classifier2 classifier_for(const Body2D& body);
Classifier3 classifier_for(const Body3D& body);
Classifier2 no_classifier2();
Classifier3 no_classifier3();

/// Rays of a parallel flow covering the shadow of the scene hull. `measure`
/// receives the cross-section length (2D) or area (3D).
std::vector<Ray2> flow_rays(const Scene2& scene, const FlowSpec2& flow, double& measure);
std::vector<Ray3> flow_rays(const Scene3& scene, const FlowSpec3& flow, double& measure);

struct VerificationReport {
  int dim = 2;
  std::array<double, 3> direction{};
  std::size_t rays_total = 0;
  std::size_t rays_excluded = 0;  // singular margin plus partial ring
  std::size_t rays_partial_ring = 0;
  std::size_t rays_band = 0;
  std::size_t rays_singular = 0;  // traced rays that struck a rim
  std::size_t rays_anomaly = 0;   // bounce cap or wall
  std::map<int, std::size_t> reflection_histogram;
  std::vector<std::string> group_names;
  std::vector<std::size_t> group_hits;
  int band_max_reflections = 0;
  double max_velocity_dev = 0.0;
  double max_lateral_dev = 0.0;
  double cross_section = 0.0;
  double band_measure = 0.0;          // fraction of the cross-section
  double partial_ring_measure = 0.0;  // fraction of the cross-section
  double excluded_measure = 0.0;      // fraction of the cross-section
  std::array<double, 3> resistance{};
  std::array<double, 3> resistance_per_area{};
  double diameter = 1.0;
  double tau = 1e-9;
  double tau_report = 1e-6;
  bool invisible = false;
  bool invisible_report = false;
  bool zero_resistance = false;
  std::string first_anomaly;

  double singular_fraction() const {
    return rays_total ? static_cast<double>(rays_singular) / static_cast<double>(rays_total) : 0.0;
  }
  std::size_t histogram_total() const;
};

/// Traces the flow and grades it; anomalies are counted, not thrown.
VerificationReport collect_invisibility(const Scene2& scene, const Classifier2& cls, const FlowSpec2& flow, double tau);
VerificationReport collect_invisibility(const Scene3& scene, const Classifier3& cls, const FlowSpec3& flow, double tau);

/// As collect_invisibility, but throws TracerAnomaly on bounce-cap or wall hits.
VerificationReport verify_invisibility(const Scene2& scene, const Classifier2& cls, const FlowSpec2& flow, double tau);
VerificationReport verify_invisibility(const Scene3& scene, const Classifier3& cls, const FlowSpec3& flow, double tau);

std::array<double, 3> resistance(const Scene2& scene, const Classifier2& cls, const FlowSpec2& flow);
std::array<double, 3> resistance(const Scene3& scene, const Classifier3& cls, const FlowSpec3& flow);

struct ShadingReport {
  bool shaded = true;
  std::size_t rays_traced = 0;
  std::size_t rays_crossing = 0;
  std::size_t samples_checked = 0;
  std::array<double, 3> first_point{};
};

ShadingReport verify_shading(const Scene2& scene, const Classifier2& cls, const FlowSpec2& flow, const Region2& region);
ShadingReport verify_shading(const Scene3& scene, const Classifier3& cls, const FlowSpec3& flow, const Region3& region);

struct TimeReversalReport {
  std::size_t checked = 0;
  std::size_t count_mismatches = 0;
  double max_point_error = 0.0;
};

TimeReversalReport check_time_reversal(const Scene2& scene, const std::vector<TraceRecord2>& records);
TimeReversalReport check_time_reversal(const Scene3& scene, const std::vector<TraceRecord3>& records);

struct CaseStats {
  std::string name;
  std::size_t rays = 0;
  std::map<int, std::size_t> reflection_histogram;
  std::size_t foreign_hits = 0;  // reflections outside the flow's own sub-bodies
  std::size_t zero_expected = 0; // rays predicted to miss the body
  double max_velocity_dev = 0.0;
  double max_lateral_dev = 0.0;
};

struct CaseReport {
  std::vector<CaseStats> cases;
  std::size_t violations = 0;
};

/// z-flow audit over the four projection cases of the 3D proof.
/// Throws CaseViolation naming the first failing case and ray.
CaseReport verify_projection_cases(const Body3D& body, int n, std::uint64_t seed, double tau = 1e-9,
                                         int jobs = 1);

}  // namespace invis
