#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invis/body2d.hpp"
#include "invis/body3d.hpp"
#include "invis/scene.hpp"
#include "invis/verify.hpp"

namespace invis::io {

enum class SceneKind { Thin2D, Rhombus2D, Body3D, Custom };

const char* to_string(SceneKind k);

struct SceneSurface {
  Curve2 curve;
  SurfaceRole role = SurfaceRole::Reflecting;
};

struct SubBodySummary {
  std::string name;
  int cells = 0;
  int patches = 0;
};

/// Declarative scene. Generated kinds carry their parameters plus a derived
/// geometry listing; custom scenes are defined by the listing alone.
struct SceneFile {
  int version = 1;
  SceneKind kind = SceneKind::Thin2D;
  double c = 1.0;
  double c1 = 0.5;
  int depth = 8;
  SequencePolicy policy = SequencePolicy::constant_fraction(0.5);
  Vec2 dir1{0, 1};
  Vec2 dir2{1, 0};
  std::vector<SceneSurface> surfaces;
  int corner_blocks = 0;
  std::vector<SubBodySummary> subbodies;
};

inline constexpr int kSceneVersion = 1;

std::string serialize(const SceneFile& f);
SceneFile parse_scene(const std::string& text);

/// Fills the derived geometry of a generated scene from its parameters.
SceneFile build_scene_file(SceneFile params);

/// A scene ready for tracing.
struct LoadedScene {
  SceneFile file;
  int dim = 2;
  std::optional<Body2D> body2;
  std::optional<Body3D> body3;
  Scene2 scene2;
  Scene3 scene3;
  Classifier2 classify2 = no_classifier2();
  Classifier3 classify3 = no_classifier3();
};

/// Builds the bodies; rejects generated files whose listing disagrees with the parameters.
LoadedScene instantiate(const SceneFile& f);

std::string scene_hash(const SceneFile& f);

}  // namespace invis::io
