#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "invis/geom.hpp"
#include "invis/region.hpp"
#include "invis/sequences.hpp"

namespace invis {

enum class SurfaceRole { Reflecting, Wall, Corner };

/// Rhombus with two vertical sides. Internally dir1 is rotated onto +y; the
/// other pair of sides is y = s*x +- h. Vertex A sits at abscissa -c.
struct RhombusFrame {
  double c = 1.0;
  Vec2 dir1{0, 1};
  Vec2 dir2{1, 0};

  double s = 0.0;
  double h = 1.0;
  Isometry2 to_internal;
  Isometry2 to_world;

  static RhombusFrame make(double c, Vec2 dir1, Vec2 dir2);

  double upper(double x) const { return s * x + h; }
  double lower(double x) const { return s * x - h; }
  /// Diagonal through A and C.
  double diag_ac(double x) const { return x * (s - h / c); }
  /// Diagonal through B and D.
  double diag_bd(double x) const { return x * (s + h / c); }
  /// A, B, C, D in internal coordinates.
  std::array<Vec2, 4> vertices() const;
  double skew_angle() const;
};

struct BoundaryCurve {
  Curve2 curve;
  SurfaceRole role = SurfaceRole::Reflecting;
  int group = 0;
  int level = 0;
  char kind = 'p';  // p, q, P (primed p), Q (primed q), w (wall), c (corner edge)
};

/// Region between an upper and a lower graph over one ladder interval.
struct SolidPiece2 {
  Curve2 upper;
  Curve2 lower;
  std::optional<Segment2> right_wall;
  int index = 0;
  int group = 0;
  bool primed = false;
  bool thin = false;
};

/// One of the four corner blocks of the thin orthogonal body, in quadrant (sx, sy).
struct CornerBlock {
  int sx = 1;
  int sy = 1;

  double depth(Vec2 p) const;
  bool contains(Vec2 p) const { return depth(p) >= 0.0; }
  std::vector<Vec2> outline(int samples) const;
  Box2 bounds() const;
};

struct Body2D {
  enum class Kind { Thin, Rhombus };

  Kind kind = Kind::Rhombus;
  RhombusFrame frame;
  SequencePair seq;
  int depth = 0;
  std::vector<SolidPiece2> pieces;
  std::vector<BoundaryCurve> surfaces;
  std::vector<std::string> group_names;
  std::vector<CornerBlock> corner_blocks;
  Box2 bbox;
  std::vector<Vec2> hull;
  double diameter = 0.0;
  /// Left-family pieces in the internal frame: P_0, P'_0, P_1, P'_1, ...
  std::vector<SolidPiece2> left_internal;
};

Body2D build_thin_orthogonal(int N);
Body2D build_rhombus_body(const RhombusFrame& frame, const SequencePair& seq);

bool membership(const Body2D& body, Vec2 p);

/// Height of a curve with vertical axis at abscissa x (internal frame).
double graph_y(const Curve2& c, double x);

/// Upper and lower profile functions for the orthogonal square body, t = |x|.
double profile_p(const SequencePair& seq, int i, double t);
double profile_q(const SequencePair& seq, int i, double t);

/// Homothety H_i: centre at focus point a_i on the upper side, ratio (c_i + a_i)/(c_{i-1} + a_i).
Homothety2 homothety_for_level(const RhombusFrame& frame, const SequencePair& seq, int i);

/// Regions shaded from the dir1 flow.
Region2 shaded_region_g(const Body2D& thin);
Region2 trapezoid_region(const Body2D& body);
Region2 corner_block_region(const Body2D& thin);

}  // namespace invis
