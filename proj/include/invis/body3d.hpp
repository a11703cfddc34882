#pragma once

#include <array>
#include <string>
#include <vector>

#include "invis/body2d.hpp"
#include "invis/patch3.hpp"
#include "invis/region.hpp"
#include "invis/sequences.hpp"

namespace invis {

/// {p in [-c,c]^3 : sign*p[axis] >= max of the other two |p[k]|}; sign 0 means both halves.
struct Pyramid {
  int axis = 2;
  int sign = 1;
  double c = 1.0;
};

/// Edge gallery along `axis`: the two remaining coordinates (ascending index
/// order) lie in eps*[c1, c], the long coordinate in [-c, c].
struct Gallery {
  int axis = 1;
  int eps_lo = 1;
  int eps_hi = 1;
  double c = 1.0;
  double c1 = 0.5;
};

bool pyramid_contains(const Pyramid& p, const Vec3& pt);
bool gallery_contains(const Gallery& g, const Vec3& pt);

/// Sub-body B_ab: ladder coordinate a, flow coordinate b, extrusion e.
struct SubBody {
  std::string name;
  int ladder = 1;
  int flow = 2;
  int extrude = 0;
  std::vector<int> cells;
};

/// One sign-resolved cell: c_{i+1} <= sa*x_a <= c_i, q_i <= sb*x_b <= p_i, c1 <= se*x_e <= sb*x_b.
struct Cell3 {
  int sub = 0;
  int level = 0;
  int sa = 1, sb = 1, se = 1;
  bool thin = false;
  int first_patch = 0;
  int patch_count = 0;
  Box3 box;
};

struct PatchEntry {
  CylinderPatch3 patch;
  SurfaceRole role = SurfaceRole::Reflecting;
  int sub = 0;
  int cell = 0;
  char kind = 'p';  // p, q, a (ladder wall), e (extrusion wall), d (diagonal wall)
};

struct Body3D {
  double c = 1.0;
  double c1 = 0.5;
  SequencePair seq;
  int depth = 0;
  std::array<SubBody, 6> subs;
  std::vector<Cell3> cells;
  std::vector<PatchEntry> patches;
  Box3 bbox;
  double diameter = 0.0;
};

/// Sub-body indices: 0 B_yz, 1 B_xz, 2 B_zy, 3 B_xy, 4 B_yx, 5 B_zx.
/// The flow axis of sub-body k is subs[k].flow; B_z = {0,1}, B_y = {2,3}, B_x = {4,5}.
Body3D build_body3(double c, double c1, const SequencePair& seq, int N);

/// Signed depth of a point in a cell (>= 0 inside).
double cell_depth(const Body3D& body, const Cell3& cell, const Vec3& p);

/// Index of a sub-body containing p, or -1.
int membership_sub(const Body3D& body, const Vec3& p);
inline bool membership(const Body3D& body, const Vec3& p) { return membership_sub(body, p) >= 0; }

/// Union of all cells of the listed sub-bodies.
Region3 cells_region(const Body3D& body, const std::vector<int>& subs);

}  // namespace invis
