#include "invis/body3d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "invis/errors.hpp"

namespace invis {

bool pyramid_contains(const Pyramid& p, const Vec3& pt) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(pt[k]) > p.c) return false;
  }
  const int a = (p.axis + 1) % 3, b = (p.axis + 2) % 3;
  const double m = std::max(std::abs(pt[a]), std::abs(pt[b]));
  const double v = pt[p.axis];
  if (p.sign > 0) return v >= m;
  if (p.sign < 0) return -v >= m;
  return std::abs(v) >= m;
}

bool gallery_contains(const Gallery& g, const Vec3& pt) {
  if (std::abs(pt[g.axis]) > g.c) return false;
  int eps[2] = {g.eps_lo, g.eps_hi};
  int j = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == g.axis) continue;
    const double v = eps[j++] * pt[k];
    if (v < g.c1 || v > g.c) return false;
  }
  return true;
}

namespace {

struct Quad {
  double a, b, c;
};

Quad p_coeffs(const SequencePair& seq, int i) {
  const double ci = seq.c[i], a = seq.a[i + 1], K = ci + a;
  return {1.0 / (2.0 * K), a / K, seq.c0() - ci * (ci + 2.0 * a) / (2.0 * K)};
}

Quad q_coeffs(const SequencePair& seq, int i) {
  if (i == 0) return {0.0, 1.0, 0.0};
  const double ci = seq.c[i], a = seq.a[i], K = ci + a;
  return {1.0 / (2.0 * K), a / K, seq.c0() - ci * (ci + 2.0 * a) / (2.0 * K)};
}

Segment2 base_segment(Vec2 a, Vec2 b) { return {a, b}; }

}  // namespace

Body3D build_body3(double c, double c1, const SequencePair& seq_in, int N) {
  if (!(c1 > 0.0 && c1 < c)) throw InvalidSeed("c1 must satisfy 0 < c1 < c");
  if (N < 1 || N > seq_in.depth()) throw InvalidSeed("depth exceeds the sequence length");
  if (std::abs(seq_in.c0() - c) > 1e-12 * c || std::abs(seq_in.c[1] - c1) > 1e-12 * c)
    throw InvalidSeed("sequence does not start at (c, c1)");
  SequencePair seq = seq_in;
  seq.c.resize(N + 1);
  seq.a.resize(N + 1);
  for (int i = 1; i < N; ++i) {
    if (profile_q(seq, i, seq.c[i + 1]) < c1)
      throw InvalidSeed("inner profile q_" + std::to_string(i) + " drops below c1; extruded body leaves the galleries");
  }

  const Body2D plane = build_rhombus_body(RhombusFrame::make(c, {0, 1}, {1, 0}), seq);

  Body3D body;
  body.c = c;
  body.c1 = c1;
  body.seq = seq;
  body.depth = N;
  const int axes[6][3] = {{1, 2, 0}, {0, 2, 1}, {2, 1, 0}, {0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
  const char* names[6] = {"B_yz", "B_xz", "B_zy", "B_xy", "B_yx", "B_zx"};
  for (int k = 0; k < 6; ++k) body.subs[k] = {names[k], axes[k][0], axes[k][1], axes[k][2], {}};

  for (int sb_idx = 0; sb_idx < 6; ++sb_idx) {
    SubBody& sub = body.subs[sb_idx];
    const int A = sub.ladder, B = sub.flow, E = sub.extrude;
    for (int i = 0; i < N; ++i) {
      const SolidPiece2& P = plane.left_internal[2 * i];
      const Quad pq = p_coeffs(seq, i), qq = q_coeffs(seq, i);
      const double ci = seq.c[i], cn = seq.c[i + 1];
      const double blo = profile_q(seq, i, cn);
      for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
          for (int se : {1, -1}) {
            Cell3 cell{sb_idx, i, sa, sb, se, P.thin, static_cast<int>(body.patches.size()), 0, {}};
            const int cell_idx = static_cast<int>(body.cells.size());
            const Isometry2 g = Isometry2::diag(-sa, sb);
            const Trim order = Trim::order(E, se, B, sb);
            const double elo = se > 0 ? c1 : -c, ehi = se > 0 ? c : -c1;
            const double alo = sa > 0 ? cn : -ci, ahi = sa > 0 ? ci : -cn;

            auto add = [&](Curve2 base, int u, int v, int w, double wlo, double whi, std::vector<Trim> trims,
                           SurfaceRole role, char kind) {
              CylinderPatch3 patch{u, v, w, std::move(base), wlo, whi, std::move(trims)};
              body.patches.push_back({std::move(patch), role, sb_idx, cell_idx, kind});
            };

            add(transform(g, P.upper), A, B, E, elo, ehi, {order}, SurfaceRole::Reflecting, 'p');
            if (!P.thin) {
              add(transform(g, P.lower), A, B, E, elo, ehi, {order}, SurfaceRole::Reflecting, 'q');
              add(transform(g, Curve2{*P.right_wall}), A, B, E, elo, ehi, {order}, SurfaceRole::Wall, 'a');
              const Trim above = Trim::curve(false, A, sa, B, sb, qq.a, qq.b, qq.c);
              const Trim below = Trim::curve(true, A, sa, B, sb, pq.a, pq.b, pq.c);
              add(base_segment({se * c1, sb * blo}, {se * c1, sb * c}), E, B, A, alo, ahi, {above, below},
                  SurfaceRole::Wall, 'e');
              add(base_segment({se * blo, sb * blo}, {se * c, sb * c}), E, B, A, alo, ahi,
                  {above, below, Trim::range(E, se, c1, c)}, SurfaceRole::Wall, 'd');
            }
            cell.patch_count = static_cast<int>(body.patches.size()) - cell.first_patch;
            Vec3 lo, hi;
            lo[A] = alo;
            hi[A] = ahi;
            lo[B] = sb > 0 ? blo : -c;
            hi[B] = sb > 0 ? c : -blo;
            lo[E] = elo;
            hi[E] = ehi;
            cell.box.extend(lo);
            cell.box.extend(hi);
            body.cells.push_back(cell);
            sub.cells.push_back(cell_idx);
          }
        }
      }
    }
  }
  body.bbox.extend(Vec3{-c, -c, -c});
  body.bbox.extend(Vec3{c, c, c});
  body.diameter = body.bbox.max_extent();
  return body;
}

double cell_depth(const Body3D& body, const Cell3& cell, const Vec3& p) {
  const SubBody& sub = body.subs[cell.sub];
  const int i = cell.level;
  const double t = cell.sa * p[sub.ladder];
  const double b = cell.sb * p[sub.flow];
  const double e = cell.se * p[sub.extrude];
  const double pv = profile_p(body.seq, i, t);
  double d = std::min({t - body.seq.c[i + 1], body.seq.c[i] - t, e - body.c1, b - e});
  if (cell.thin) return std::min(d, 1e-12 - std::abs(pv - b));
  return std::min({d, b - profile_q(body.seq, i, t), pv - b});
}

int membership_sub(const Body3D& body, const Vec3& p) {
  const auto& c = body.seq.c;
  const int N = body.depth;
  for (int k = 0; k < 6; ++k) {
    const SubBody& sub = body.subs[k];
    const double t = std::abs(p[sub.ladder]);
    if (t > c[0] || t < c[N]) continue;
    const int sa = p[sub.ladder] >= 0 ? 1 : -1;
    const int sb = p[sub.flow] >= 0 ? 1 : -1;
    const int se = p[sub.extrude] >= 0 ? 1 : -1;
    const auto it = std::lower_bound(c.begin(), c.end(), t, std::greater<double>());
    const int j = static_cast<int>(it - c.begin());
    for (int i : {j - 1, j}) {
      if (i < 0 || i >= N) continue;
      // Cells of a sub-body are laid out level-major, then (sa, sb, se) in {+,-}^3.
      const int local = i * 8 + (sa > 0 ? 0 : 4) + (sb > 0 ? 0 : 2) + (se > 0 ? 0 : 1);
      const Cell3& cell = body.cells[sub.cells[local]];
      if (cell_depth(body, cell, p) >= 0.0) return k;
    }
  }
  return -1;
}

Region3 cells_region(const Body3D& body, const std::vector<int>& subs) {
  Region3 r;
  for (int k : subs) {
    for (int ci : body.subs[k].cells) {
      RegionPart<Vec3> part;
      part.box = body.cells[ci].box;
      const Body3D* bp = &body;
      part.depth = [bp, ci](const Vec3& p) { return cell_depth(*bp, bp->cells[ci], p); };
      r.parts.push_back(part);
    }
  }
  return r;
}

}  // namespace invis
