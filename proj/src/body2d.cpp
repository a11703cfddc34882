#include "invis/body2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "invis/errors.hpp"

namespace invis {

RhombusFrame RhombusFrame::make(double c, Vec2 dir1, Vec2 dir2) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("rhombus half-width must be positive");
  const double n1 = norm(dir1), n2 = norm(dir2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw InvalidArgument("direction vectors must be non-zero");
  dir1 = dir1 / n1;
  dir2 = dir2 / n2;
  RhombusFrame fr;
  fr.c = c;
  fr.dir1 = dir1;
  fr.dir2 = dir2;
  fr.to_internal = Isometry2{dir1.y, -dir1.x, dir1.x, dir1.y, {}};
  fr.to_world = fr.to_internal.inverse();
  Vec2 d2 = fr.to_internal.linear(dir2);
  if (std::abs(d2.x) < 1e-12) throw InvalidArgument("invisibility directions are parallel");
  if (d2.x < 0) d2 = -d2;
  fr.s = d2.y / d2.x;
  fr.h = c * std::sqrt(1.0 + fr.s * fr.s);
  return fr;
}

std::array<Vec2, 4> RhombusFrame::vertices() const {
  return {Vec2{-c, upper(-c)}, Vec2{c, upper(c)}, Vec2{c, lower(c)}, Vec2{-c, lower(-c)}};
}

double RhombusFrame::skew_angle() const { return std::acos(std::clamp(dot(dir1, dir2), -1.0, 1.0)); }

double graph_y(const Curve2& c, double x) {
  if (const auto* arc = std::get_if<ParabolicArc2>(&c)) {
    const auto& par = arc->parabola;
    const Vec2 v = par.vertex();
    const double u = (x - v.x) * par.e_u().x;
    return v.y + par.axis.y * par.height(u);
  }
  const auto& seg = std::get<Segment2>(c);
  const double s = (x - seg.a.x) / (seg.b.x - seg.a.x);
  return seg.a.y + s * (seg.b.y - seg.a.y);
}

double profile_p(const SequencePair& seq, int i, double t) {
  const double ci = seq.c[i];
  const double a = seq.a[i + 1];
  return seq.c0() + (t - ci) * (t + ci + 2.0 * a) / (2.0 * (ci + a));
}

double profile_q(const SequencePair& seq, int i, double t) {
  if (i == 0) return t;
  const double ci = seq.c[i];
  const double a = seq.a[i];
  return seq.c0() + (t - ci) * (t + ci + 2.0 * a) / (2.0 * (ci + a));
}

Homothety2 homothety_for_level(const RhombusFrame& frame, const SequencePair& seq, int i) {
  const double a = seq.a[i];
  return {Vec2{a, frame.upper(a)}, (seq.c[i] + a) / (seq.c[i - 1] + a)};
}

// ---------------------------------------------------------------------------
// Corner blocks

double CornerBlock::depth(Vec2 p) const {
  const double x = sx * p.x;
  const double y = sy * p.y;
  return std::min({x - 0.5, 1.0 - x, y - 0.5, 1.0 - y, 0.5 * x * x + 0.5 - y, 0.5 * y * y + 0.5 - x});
}

std::vector<Vec2> CornerBlock::outline(int samples) const {
  std::vector<Vec2> pts;
  pts.push_back({0.5, 0.5});
  for (int k = 0; k < samples; ++k) {  // along x = y^2/2 + 1/2, y from 1/2 to 1
    const double y = 0.5 + 0.5 * k / (samples - 1);
    pts.push_back({0.5 * y * y + 0.5, y});
  }
  for (int k = samples - 2; k >= 0; --k) {  // back along y = x^2/2 + 1/2
    const double x = 0.5 + 0.5 * k / (samples - 1);
    pts.push_back({x, 0.5 * x * x + 0.5});
  }
  for (auto& p : pts) p = {sx * p.x, sy * p.y};
  return pts;
}

Box2 CornerBlock::bounds() const {
  Box2 b;
  b.extend(Vec2{0.5 * sx, 0.5 * sy});
  b.extend(Vec2{1.0 * sx, 1.0 * sy});
  return b;
}

// ---------------------------------------------------------------------------
// Thin orthogonal body

namespace {

enum ThinGroup { kP = 0, kQ, kProtP, kProtQ, kCorner };

void finish_bounds(Body2D& body) {
  body.bbox = Box2{};
  for (const auto& v : body.hull) body.bbox.extend(v);
  body.diameter = body.bbox.max_extent();
}

}  // namespace

Body2D build_thin_orthogonal(int N) {
  if (N < 1) throw InvalidSeed("depth must be at least 1");
  Body2D body;
  body.kind = Body2D::Kind::Thin;
  body.frame = RhombusFrame::make(1.0, {0, 1}, {1, 0});
  body.seq = generate_sequences(1.0, 0.5, SequencePolicy::thin_limit(), N);
  body.depth = N;
  body.group_names = {"P", "Q", "P_rot", "Q_rot", "corner"};

  // y = 2^{k-2} x^2 + 1 - 2^{-k} on 2^{-k} <= |x| <= 2^{-k+1}, and its mirror image.
  std::vector<BoundaryCurve> upper, lower;
  for (int k = 1; k <= N; ++k) {
    const double alpha = std::ldexp(1.0, k - 2);
    const double beta = 1.0 - std::ldexp(1.0, -k);
    const double f = 1.0 / (4.0 * alpha);
    const double lo = std::ldexp(1.0, -k), hi = std::ldexp(1.0, -k + 1);
    const Parabola2 up{{0.0, beta + f}, {0.0, 1.0}, f};
    const Parabola2 dn{{0.0, -(beta + f)}, {0.0, -1.0}, f};
    upper.push_back({ParabolicArc2{up, -hi, -lo}, SurfaceRole::Reflecting, kP, k - 1, 'p'});
    upper.push_back({ParabolicArc2{up, lo, hi}, SurfaceRole::Reflecting, kP, k - 1, 'p'});
    // Downward axis flips e_u, so u = -x.
    lower.push_back({ParabolicArc2{dn, lo, hi}, SurfaceRole::Reflecting, kQ, k - 1, 'P'});
    lower.push_back({ParabolicArc2{dn, -hi, -lo}, SurfaceRole::Reflecting, kQ, k - 1, 'P'});
  }
  const Isometry2 rot = Isometry2::rotation(0.0, 1.0);
  for (const auto& s : upper) body.surfaces.push_back(s);
  for (const auto& s : lower) body.surfaces.push_back(s);
  for (const auto& s : upper) body.surfaces.push_back({transform(rot, s.curve), s.role, kProtP, s.level, s.kind});
  for (const auto& s : lower) body.surfaces.push_back({transform(rot, s.curve), s.role, kProtQ, s.level, s.kind});

  for (int sy : {1, -1}) {
    for (int sx : {-1, 1}) {
      CornerBlock cb{sx, sy};
      body.corner_blocks.push_back(cb);
      const Vec2 o{0.5 * sx, 0.5 * sy};
      body.surfaces.push_back({Segment2{o, {0.625 * sx, 0.5 * sy}}, SurfaceRole::Corner, kCorner, 0, 'c'});
      body.surfaces.push_back({Segment2{o, {0.5 * sx, 0.625 * sy}}, SurfaceRole::Corner, kCorner, 0, 'c'});
    }
  }
  for (const auto& s : body.surfaces) {
    if (s.role != SurfaceRole::Reflecting) continue;
    SolidPiece2 pc{s.curve, s.curve, std::nullopt, s.level, s.group, s.kind == 'P', true};
    body.pieces.push_back(pc);
  }
  body.hull = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  finish_bounds(body);
  return body;
}

// ---------------------------------------------------------------------------
// Rhombus body

namespace {

enum RhombusGroup { kAL = 0, kAR, kBL, kBR };

std::vector<SolidPiece2> left_family(const RhombusFrame& fr, const SequencePair& seq) {
  const int N = seq.depth();
  const Vec2 up{0, 1}, down{0, -1};
  std::vector<SolidPiece2> out;
  for (int i = 0; i < N; ++i) {
    const double ci = seq.c[i], cn = seq.c[i + 1];
    const double an = seq.a[i + 1];
    const bool thin = i >= 1 && seq.a[i] == an;

    // Upper piece P_i.
    const Vec2 X{-ci, fr.upper(-ci)};
    const Vec2 Fp{an, fr.upper(an)};
    const ParabolicArc2 p{parabola_from_focus_and_point(Fp, X, up), -ci - an, -cn - an};
    Curve2 q;
    if (i == 0) {
      q = Segment2{X, {-cn, fr.diag_ac(-cn)}};
    } else {
      const double ai = seq.a[i];
      const Vec2 Fq{ai, fr.upper(ai)};
      q = ParabolicArc2{parabola_from_focus_and_point(Fq, X, up), -ci - ai, -cn - ai};
    }
    SolidPiece2 P{p, thin ? Curve2{p} : q, std::nullopt, i, kAL, false, thin};
    if (!thin) P.right_wall = Segment2{{-cn, graph_y(q, -cn)}, {-cn, graph_y(p, -cn)}};
    out.push_back(P);

    // Lower piece P'_i: foci on the lower side, opening downward (u = F.x - x).
    const Vec2 Xl{-ci, fr.lower(-ci)};
    const Vec2 Fpl{an, fr.lower(an)};
    const ParabolicArc2 pl{parabola_from_focus_and_point(Fpl, Xl, down), an + cn, an + ci};
    Curve2 ql;
    if (i == 0) {
      ql = Segment2{Xl, {-cn, fr.diag_bd(-cn)}};
    } else {
      const double ai = seq.a[i];
      const Vec2 Fql{ai, fr.lower(ai)};
      ql = ParabolicArc2{parabola_from_focus_and_point(Fql, Xl, down), ai + cn, ai + ci};
    }
    SolidPiece2 Pl{thin ? Curve2{pl} : ql, pl, std::nullopt, i, kAL, true, thin};
    if (!thin) Pl.right_wall = Segment2{{-cn, graph_y(pl, -cn)}, {-cn, graph_y(ql, -cn)}};
    out.push_back(Pl);
  }
  return out;
}

void check_left_family(const RhombusFrame& fr, const SequencePair& seq, const std::vector<SolidPiece2>& left) {
  const double tol = 1e-12 * fr.c;
  const int N = seq.depth();
  for (int i = 0; i < N; ++i) {
    const auto& P = left[2 * i];
    const auto& Pl = left[2 * i + 1];
    const double ci = seq.c[i], cn = seq.c[i + 1];
    for (int k = 1; k < 32; ++k) {
      const double x = -ci + (ci - cn) * k / 32.0;
      const double pu = graph_y(P.upper, x), pd = graph_y(P.lower, x);
      const double lu = graph_y(Pl.upper, x), ld = graph_y(Pl.lower, x);
      // Deep pieces are thinner than the spacing of doubles near their junction;
      // only a negative thickness beyond rounding counts as an overlap.
      const double ulp = 8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(pu), std::abs(ld)});
      if (!P.thin && pu < pd - ulp)
        throw GeometryOverlap("upper piece " + std::to_string(i) + " has negative thickness");
      if (!Pl.thin && lu < ld - ulp)
        throw GeometryOverlap("lower piece " + std::to_string(i) + " has negative thickness");
      if (!(pd > lu)) throw GeometryOverlap("pieces " + std::to_string(i) + " overlap across the corridor");
      if (pu > fr.upper(x) + tol || ld < fr.lower(x) - tol)
        throw GeometryOverlap("piece " + std::to_string(i) + " leaves the rhombus");
    }
  }
}

bool in_trapezoids(const RhombusFrame& fr, double c1, Vec2 p, double tol) {
  const double ax = std::abs(p.x);
  if (ax < c1 - tol || ax > fr.c + tol) return false;
  const double ac = fr.diag_ac(p.x), bd = fr.diag_bd(p.x);
  return p.y >= std::min(ac, bd) - tol && p.y <= std::max(ac, bd) + tol;
}

bool in_left_family(const Body2D& body, Vec2 q) {
  const auto& c = body.seq.c;
  const int N = body.seq.depth();
  const double t = -q.x;
  if (t > c[0] || t < c[N]) return false;
  // c is descending; locate i with c[i+1] <= t <= c[i].
  const auto it = std::lower_bound(c.begin(), c.end(), t, std::greater<double>());
  int hi_idx = static_cast<int>(it - c.begin());  // first c[j] <= t
  for (int i : {hi_idx - 1, hi_idx}) {
    if (i < 0 || i >= N) continue;
    if (t > c[i] || t < c[i + 1]) continue;
    for (int k = 0; k < 2; ++k) {
      const auto& pc = body.left_internal[2 * i + k];
      const double yu = graph_y(pc.upper, q.x);
      if (pc.thin) {
        if (std::abs(q.y - yu) <= 1e-12) return true;
      } else {
        const double yl = graph_y(pc.lower, q.x);
        if (q.y >= yl && q.y <= yu) return true;
      }
    }
  }
  return false;
}

}  // namespace

Body2D build_rhombus_body(const RhombusFrame& fr, const SequencePair& seq) {
  if (std::abs(seq.c0() - fr.c) > 1e-12 * fr.c) throw InvalidSeed("sequence c_0 differs from the rhombus half-width");
  Body2D body;
  body.kind = Body2D::Kind::Rhombus;
  body.frame = fr;
  body.seq = seq;
  body.depth = seq.depth();
  body.group_names = {"A_L", "A_R", "B_L", "B_R"};
  body.left_internal = left_family(fr, seq);
  check_left_family(fr, seq, body.left_internal);

  const auto V = fr.vertices();
  const Vec2 bd_dir = normalized(V[1] - V[3]);
  const Isometry2 L = Isometry2::line_reflection(bd_dir);
  const Isometry2 C = Isometry2::central();
  const Isometry2 I{};
  const Isometry2 maps[4] = {I, C, L, C.then(L)};

  const double tol = 1e-12 * fr.c;
  for (int g = 0; g < 4; ++g) {
    const Isometry2 w = maps[g].then(fr.to_world);
    for (const auto& pc : body.left_internal) {
      if (g >= 2) {
        for (const Curve2* cv : {&pc.upper, &pc.lower}) {
          for (const Vec2& s : sample_curve(*cv, 33)) {
            if (!in_trapezoids(fr, seq.c[1], maps[g](s), tol))
              throw GeometryOverlap("reflected piece " + std::to_string(pc.index) + " leaves the shaded trapezoids");
          }
        }
      }
      SolidPiece2 out{transform(w, pc.upper), transform(w, pc.lower), std::nullopt, pc.index, g, pc.primed, pc.thin};
      if (pc.right_wall) out.right_wall = transform(w, *pc.right_wall);
      body.pieces.push_back(out);
      const char ku = pc.primed ? 'Q' : 'p';
      const char kl = pc.primed ? 'P' : 'q';
      body.surfaces.push_back({out.upper, SurfaceRole::Reflecting, g, pc.index, ku});
      if (!pc.thin) body.surfaces.push_back({out.lower, SurfaceRole::Reflecting, g, pc.index, kl});
      if (out.right_wall) body.surfaces.push_back({*out.right_wall, SurfaceRole::Wall, g, pc.index, 'w'});
    }
  }
  for (const auto& v : V) body.hull.push_back(fr.to_world(v));
  finish_bounds(body);
  return body;
}

bool membership(const Body2D& body, Vec2 p) {
  if (body.kind == Body2D::Kind::Thin) {
    for (const auto& cb : body.corner_blocks) {
      if (cb.contains(p)) return true;
    }
    for (const auto& s : body.surfaces) {
      const auto* arc = std::get_if<ParabolicArc2>(&s.curve);
      if (!arc) continue;
      const double u = arc->parabola.local_u(p);
      if (u < arc->t_min || u > arc->t_max) continue;
      if (std::abs(arc->parabola.local_w(p) - arc->parabola.height(u)) <= 1e-12) return true;
    }
    return false;
  }
  const Vec2 q = body.frame.to_internal(p);
  const auto V = body.frame.vertices();
  const Isometry2 L = Isometry2::line_reflection(normalized(V[1] - V[3]));
  for (const Vec2 r : {q, L(q)}) {
    if (in_left_family(body, r) || in_left_family(body, -r)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Shaded regions

Region2 shaded_region_g(const Body2D&) {
  Region2 g;
  for (int sx : {-1, 1}) {
    RegionPart<Vec2> part;
    part.box.extend(Vec2{0.5 * sx, -1.0});
    part.box.extend(Vec2{1.0 * sx, 1.0});
    part.depth = [sx](const Vec2& p) {
      const double x = sx * p.x;
      return std::min({x - 0.5, 1.0 - x, 0.5 * x * x + 0.5 - std::abs(p.y)});
    };
    g.parts.push_back(part);
  }
  return g;
}

Region2 trapezoid_region(const Body2D& body) {
  Region2 r;
  const RhombusFrame fr = body.frame;
  const double c1 = body.seq.c[1];
  for (int sx : {-1, 1}) {
    RegionPart<Vec2> part;
    for (double x : {c1 * sx, fr.c * sx}) {
      part.box.extend(fr.to_world(Vec2{x, fr.diag_ac(x)}));
      part.box.extend(fr.to_world(Vec2{x, fr.diag_bd(x)}));
    }
    part.depth = [fr, c1, sx](const Vec2& p) {
      const Vec2 q = fr.to_internal(p);
      const double x = sx * q.x;
      const double lo = std::min(fr.diag_ac(q.x), fr.diag_bd(q.x));
      const double hi = std::max(fr.diag_ac(q.x), fr.diag_bd(q.x));
      return std::min({x - c1, fr.c - x, q.y - lo, hi - q.y});
    };
    r.parts.push_back(part);
  }
  return r;
}

Region2 corner_block_region(const Body2D& thin) {
  Region2 r;
  for (const auto& cb : thin.corner_blocks) {
    RegionPart<Vec2> part;
    part.box = cb.bounds();
    part.depth = [cb](const Vec2& p) { return cb.depth(p); };
    r.parts.push_back(part);
  }
  return r;
}

}  // namespace invis
