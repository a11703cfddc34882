#include "invis/io/scene_file.hpp"

#include <map>
#include <set>
#include <sstream>

#include "invis/errors.hpp"
#include "invis/io/text_format.hpp"

namespace invis::io {

const char* to_string(SceneKind k) {
  switch (k) {
    case SceneKind::Thin2D:
      return "thin2d";
    case SceneKind::Rhombus2D:
      return "rhombus2d";
    case SceneKind::Body3D:
      return "body3d";
    case SceneKind::Custom:
      return "custom";
  }
  return "?";
}

namespace {

const char* role_name(SurfaceRole r) {
  switch (r) {
    case SurfaceRole::Reflecting:
      return "reflect";
    case SurfaceRole::Wall:
      return "wall";
    case SurfaceRole::Corner:
      return "corner";
  }
  return "?";
}

SurfaceRole parse_role(const std::string& s, const std::string& path) {
  if (s == "reflect") return SurfaceRole::Reflecting;
  if (s == "wall") return SurfaceRole::Wall;
  if (s == "corner") return SurfaceRole::Corner;
  throw ParseError(path, "unknown surface role '" + s + "'");
}

bool has_policy(SceneKind k) { return k == SceneKind::Rhombus2D || k == SceneKind::Body3D; }

void write_policy(std::ostream& os, const SequencePolicy& p) {
  switch (p.kind) {
    case PolicyKind::ThinLimit:
      os << "policy thin-limit\n";
      break;
    case PolicyKind::ConstantFraction:
      os << "policy constant-fraction\n";
      os << "gamma " << fmt_real(p.gamma) << "\n";
      break;
    case PolicyKind::Explicit:
      os << "policy explicit\n";
      os << "a";
      for (double a : p.explicit_a) os << " " << fmt_real(a);
      os << "\n";
      break;
  }
}

}  // namespace

std::string serialize(const SceneFile& f) {
  std::ostringstream os;
  os << "invis-scene\n";
  os << "version " << f.version << "\n";
  os << "kind " << to_string(f.kind) << "\n";
  if (f.kind != SceneKind::Custom) {
    if (f.kind != SceneKind::Thin2D) {
      os << "c " << fmt_real(f.c) << "\n";
      os << "c1 " << fmt_real(f.c1) << "\n";
    }
    os << "depth " << f.depth << "\n";
  }
  if (has_policy(f.kind)) write_policy(os, f.policy);
  if (f.kind == SceneKind::Rhombus2D) {
    os << "dir1 " << fmt_real(f.dir1.x) << " " << fmt_real(f.dir1.y) << "\n";
    os << "dir2 " << fmt_real(f.dir2.x) << " " << fmt_real(f.dir2.y) << "\n";
  }
  if (f.kind != SceneKind::Body3D) {
    os << "surfaces " << f.surfaces.size() << "\n";
    for (const auto& s : f.surfaces) {
      if (const auto* arc = std::get_if<ParabolicArc2>(&s.curve)) {
        const auto& p = arc->parabola;
        os << "arc " << fmt_real(p.focus.x) << " " << fmt_real(p.focus.y) << " " << fmt_real(p.axis.x) << " "
           << fmt_real(p.axis.y) << " " << fmt_real(p.f) << " " << fmt_real(arc->t_min) << " "
           << fmt_real(arc->t_max) << " " << role_name(s.role) << "\n";
      } else {
        const auto& g = std::get<Segment2>(s.curve);
        os << "segment " << fmt_real(g.a.x) << " " << fmt_real(g.a.y) << " " << fmt_real(g.b.x) << " "
           << fmt_real(g.b.y) << " " << role_name(s.role) << "\n";
      }
    }
  }
  if (f.kind == SceneKind::Thin2D) os << "corner_blocks " << f.corner_blocks << "\n";
  for (const auto& sb : f.subbodies) os << "subbody " << sb.name << " " << sb.cells << " " << sb.patches << "\n";
  os << "end\n";
  return os.str();
}

SceneFile parse_scene(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].key != "invis-scene" || !lines[0].values.empty())
    throw ParseError("scene", "missing 'invis-scene' header");
  SceneFile f;
  std::size_t pos = 1;
  auto where = [](const TextLine& l) { return "scene:" + std::to_string(l.lineno); };
  auto expect_n = [&](const TextLine& l, std::size_t n) {
    if (l.values.size() != n)
      throw ParseError("scene." + l.key, "expected " + std::to_string(n) + " values at line " +
                                             std::to_string(l.lineno));
  };

  if (pos >= lines.size() || lines[pos].key != "version") throw ParseError("scene.version", "missing field");
  expect_n(lines[pos], 1);
  f.version = static_cast<int>(parse_int(lines[pos].values[0], "scene.version"));
  if (f.version != kSceneVersion)
    throw ParseError("scene.version", "unsupported version " + std::to_string(f.version));
  ++pos;

  std::set<std::string> seen;
  std::map<std::string, const TextLine*> fields;
  std::vector<const TextLine*> geometry;
  bool ended = false;
  for (; pos < lines.size(); ++pos) {
    const TextLine& l = lines[pos];
    if (l.key == "end") {
      ended = true;
      if (pos + 1 != lines.size()) throw ParseError(where(lines[pos + 1]), "content after 'end'");
      break;
    }
    if (l.key == "arc" || l.key == "segment" || l.key == "subbody") {
      geometry.push_back(&l);
      continue;
    }
    static const std::set<std::string> known = {"kind", "c", "c1", "depth", "policy", "gamma",
                                                "a", "dir1", "dir2", "surfaces", "corner_blocks"};
    if (!known.count(l.key)) throw ParseError("scene." + l.key, "unknown field at line " + std::to_string(l.lineno));
    if (!seen.insert(l.key).second) throw ParseError("scene." + l.key, "duplicate field");
    fields[l.key] = &l;
  }
  if (!ended) throw ParseError("scene.end", "missing terminator");

  auto need = [&](const std::string& k) -> const TextLine& {
    auto it = fields.find(k);
    if (it == fields.end()) throw ParseError("scene." + k, "missing field");
    return *it->second;
  };
  auto forbid = [&](const std::string& k) {
    if (fields.count(k)) throw ParseError("scene." + k, std::string("not allowed for kind ") + to_string(f.kind));
  };

  const TextLine& kl = need("kind");
  expect_n(kl, 1);
  const std::string& ks = kl.values[0];
  if (ks == "thin2d") f.kind = SceneKind::Thin2D;
  else if (ks == "rhombus2d") f.kind = SceneKind::Rhombus2D;
  else if (ks == "body3d") f.kind = SceneKind::Body3D;
  else if (ks == "custom") f.kind = SceneKind::Custom;
  else throw ParseError("scene.kind", "unknown kind '" + ks + "'");

  if (f.kind == SceneKind::Custom) {
    for (const char* k : {"c", "c1", "depth", "policy", "gamma", "a", "dir1", "dir2"}) forbid(k);
  } else {
    const TextLine& d = need("depth");
    expect_n(d, 1);
    f.depth = static_cast<int>(parse_int(d.values[0], "scene.depth"));
  }
  if (f.kind == SceneKind::Thin2D) {
    for (const char* k : {"c", "c1", "policy", "gamma", "a", "dir1", "dir2"}) forbid(k);
    f.policy = SequencePolicy::thin_limit();
  }
  if (f.kind == SceneKind::Rhombus2D || f.kind == SceneKind::Body3D) {
    const TextLine& c = need("c");
    expect_n(c, 1);
    f.c = parse_real(c.values[0], "scene.c");
    const TextLine& c1 = need("c1");
    expect_n(c1, 1);
    f.c1 = parse_real(c1.values[0], "scene.c1");
    const TextLine& p = need("policy");
    expect_n(p, 1);
    const std::string& ps = p.values[0];
    if (ps == "thin-limit") {
      forbid("gamma");
      forbid("a");
      f.policy = SequencePolicy::thin_limit();
    } else if (ps == "constant-fraction") {
      forbid("a");
      const TextLine& g = need("gamma");
      expect_n(g, 1);
      f.policy = SequencePolicy::constant_fraction(parse_real(g.values[0], "scene.gamma"));
    } else if (ps == "explicit") {
      forbid("gamma");
      const TextLine& a = need("a");
      std::vector<double> av;
      for (std::size_t k = 0; k < a.values.size(); ++k)
        av.push_back(parse_real(a.values[k], "scene.a[" + std::to_string(k) + "]"));
      f.policy = SequencePolicy::explicit_list(std::move(av));
    } else {
      throw ParseError("scene.policy", "unknown policy '" + ps + "'");
    }
  }
  if (f.kind == SceneKind::Rhombus2D) {
    for (const char* k : {"dir1", "dir2"}) {
      const TextLine& d = need(k);
      expect_n(d, 2);
      const std::string path = std::string("scene.") + k;
      const Vec2 v{parse_real(d.values[0], path + "[0]"), parse_real(d.values[1], path + "[1]")};
      (std::string(k) == "dir1" ? f.dir1 : f.dir2) = v;
    }
  } else if (f.kind == SceneKind::Body3D) {
    forbid("dir1");
    forbid("dir2");
  }

  if (f.kind == SceneKind::Body3D) {
    forbid("surfaces");
  } else {
    const TextLine& s = need("surfaces");
    expect_n(s, 1);
    const long long n = parse_int(s.values[0], "scene.surfaces");
    long long count = 0;
    for (const TextLine* g : geometry) {
      if (g->key == "subbody") continue;
      const std::string path = "scene.surfaces[" + std::to_string(count) + "]";
      SceneSurface surf;
      if (g->key == "arc") {
        if (g->values.size() != 8) throw ParseError(path, "arc needs 8 values");
        double v[7];
        for (int k = 0; k < 7; ++k) v[k] = parse_real(g->values[k], path + "." + std::to_string(k));
        if (!(v[4] > 0.0)) throw ParseError(path + ".f", "focal length must be positive");
        if (!(v[5] < v[6])) throw ParseError(path + ".t", "empty transverse interval");
        const double an = std::hypot(v[2], v[3]);
        if (std::abs(an - 1.0) > 1e-12) throw ParseError(path + ".axis", "axis must be a unit vector");
        surf.curve = ParabolicArc2{Parabola2{{v[0], v[1]}, {v[2], v[3]}, v[4]}, v[5], v[6]};
        surf.role = parse_role(g->values[7], path + ".role");
      } else {
        if (g->values.size() != 5) throw ParseError(path, "segment needs 5 values");
        double v[4];
        for (int k = 0; k < 4; ++k) v[k] = parse_real(g->values[k], path + "." + std::to_string(k));
        surf.curve = Segment2{{v[0], v[1]}, {v[2], v[3]}};
        surf.role = parse_role(g->values[4], path + ".role");
      }
      f.surfaces.push_back(surf);
      ++count;
    }
    if (count != n)
      throw ParseError("scene.surfaces", "declared " + std::to_string(n) + " surfaces, found " + std::to_string(count));
  }
  if (f.kind == SceneKind::Thin2D) {
    const TextLine& cb = need("corner_blocks");
    expect_n(cb, 1);
    f.corner_blocks = static_cast<int>(parse_int(cb.values[0], "scene.corner_blocks"));
  } else {
    forbid("corner_blocks");
  }
  for (const TextLine* g : geometry) {
    if (g->key != "subbody") continue;
    if (f.kind != SceneKind::Body3D) throw ParseError("scene.subbody", "only allowed for kind body3d");
    if (g->values.size() != 3) throw ParseError("scene.subbody", "expected name, cells, patches");
    f.subbodies.push_back({g->values[0], static_cast<int>(parse_int(g->values[1], "scene.subbody.cells")),
                           static_cast<int>(parse_int(g->values[2], "scene.subbody.patches"))});
  }
  if (f.kind == SceneKind::Body3D && f.subbodies.size() != 6)
    throw ParseError("scene.subbody", "expected 6 sub-body sections");
  return f;
}

namespace {

SequencePair sequence_of(const SceneFile& f) { return generate_sequences(f.c, f.c1, f.policy, f.depth); }

std::vector<SceneSurface> listing(const Body2D& body) {
  std::vector<SceneSurface> out;
  for (const auto& s : body.surfaces) out.push_back({s.curve, s.role});
  return out;
}

}  // namespace

SceneFile build_scene_file(SceneFile f) {
  f.version = kSceneVersion;
  f.surfaces.clear();
  f.subbodies.clear();
  f.corner_blocks = 0;
  switch (f.kind) {
    case SceneKind::Thin2D: {
      f.c = 1.0;
      f.c1 = 0.5;
      f.policy = SequencePolicy::thin_limit();
      const Body2D b = build_thin_orthogonal(f.depth);
      f.surfaces = listing(b);
      f.corner_blocks = static_cast<int>(b.corner_blocks.size());
      break;
    }
    case SceneKind::Rhombus2D: {
      const Body2D b = build_rhombus_body(RhombusFrame::make(f.c, f.dir1, f.dir2), sequence_of(f));
      f.surfaces = listing(b);
      break;
    }
    case SceneKind::Body3D: {
      const Body3D b = build_body3(f.c, f.c1, sequence_of(f), f.depth);
      for (const auto& sb : b.subs) {
        int patches = 0;
        for (int ci : sb.cells) patches += b.cells[ci].patch_count;
        f.subbodies.push_back({sb.name, static_cast<int>(sb.cells.size()), patches});
      }
      break;
    }
    case SceneKind::Custom:
      throw InvalidArgument("custom scenes are written by hand, not generated");
  }
  return f;
}

LoadedScene instantiate(const SceneFile& f) {
  LoadedScene L;
  L.file = f;
  if (f.kind == SceneKind::Custom) {
    for (const auto& s : f.surfaces) L.scene2.surfaces.push_back({s.curve, s.role, 0, {}});
    L.scene2.group_names = {"custom"};
    finalize_scene(L.scene2);
    L.dim = 2;
    return L;
  }
  const SceneFile expected = build_scene_file(f);
  if (serialize(expected) != serialize(f))
    throw ParseError("scene.surfaces", "derived geometry does not match the parameters");
  switch (f.kind) {
    case SceneKind::Thin2D:
      L.body2 = build_thin_orthogonal(f.depth);
      break;
    case SceneKind::Rhombus2D:
      L.body2 = build_rhombus_body(RhombusFrame::make(f.c, f.dir1, f.dir2), sequence_of(f));
      break;
    case SceneKind::Body3D:
      L.body3 = build_body3(f.c, f.c1, sequence_of(f), f.depth);
      break;
    case SceneKind::Custom:
      break;
  }
  if (L.body2) {
    L.dim = 2;
    L.scene2 = make_scene(*L.body2);
    L.classify2 = classifier_for(*L.body2);
  } else {
    L.dim = 3;
    L.scene3 = make_scene(*L.body3);
    L.classify3 = classifier_for(*L.body3);
  }
  return L;
}

std::string scene_hash(const SceneFile& f) { return hex64(fnv1a64(serialize(f))); }

}  // namespace invis::io
