#include "cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "invis/errors.hpp"
#include "invis/io/mesh.hpp"
#include "invis/io/report_file.hpp"
#include "invis/io/scene_file.hpp"
#include "invis/io/svg.hpp"
#include "invis/io/text_format.hpp"

namespace invis::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  int depth = 8;
  int jobs = 1;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

io::LoadedScene load(const std::string& path) { return io::instantiate(io::parse_scene(read_file(path))); }

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(io::parse_real(tok, what));
  return v;
}

/// Named axis, rhombus side direction, or a comma-separated vector.
std::array<double, 3> parse_direction(std::string s, const io::LoadedScene& L) {
  double sign = 1.0;
  std::string name = s;
  if (!name.empty() && (name[0] == '+' || name[0] == '-') && name.size() > 1 && std::isalpha(name[1])) {
    sign = name[0] == '-' ? -1.0 : 1.0;
    name = name.substr(1);
  }
  std::array<double, 3> d{};
  if (name == "x" || name == "y" || name == "z") {
    const int k = name[0] - 'x';
    if (k >= L.dim) throw InvalidArgument("direction " + s + " needs a 3D scene");
    d[k] = sign;
    return d;
  }
  if (name == "dir1" || name == "dir2") {
    if (L.file.kind != io::SceneKind::Rhombus2D) throw InvalidArgument(name + " applies to rhombus2d scenes only");
    const Vec2 v = normalized(name == "dir1" ? L.file.dir1 : L.file.dir2);
    return {sign * v.x, sign * v.y, 0.0};
  }
  const auto v = parse_list(s, "direction");
  if (static_cast<int>(v.size()) != L.dim)
    throw InvalidArgument("direction " + s + " needs " + std::to_string(L.dim) + " components");
  double n = 0.0;
  for (int k = 0; k < L.dim; ++k) n += v[k] * v[k];
  if (!(n > 0.0)) throw InvalidArgument("direction must be nonzero");
  for (int k = 0; k < L.dim; ++k) d[k] = v[k] / std::sqrt(n);
  return d;
}

std::vector<std::string> default_directions(const io::LoadedScene& L) {
  switch (L.file.kind) {
    case io::SceneKind::Thin2D:
      return {"+y", "-y", "+x", "-x"};
    case io::SceneKind::Rhombus2D:
      return {"+dir1", "-dir1", "+dir2", "-dir2"};
    case io::SceneKind::Body3D:
      return {"+x", "-x", "+y", "-y", "+z", "-z"};
    case io::SceneKind::Custom:
      break;
  }
  throw InvalidArgument("custom scenes need an explicit --direction");
}

struct FlowOptions {
  std::vector<std::string> directions;
  std::size_t rays = 10000;
  std::string sampling = "grid";
  double margin = 1e-6;
};

Sampling sampling_of(const FlowOptions& f, const Globals& g) {
  if (f.sampling == "grid") return Sampling::grid(f.rays);
  if (f.sampling == "mc") return Sampling::monte_carlo(f.rays, g.seed);
  throw InvalidArgument("sampling must be grid or mc");
}

VerificationReport run_flow(const io::LoadedScene& L, const std::array<double, 3>& d, const FlowOptions& fo,
                            const Globals& g) {
  if (L.dim == 2) {
    FlowSpec2 f;
    f.direction = {d[0], d[1]};
    f.sampling = sampling_of(fo, g);
    f.exclusion_margin = fo.margin;
    f.jobs = g.jobs;
    return collect_invisibility(L.scene2, L.classify2, f, g.tolerance);
  }
  FlowSpec3 f;
  f.direction = {d[0], d[1], d[2]};
  f.sampling = sampling_of(fo, g);
  f.exclusion_margin = fo.margin;
  f.jobs = g.jobs;
  return collect_invisibility(L.scene3, L.classify3, f, g.tolerance);
}

std::string vec_text(const std::array<double, 3>& v, int dim) {
  std::string s;
  for (int k = 0; k < dim; ++k) s += (k ? " " : "") + io::fmt_real(v[k]);
  return s;
}

bool flow_passes(const VerificationReport& r) {
  return r.invisible && r.singular_fraction() <= io::kMaxSingularFraction;
}

// ---------------------------------------------------------------------------

struct BuildOptions {
  std::string kind;
  double c = 1.0;
  double c1 = 0.5;
  std::string policy = "constant-fraction";
  double gamma = 0.5;
  std::string a_list;
  double angle = 90.0;
  std::string dir1, dir2;
  std::string output;
};

int cmd_build(const BuildOptions& o, const Globals& g, std::ostream& out) {
  io::SceneFile f;
  if (o.kind == "thin2d") f.kind = io::SceneKind::Thin2D;
  else if (o.kind == "rhombus2d") f.kind = io::SceneKind::Rhombus2D;
  else if (o.kind == "body3d") f.kind = io::SceneKind::Body3D;
  else throw InvalidArgument("kind must be thin2d, rhombus2d or body3d");
  f.depth = g.depth;
  f.c = o.c;
  f.c1 = o.c1;
  if (o.policy == "thin-limit") f.policy = SequencePolicy::thin_limit();
  else if (o.policy == "constant-fraction") f.policy = SequencePolicy::constant_fraction(o.gamma);
  else if (o.policy == "explicit") f.policy = SequencePolicy::explicit_list(parse_list(o.a_list, "a"));
  else throw InvalidArgument("policy must be thin-limit, constant-fraction or explicit");
  if (f.kind == io::SceneKind::Rhombus2D) {
    if (!o.dir1.empty() || !o.dir2.empty()) {
      const auto a = parse_list(o.dir1.empty() ? "0,1" : o.dir1, "dir1");
      const auto b = parse_list(o.dir2, "dir2");
      if (a.size() != 2 || b.size() != 2) throw InvalidArgument("dir1 and dir2 need two components");
      f.dir1 = normalized(Vec2{a[0], a[1]});
      f.dir2 = normalized(Vec2{b[0], b[1]});
    } else {
      const double t = o.angle * 3.14159265358979323846 / 180.0;
      f.dir1 = {0.0, 1.0};
      f.dir2 = {std::sin(t), std::cos(t)};
    }
  }
  write_output(o.output, io::serialize(io::build_scene_file(f)), out);
  return kPass;
}

struct VerifyOptions {
  std::string scene;
  FlowOptions flow;
  std::string output;
};

int cmd_verify(const VerifyOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto L = load(o.scene);
  auto dirs = o.flow.directions.empty() ? default_directions(L) : o.flow.directions;
  io::ReportFile rep;
  rep.scene_hash = io::scene_hash(L.file);
  rep.seed = g.seed;
  rep.tolerance = g.tolerance;
  bool anomaly = false, pass = true;
  for (const auto& s : dirs) {
    const auto r = run_flow(L, parse_direction(s, L), o.flow, g);
    anomaly = anomaly || r.rays_anomaly > 0;
    pass = pass && flow_passes(r);
    err << "flow " << s << ": " << (flow_passes(r) ? "invisible" : "NOT invisible") << ", " << r.histogram_total()
        << " rays graded, velocity dev " << io::fmt_real(r.max_velocity_dev) << ", lateral dev "
        << io::fmt_real(r.max_lateral_dev) << "\n";
    rep.flows.push_back(r);
  }
  if (g.timing) rep.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_output(o.output, io::serialize(rep), out);
  if (anomaly) return kAnomaly;
  return pass ? kPass : kVerdict;
}

int cmd_resistance(const VerifyOptions& o, const Globals& g, std::ostream& out) {
  const auto L = load(o.scene);
  auto dirs = o.flow.directions.empty() ? default_directions(L) : o.flow.directions;
  bool anomaly = false;
  for (const auto& s : dirs) {
    const auto d = parse_direction(s, L);
    const auto r = run_flow(L, d, o.flow, g);
    anomaly = anomaly || r.rays_anomaly > 0;
    out << "direction " << vec_text(d, L.dim) << "\n";
    out << "resistance " << vec_text(r.resistance, L.dim) << "\n";
    out << "resistance_per_area " << vec_text(r.resistance_per_area, L.dim) << "\n";
  }
  return anomaly ? kAnomaly : kPass;
}

struct CaseOptions {
  std::string scene;
  int rays = 10000;
};

int cmd_cases(const CaseOptions& o, const Globals& g, std::ostream& out) {
  const auto L = load(o.scene);
  if (!L.body3) throw Unsupported("verify-cases needs a body3d scene");
  const auto rep = verify_projection_cases(*L.body3, o.rays, g.seed, g.tolerance, g.jobs);
  for (const auto& c : rep.cases) {
    out << "case " << c.name << " rays " << c.rays << " foreign_hits " << c.foreign_hits << " histogram";
    for (const auto& [k, n] : c.reflection_histogram) out << " " << k << ":" << n;
    out << " velocity_dev " << io::fmt_real(c.max_velocity_dev) << " lateral_dev " << io::fmt_real(c.max_lateral_dev)
        << "\n";
  }
  out << "violations " << rep.violations << "\n";
  return kPass;
}

struct TraceOptions {
  std::string scene;
  std::string origin, dir;
};

int cmd_trace(const TraceOptions& o, const Globals&, std::ostream& out) {
  const auto L = load(o.scene);
  const auto p = parse_list(o.origin, "origin");
  const auto d = parse_list(o.dir, "dir");
  if (static_cast<int>(p.size()) != L.dim || static_cast<int>(d.size()) != L.dim)
    throw InvalidArgument("origin and dir need " + std::to_string(L.dim) + " components");
  auto emit = [&](const auto& rec) {
    out << "status " << to_string(rec.status) << "\n";
    for (const auto& r : rec.reflections) {
      out << "reflection";
      for (int k = 0; k < L.dim; ++k) out << " " << io::fmt_real(r.point[k]);
      out << " surface " << r.surface_id << "\n";
    }
    if (rec.exit) {
      out << "exit";
      for (int k = 0; k < L.dim; ++k) out << " " << io::fmt_real(rec.exit->origin[k]);
      for (int k = 0; k < L.dim; ++k) out << " " << io::fmt_real(rec.exit->dir[k]);
      out << "\n";
    }
    return rec.status == TraceStatus::Exited || rec.status == TraceStatus::SingularHit ? kPass : kAnomaly;
  };
  if (L.dim == 2) return emit(trace(L.scene2, Ray2{{p[0], p[1]}, normalized(Vec2{d[0], d[1]})}));
  return emit(trace(L.scene3, Ray3{{p[0], p[1], p[2]}, normalized(Vec3{d[0], d[1], d[2]})}));
}

struct SvgCmdOptions {
  std::string scene;
  int samples = 128;
  std::vector<std::string> rays;
  std::string flow;
  std::size_t flow_rays = 16;
  std::string output;
};

int cmd_svg(const SvgCmdOptions& o, const Globals& g, std::ostream& out) {
  const auto L = load(o.scene);
  if (L.dim != 2) throw Unsupported("SVG export needs a 2D scene");
  std::vector<TraceRecord2> recs;
  for (const auto& s : o.rays) {
    const auto v = parse_list(s, "ray");
    if (v.size() != 4) throw InvalidArgument("--ray needs ox,oy,dx,dy");
    recs.push_back(trace(L.scene2, Ray2{{v[0], v[1]}, normalized(Vec2{v[2], v[3]})}));
  }
  if (!o.flow.empty()) {
    const auto d = parse_direction(o.flow, L);
    FlowSpec2 f;
    f.direction = {d[0], d[1]};
    f.sampling = Sampling::grid(o.flow_rays);
    f.jobs = g.jobs;
    double measure = 0.0;
    for (const auto& r : flow_rays(L.scene2, f, measure)) recs.push_back(trace(L.scene2, r));
  }
  io::SvgOptions so;
  so.arc_samples = o.samples;
  write_output(o.output, io::export_svg(L, recs, so), out);
  return kPass;
}

struct MeshCmdOptions {
  std::string scene;
  int nu = 32, nv = 8;
  std::string output;
};

int cmd_mesh(const MeshCmdOptions& o, const Globals&, std::ostream& out, std::ostream& err) {
  const auto L = load(o.scene);
  io::MeshOptions mo;
  mo.nu = o.nu;
  mo.nv = o.nv;
  io::MeshStats st;
  const std::string text = io::export_obj(L, mo, &st);
  write_output(o.output, text, out);
  err << st.vertices << " vertices, " << st.faces << " triangles\n";
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ray tracing and verification of invisible fractal mirror bodies", "invis"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for Monte Carlo sampling");
  app.add_option("--tolerance", g.tolerance, "Invisibility tolerance, relative to the scene diameter")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "Truncation depth for build")->check(CLI::Range(1, 64));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--timing", g.timing, "Record wall time in the report");

  auto add_flow = [](CLI::App* sub, FlowOptions& f) {
    sub->add_option("--direction,-d", f.directions, "+x, -y, +dir1, or a comma vector (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--rays,-n", f.rays, "Rays per direction")->check(CLI::PositiveNumber);
    sub->add_option("--sampling", f.sampling, "grid or mc")->check(CLI::IsMember({"grid", "mc"}));
    sub->add_option("--margin", f.margin, "Exclusion margin around singular lines");
  };

  BuildOptions bo;
  auto* build = app.add_subcommand("build", "Write a scene file for a generated body");
  build->add_option("kind", bo.kind, "thin2d, rhombus2d or body3d")->required();
  build->add_option("--c", bo.c, "Half-width");
  build->add_option("--c1", bo.c1, "First abscissa");
  build->add_option("--policy", bo.policy, "thin-limit, constant-fraction or explicit");
  build->add_option("--gamma", bo.gamma, "Fraction for constant-fraction");
  build->add_option("--a", bo.a_list, "Comma-separated foci for explicit");
  build->add_option("--angle", bo.angle, "Angle between the rhombus directions in degrees");
  build->add_option("--dir1", bo.dir1, "First direction x,y");
  build->add_option("--dir2", bo.dir2, "Second direction x,y");
  build->add_option("-o,--output", bo.output, "Output path (stdout if omitted)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check invisibility along flow directions and write a report");
  verify->add_option("scene", vo.scene)->required();
  add_flow(verify, vo.flow);
  verify->add_option("-o,--output", vo.output, "Report path (stdout if omitted)");

  VerifyOptions ro;
  auto* resist = app.add_subcommand("resistance", "Print the resistance vector per direction");
  resist->add_option("scene", ro.scene)->required();
  add_flow(resist, ro.flow);

  CaseOptions co;
  auto* cases = app.add_subcommand("verify-cases", "Audit the z-flow projection cases of a 3D body");
  cases->add_option("scene", co.scene)->required();
  cases->add_option("--rays,-n", co.rays, "Rays per case")->check(CLI::PositiveNumber);

  TraceOptions to;
  auto* tr = app.add_subcommand("trace", "Trace one ray and list its reflections");
  tr->add_option("scene", to.scene)->required();
  tr->add_option("--origin", to.origin, "x,y[,z]")->required();
  tr->add_option("--dir", to.dir, "x,y[,z]")->required();

  SvgCmdOptions so;
  auto* svg = app.add_subcommand("export-svg", "Draw a 2D scene, optionally with traced rays");
  svg->add_option("scene", so.scene)->required();
  svg->add_option("--samples", so.samples, "Points per arc")->check(CLI::Range(2, 100000));
  svg->add_option("--ray", so.rays, "ox,oy,dx,dy (repeatable)")->allow_extra_args(false);
  svg->add_option("--flow", so.flow, "Direction of a flow of sample rays");
  svg->add_option("--flow-rays", so.flow_rays, "Rays in the sample flow")->check(CLI::PositiveNumber);
  svg->add_option("-o,--output", so.output, "Output path (stdout if omitted)");

  MeshCmdOptions mo;
  auto* mesh = app.add_subcommand("export-mesh", "Tessellate a 3D scene as OBJ");
  mesh->add_option("scene", mo.scene)->required();
  mesh->add_option("--nu", mo.nu, "Quads along the base curve")->check(CLI::Range(1, 100000));
  mesh->add_option("--nv", mo.nv, "Quads along the extrusion")->check(CLI::Range(1, 100000));
  mesh->add_option("-o,--output", mo.output, "Output path (stdout if omitted)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*build) return cmd_build(bo, g, out);
    if (*verify) return cmd_verify(vo, g, out, err);
    if (*resist) return cmd_resistance(ro, g, out);
    if (*cases) return cmd_cases(co, g, out);
    if (*tr) return cmd_trace(to, g, out);
    if (*svg) return cmd_svg(so, g, out);
    if (*mesh) return cmd_mesh(mo, g, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUsage;
  } catch (const TracerAnomaly& e) {
    err << "tracer anomaly: " << e.what() << "\n";
    return kAnomaly;
  } catch (const CaseViolation& e) {
    err << "case violation: " << e.what() << "\n";
    return kVerdict;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace invis::cli
