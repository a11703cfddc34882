#include "invis/io/svg.hpp"

#include <algorithm>
#include <sstream>

#include "invis/errors.hpp"
#include "invis/io/text_format.hpp"

namespace invis::io {

namespace {

struct View {
  Box2 box;
  double scale = 1.0;
  double px(double x) const { return (x - box.lo.x) * scale; }
  double py(double y) const { return (box.hi.y - y) * scale; }  // SVG y grows downward
};

std::string pt(const View& v, Vec2 p) { return fmt_real(v.px(p.x)) + "," + fmt_real(v.py(p.y)); }

}  // namespace

std::string export_svg(const LoadedScene& L, const std::vector<TraceRecord2>& rays, const SvgOptions& opt) {
  if (L.dim != 2) throw Unsupported("SVG export needs a 2D scene");
  const Scene2& sc = L.scene2;
  View v;
  v.box = sc.bbox;
  for (const auto& r : rays) {
    v.box.extend(r.entry.origin);
    for (const auto& f : r.reflections) v.box.extend(f.point);
  }
  v.box = v.box.inflated(0.05 * std::max(sc.diameter, 1e-12));
  const double w = v.box.hi.x - v.box.lo.x;
  const double h = v.box.hi.y - v.box.lo.y;
  v.scale = opt.width_px / w;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_real(opt.width_px) << "\" height=\""
     << fmt_real(h * v.scale) << "\" viewBox=\"0 0 " << fmt_real(opt.width_px) << " " << fmt_real(h * v.scale)
     << "\">\n";
  if (opt.draw_solids && L.body2) {
    os << "<g class=\"solids\" fill=\"#d8d8d8\" stroke=\"none\">\n";
    for (const auto& pc : L.body2->pieces) {
      auto top = sample_curve(pc.upper, opt.arc_samples);
      auto bot = sample_curve(pc.lower, opt.arc_samples);
      // Both boundaries run left to right; close the loop through the lower one reversed.
      if (top.front().x > top.back().x) std::reverse(top.begin(), top.end());
      if (bot.front().x < bot.back().x) std::reverse(bot.begin(), bot.end());
      os << "<polygon points=\"";
      for (auto p : top) os << pt(v, p) << " ";
      for (auto p : bot) os << pt(v, p) << " ";
      os << "\"/>\n";
    }
    for (const auto& cb : L.body2->corner_blocks) {
      os << "<polygon class=\"corner\" points=\"";
      for (auto p : cb.outline(opt.arc_samples)) os << pt(v, p) << " ";
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "<g class=\"mirrors\" fill=\"none\" stroke=\"#000\" stroke-width=\"1\">\n";
  for (const auto& s : sc.surfaces) {
    if (s.role != SurfaceRole::Reflecting) continue;
    if (const auto* g = std::get_if<Segment2>(&s.curve)) {
      os << "<line x1=\"" << fmt_real(v.px(g->a.x)) << "\" y1=\"" << fmt_real(v.py(g->a.y)) << "\" x2=\""
         << fmt_real(v.px(g->b.x)) << "\" y2=\"" << fmt_real(v.py(g->b.y)) << "\"/>\n";
    } else {
      const auto pts = sample_curve(s.curve, opt.arc_samples);
      os << "<path d=\"M";
      for (std::size_t k = 0; k < pts.size(); ++k) os << (k ? " L" : "") << pt(v, pts[k]);
      os << "\"/>\n";
    }
  }
  os << "</g>\n";
  if (!rays.empty()) {
    os << "<g class=\"rays\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"0.5\">\n";
    for (const auto& r : rays) {
      os << "<polyline points=\"" << pt(v, r.entry.origin);
      for (const auto& f : r.reflections) os << " " << pt(v, f.point);
      os << "\"/>\n";
      if (r.exit) {
        const Vec2 a = r.exit->origin;
        const double t = exit_parameter(v.box, *r.exit);
        const Vec2 b = a + r.exit->dir * t;
        os << "<line x1=\"" << fmt_real(v.px(a.x)) << "\" y1=\"" << fmt_real(v.py(a.y)) << "\" x2=\""
           << fmt_real(v.px(b.x)) << "\" y2=\"" << fmt_real(v.py(b.y)) << "\"/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace invis::io
