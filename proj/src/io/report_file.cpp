#include "invis/io/report_file.hpp"

#include <sstream>

#include "invis/errors.hpp"
#include "invis/io/text_format.hpp"

namespace invis::io {

bool ReportFile::all_pass() const {
  for (const auto& f : flows)
    if (!f.invisible || f.singular_fraction() > kMaxSingularFraction) return false;
  return true;
}

namespace {

std::string u(std::size_t v) { return std::to_string(v); }

}  // namespace

std::string serialize(const ReportFile& r) {
  std::ostringstream os;
  os << "invis-report\n";
  os << "version " << r.version << "\n";
  os << "scene " << r.scene_hash << "\n";
  os << "seed " << r.seed << "\n";
  os << "tolerance " << fmt_real(r.tolerance) << "\n";
  for (const auto& f : r.flows) {
    os << "flow\n";
    os << "dim " << f.dim << "\n";
    os << "direction";
    for (int k = 0; k < f.dim; ++k) os << " " << fmt_real(f.direction[k]);
    os << "\n";
    os << "rays " << u(f.rays_total) << " " << u(f.rays_excluded) << " " << u(f.rays_partial_ring) << " "
       << u(f.rays_band) << " " << u(f.rays_singular) << " " << u(f.rays_anomaly) << "\n";
    for (const auto& [k, n] : f.reflection_histogram) os << "histogram " << k << " " << u(n) << "\n";
    for (std::size_t g = 0; g < f.group_names.size(); ++g)
      os << "group " << f.group_names[g] << " " << u(g < f.group_hits.size() ? f.group_hits[g] : 0) << "\n";
    os << "band_max_reflections " << f.band_max_reflections << "\n";
    os << "deviation " << fmt_real(f.max_velocity_dev) << " " << fmt_real(f.max_lateral_dev) << "\n";
    os << "measure " << fmt_real(f.cross_section) << " " << fmt_real(f.band_measure) << " "
       << fmt_real(f.partial_ring_measure) << " " << fmt_real(f.excluded_measure) << "\n";
    os << "resistance";
    for (int k = 0; k < f.dim; ++k) os << " " << fmt_real(f.resistance[k]);
    os << "\n";
    os << "resistance_per_area";
    for (int k = 0; k < f.dim; ++k) os << " " << fmt_real(f.resistance_per_area[k]);
    os << "\n";
    os << "diameter " << fmt_real(f.diameter) << "\n";
    os << "tau " << fmt_real(f.tau) << " " << fmt_real(f.tau_report) << "\n";
    os << "verdict " << (f.invisible ? "pass" : "fail") << " " << (f.invisible_report ? "pass" : "fail") << " "
       << (f.zero_resistance ? "pass" : "fail") << "\n";
    if (!f.first_anomaly.empty()) os << "anomaly " << f.first_anomaly << "\n";
    os << "endflow\n";
  }
  if (r.timing_seconds) os << "timing " << fmt_real(*r.timing_seconds) << "\n";
  os << "end\n";
  return os.str();
}

ReportFile parse_report(const std::string& text) {
  ReportFile r;
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].key != "invis-report") throw ParseError("report", "missing 'invis-report' header");
  auto need = [](const TextLine& l, std::size_t n, const std::string& path) {
    if (l.values.size() != n) throw ParseError(path, "expected " + std::to_string(n) + " values");
  };
  auto bit = [](const std::string& s, const std::string& path) {
    if (s == "pass") return true;
    if (s == "fail") return false;
    throw ParseError(path, "expected pass or fail");
  };
  std::size_t pos = 1;
  auto header = [&](const char* key) -> const TextLine& {
    if (pos >= lines.size() || lines[pos].key != key) throw ParseError(std::string("report.") + key, "missing field");
    return lines[pos++];
  };
  {
    const auto& l = header("version");
    need(l, 1, "report.version");
    r.version = static_cast<int>(parse_int(l.values[0], "report.version"));
    if (r.version != 1) throw ParseError("report.version", "unsupported version");
  }
  {
    const auto& l = header("scene");
    need(l, 1, "report.scene");
    r.scene_hash = l.values[0];
  }
  {
    const auto& l = header("seed");
    need(l, 1, "report.seed");
    try {
      std::size_t used = 0;
      r.seed = std::stoull(l.values[0], &used);
      if (used != l.values[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("report.seed", "not an unsigned integer");
    }
  }
  {
    const auto& l = header("tolerance");
    need(l, 1, "report.tolerance");
    r.tolerance = parse_real(l.values[0], "report.tolerance");
  }
  bool ended = false;
  while (pos < lines.size()) {
    const TextLine& l = lines[pos++];
    if (l.key == "end") {
      ended = true;
      break;
    }
    if (l.key == "timing") {
      need(l, 1, "report.timing");
      r.timing_seconds = parse_real(l.values[0], "report.timing");
      continue;
    }
    if (l.key != "flow") throw ParseError("report." + l.key, "unexpected field");
    const std::string fp = "report.flows[" + std::to_string(r.flows.size()) + "]";
    VerificationReport f;
    bool closed = false;
    while (pos < lines.size()) {
      const TextLine& m = lines[pos++];
      const std::string p = fp + "." + m.key;
      if (m.key == "endflow") {
        closed = true;
        break;
      } else if (m.key == "dim") {
        need(m, 1, p);
        f.dim = static_cast<int>(parse_int(m.values[0], p));
        if (f.dim != 2 && f.dim != 3) throw ParseError(p, "dimension must be 2 or 3");
      } else if (m.key == "direction" || m.key == "resistance" || m.key == "resistance_per_area") {
        need(m, static_cast<std::size_t>(f.dim), p);
        auto& dst = m.key == "direction" ? f.direction : m.key == "resistance" ? f.resistance : f.resistance_per_area;
        for (int k = 0; k < f.dim; ++k) dst[k] = parse_real(m.values[k], p);
      } else if (m.key == "rays") {
        need(m, 6, p);
        std::size_t* dst[6] = {&f.rays_total, &f.rays_excluded, &f.rays_partial_ring,
                               &f.rays_band,  &f.rays_singular, &f.rays_anomaly};
        for (int k = 0; k < 6; ++k) *dst[k] = static_cast<std::size_t>(parse_int(m.values[k], p));
      } else if (m.key == "histogram") {
        need(m, 2, p);
        f.reflection_histogram[static_cast<int>(parse_int(m.values[0], p))] =
            static_cast<std::size_t>(parse_int(m.values[1], p));
      } else if (m.key == "group") {
        need(m, 2, p);
        f.group_names.push_back(m.values[0]);
        f.group_hits.push_back(static_cast<std::size_t>(parse_int(m.values[1], p)));
      } else if (m.key == "band_max_reflections") {
        need(m, 1, p);
        f.band_max_reflections = static_cast<int>(parse_int(m.values[0], p));
      } else if (m.key == "deviation") {
        need(m, 2, p);
        f.max_velocity_dev = parse_real(m.values[0], p);
        f.max_lateral_dev = parse_real(m.values[1], p);
      } else if (m.key == "measure") {
        need(m, 4, p);
        f.cross_section = parse_real(m.values[0], p);
        f.band_measure = parse_real(m.values[1], p);
        f.partial_ring_measure = parse_real(m.values[2], p);
        f.excluded_measure = parse_real(m.values[3], p);
      } else if (m.key == "diameter") {
        need(m, 1, p);
        f.diameter = parse_real(m.values[0], p);
      } else if (m.key == "tau") {
        need(m, 2, p);
        f.tau = parse_real(m.values[0], p);
        f.tau_report = parse_real(m.values[1], p);
      } else if (m.key == "verdict") {
        need(m, 3, p);
        f.invisible = bit(m.values[0], p);
        f.invisible_report = bit(m.values[1], p);
        f.zero_resistance = bit(m.values[2], p);
      } else if (m.key == "anomaly") {
        std::string s;
        for (std::size_t k = 0; k < m.values.size(); ++k) s += (k ? " " : "") + m.values[k];
        f.first_anomaly = s;
      } else {
        throw ParseError(p, "unknown field");
      }
    }
    if (!closed) throw ParseError(fp, "missing 'endflow'");
    r.flows.push_back(std::move(f));
  }
  if (!ended) throw ParseError("report.end", "missing terminator");
  return r;
}

}  // namespace invis::io
