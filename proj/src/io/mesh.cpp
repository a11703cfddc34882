#include "invis/io/mesh.hpp"

#include <sstream>

#include "invis/errors.hpp"
#include "invis/io/text_format.hpp"

namespace invis::io {

std::string export_obj(const LoadedScene& L, const MeshOptions& opt, MeshStats* stats) {
  if (L.dim != 3) throw Unsupported("mesh export needs a 3D scene");
  if (opt.nu < 1 || opt.nv < 1) throw InvalidArgument("mesh resolution must be positive");
  std::ostringstream os;
  os << "# invis mesh\n";
  std::size_t nverts = 0, nfaces = 0;
  for (std::size_t si = 0; si < L.scene3.surfaces.size(); ++si) {
    const auto& patch = L.scene3.surfaces[si].patch;
    const auto base = sample_curve(patch.base, opt.nu + 1);
    os << "g patch" << si << "\n";
    for (int i = 0; i + 1 < static_cast<int>(base.size()); ++i) {
      for (int j = 0; j < opt.nv; ++j) {
        const double w0 = patch.w_lo + (patch.w_hi - patch.w_lo) * j / opt.nv;
        const double w1 = patch.w_lo + (patch.w_hi - patch.w_lo) * (j + 1) / opt.nv;
        const Vec3 q[4] = {patch.lift(base[i], w0), patch.lift(base[i + 1], w0), patch.lift(base[i + 1], w1),
                           patch.lift(base[i], w1)};
        const Vec3 mid = (q[0] + q[1] + q[2] + q[3]) * 0.25;
        if (patch.trim_margin(mid) < 0.0) continue;
        for (const auto& p : q) os << "v " << fmt_real(p.x) << " " << fmt_real(p.y) << " " << fmt_real(p.z) << "\n";
        const std::size_t b = nverts + 1;
        os << "f " << b << " " << b + 1 << " " << b + 2 << "\n";
        os << "f " << b << " " << b + 2 << " " << b + 3 << "\n";
        nverts += 4;
        nfaces += 2;
      }
    }
  }
  if (stats) *stats = {nverts, nfaces};
  return os.str();
}

}  // namespace invis::io
