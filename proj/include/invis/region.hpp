#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "invis/vec.hpp"

namespace invis {

/// A closed set given as a union of parts. Each part has a signed depth
/// (positive inside) and a bounding box used to clip sampling.
template <class V>
struct RegionPart {
  Box<V> box;
  std::function<double(const V&)> depth;
};

template <class V>
struct Region {
  std::vector<RegionPart<V>> parts;

  double depth(const V& p) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& part : parts) {
      if (part.box.contains(p)) best = std::max(best, part.depth(p));
    }
    return best;
  }
};

using Region2 = Region<Vec2>;
using Region3 = Region<Vec3>;

}  // namespace invis
