#pragma once

#include "ftl_arena/types.hpp"

namespace ftla {

/// The 4x4 positive-definite matrix behind the bundled elongated-ellipsoid
/// experiments (also shipped as data/q4_ellipsoid.json).
inline Matrix preset_q4() {
  Matrix q(4, 4);
  q << 4.3367, 3.6346, -2.2250, 3.5628,
       3.6346, 3.9966, -2.3613, 3.2817,
      -2.2250, -2.3613, 2.0589, -2.1295,
       3.5628, 3.2817, -2.1295, 3.4206;
  return q;
}

}  // namespace ftla
