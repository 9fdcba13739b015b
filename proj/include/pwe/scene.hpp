#pragma once

#include "pwe/geometry.hpp"
#include "pwe/radio.hpp"

#include <vector>

namespace pwe {

struct Scene {
  std::vector<Wall> walls;
  Device tx;
  Device rx;
  PowerModel model;
};

}  // namespace pwe
