#pragma once

#include <Eigen/Core>

namespace fitts::sim {

/// x right, y up, z forward; metres.
using Vec3 = Eigen::Vector3d;

struct HandSample {
  double t_s = 0.0;
  Vec3 position_m = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();  // unit pointing direction of arm + wrist
  bool pinch = false;              // index finger closed
};

}  // namespace fitts::sim
