#pragma once

#include <optional>

#include "fitts/sim/hand.hpp"

namespace fitts::sim {

struct Landing {
  Vec3 point_m = Vec3::Zero();
  double flight_time_s = 0.0;
};

/// Where a ballistic arc launched from `origin` crosses y = landing_height on
/// the way down (largest non-negative root). Empty if it never gets there.
std::optional<Landing> parabola_landing(const Vec3& origin_m, const Vec3& velocity_m_s,
                                        double gravity_m_s2, double landing_height_m);

struct HitTest {
  bool hit = false;
  double deviation_m = 0.0;
};

/// Hit iff the landing point lies within the sphere of diameter `width_m`
/// (boundary inclusive).
HitTest sphere_hit_test(const Vec3& landing_point_m, const Vec3& target_center_m, double width_m);

/// Maps arm extension (0 = retracted, 1 = fully extended) to launch speed.
struct LaunchSpeedModel {
  double base_speed_m_s = 3.0;
  double extension_gain_m_s = 9.0;

  double speed(double extension_fraction) const;
};

/// Unit launch direction that lands `speed` shots from `origin` on `target`
/// while descending, flatter arc first. Empty when no such arc exists.
std::optional<Vec3> aim_direction(const Vec3& origin_m, double speed_m_s, const Vec3& target_m,
                                  double gravity_m_s2);

}  // namespace fitts::sim
