#include "fitts/sim/parabola.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fitts::sim {

std::optional<Landing> parabola_landing(const Vec3& origin, const Vec3& velocity, double g,
                                        double landing_height) {
  if (!(g > 0.0)) throw std::domain_error("parabola_landing: gravity must be positive");
  // origin_y + vy t - g t^2 / 2 = landing_height
  const double vy = velocity.y();
  const double drop = origin.y() - landing_height;
  const double disc = vy * vy + 2.0 * g * drop;
  if (disc < 0.0) return std::nullopt;
  const double t = (vy + std::sqrt(disc)) / g;
  if (t < 0.0) return std::nullopt;
  Landing out;
  out.flight_time_s = t;
  out.point_m = Vec3(origin.x() + velocity.x() * t, landing_height, origin.z() + velocity.z() * t);
  return out;
}

HitTest sphere_hit_test(const Vec3& landing, const Vec3& center, double width_m) {
  if (!(width_m > 0.0)) throw std::domain_error("sphere_hit_test: width must be positive");
  const double deviation = (landing - center).norm();
  return {deviation <= width_m / 2.0, deviation};
}

double LaunchSpeedModel::speed(double extension_fraction) const {
  return base_speed_m_s + extension_gain_m_s * std::clamp(extension_fraction, 0.0, 1.0);
}

std::optional<Vec3> aim_direction(const Vec3& origin, double speed, const Vec3& target,
                                  double g) {
  if (!(g > 0.0) || !(speed > 0.0)) throw std::domain_error("aim_direction: gravity and speed must be positive");
  const Vec3 delta = target - origin;
  const double range = std::hypot(delta.x(), delta.z());
  const double rise = delta.y();
  const double v2 = speed * speed;
  if (range == 0.0) {
    if (rise > v2 / (2.0 * g)) return std::nullopt;
    return Vec3(0.0, rise >= 0.0 ? 1.0 : -1.0, 0.0);
  }
  const double disc = v2 * v2 - g * (g * range * range + 2.0 * rise * v2);
  if (disc < 0.0) return std::nullopt;
  // Teleport arcs land on the way down, so take the flatter of the two
  // solutions that reaches the target after its apex.
  const double root = std::sqrt(disc);
  for (double tan_theta : {(v2 - root) / (g * range), (v2 + root) / (g * range)}) {
    const double cos_theta = 1.0 / std::sqrt(1.0 + tan_theta * tan_theta);
    const double sin_theta = tan_theta * cos_theta;
    const double t = range / (speed * cos_theta);
    if (speed * sin_theta - g * t > 0.0) continue;
    return Vec3(cos_theta * delta.x() / range, sin_theta, cos_theta * delta.z() / range);
  }
  return std::nullopt;
}

}  // namespace fitts::sim
