#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "fitts/sim/hand.hpp"

namespace fitts::sim {

struct KalmanTuning {
  double process_noise = 10.0;          // white-noise acceleration spectral density
  double measurement_noise = 1e-4;      // variance per measured coordinate
  double initial_velocity_variance = 1.0;
};

/// Constant-velocity Kalman filter on one coordinate. The first measurement
/// initializes the state with zero velocity.
class ConstantVelocityFilter {
 public:
  explicit ConstantVelocityFilter(const KalmanTuning& tuning = {}) : tuning_(tuning) {}

  /// Predicts to `t_s` and folds in `measurement`; returns the filtered value.
  double update(double t_s, double measurement);

  bool initialized() const { return initialized_; }
  double value() const { return state_(0); }
  double rate() const { return state_(1); }

 private:
  KalmanTuning tuning_;
  bool initialized_ = false;
  double last_t_ = 0.0;
  Eigen::Vector2d state_ = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance_ = Eigen::Matrix2d::Zero();
};

/// Filters position and direction per axis; directions are renormalized.
class HandSmoother {
 public:
  explicit HandSmoother(const KalmanTuning& tuning = {});
  HandSample update(const HandSample& raw);

 private:
  std::vector<ConstantVelocityFilter> axes_;  // px py pz dx dy dz
};

/// Throws std::invalid_argument unless timestamps strictly increase.
std::vector<HandSample> kalman_smooth(std::span<const HandSample> trace,
                                      const KalmanTuning& tuning = {});

}  // namespace fitts::sim
