#include "fitts/sim/kalman.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace fitts::sim {

double ConstantVelocityFilter::update(double t_s, double z) {
  if (!initialized_) {
    initialized_ = true;
    last_t_ = t_s;
    state_ << z, 0.0;
    covariance_ << tuning_.measurement_noise, 0.0, 0.0, tuning_.initial_velocity_variance;
    return z;
  }
  const double dt = t_s - last_t_;
  last_t_ = t_s;

  Eigen::Matrix2d F;
  F << 1.0, dt, 0.0, 1.0;
  Eigen::Matrix2d Q;
  const double q = tuning_.process_noise;
  Q << q * dt * dt * dt / 3.0, q * dt * dt / 2.0, q * dt * dt / 2.0, q * dt;
  state_ = F * state_;
  covariance_ = F * covariance_ * F.transpose() + Q;

  const double innovation = z - state_(0);
  const double s = covariance_(0, 0) + tuning_.measurement_noise;
  const Eigen::Vector2d gain = covariance_.col(0) / s;
  state_ += gain * innovation;
  Eigen::Matrix2d I_KH = Eigen::Matrix2d::Identity();
  I_KH(0, 0) -= gain(0);
  I_KH(1, 0) -= gain(1);
  covariance_ = I_KH * covariance_;
  return state_(0);
}

HandSmoother::HandSmoother(const KalmanTuning& tuning) : axes_(6, ConstantVelocityFilter(tuning)) {}

HandSample HandSmoother::update(const HandSample& raw) {
  HandSample out = raw;
  for (int i = 0; i < 3; ++i) {
    out.position_m(i) = axes_[i].update(raw.t_s, raw.position_m(i));
    out.direction(i) = axes_[3 + i].update(raw.t_s, raw.direction(i));
  }
  const double norm = out.direction.norm();
  out.direction = norm > 0.0 ? Vec3(out.direction / norm) : raw.direction;
  return out;
}

std::vector<HandSample> kalman_smooth(std::span<const HandSample> trace,
                                      const KalmanTuning& tuning) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (!(trace[i].t_s > trace[i - 1].t_s)) {
      throw std::invalid_argument("kalman_smooth: timestamps must strictly increase (sample " +
                                  std::to_string(i) + ")");
    }
  }
  HandSmoother smoother(tuning);
  std::vector<HandSample> out;
  out.reserve(trace.size());
  for (const auto& s : trace) out.push_back(smoother.update(s));
  return out;
}

}  // namespace fitts::sim
