#include "fitts/sim/hand_trace.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fitts::sim {

double minimum_jerk(double tau) {
  const double t3 = tau * tau * tau;
  return t3 * (10.0 - 15.0 * tau + 6.0 * tau * tau);
}

std::vector<HandSample> synth_hand_trace(const HandPose& from, const HandPose& to,
                                         double duration_s, double tremor_sd_m,
                                         double sample_rate_hz, std::uint64_t seed) {
  if (!(duration_s > 0.0)) throw std::domain_error("synth_hand_trace: duration must be positive");
  if (!(sample_rate_hz > 0.0)) throw std::domain_error("synth_hand_trace: sample rate must be positive");
  if (tremor_sd_m < 0.0) throw std::domain_error("synth_hand_trace: tremor SD must be >= 0");

  const auto steps = std::max<long long>(1, std::llround(duration_s * sample_rate_hz));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> tremor(0.0, 1.0);

  std::vector<HandSample> trace;
  trace.reserve(static_cast<std::size_t>(steps) + 1);
  for (long long k = 0; k <= steps; ++k) {
    const double tau = static_cast<double>(k) / static_cast<double>(steps);
    const double s = minimum_jerk(tau);
    HandSample sample;
    sample.t_s = tau * duration_s;
    sample.position_m = from.position_m * (1.0 - s) + to.position_m * s;
    if (tremor_sd_m > 0.0) {
      for (int i = 0; i < 3; ++i) sample.position_m(i) += tremor_sd_m * tremor(rng);
    }
    Vec3 dir = from.direction * (1.0 - s) + to.direction * s;
    const double norm = dir.norm();
    sample.direction = norm > 0.0 ? Vec3(dir / norm) : to.direction.normalized();
    trace.push_back(sample);
  }
  return trace;
}

std::vector<HandSample> synth_hand_trace(const Vec3& from_m, const Vec3& to_m, double duration_s,
                                         double tremor_sd_m, double sample_rate_hz,
                                         std::uint64_t seed) {
  return synth_hand_trace(HandPose{from_m, Vec3::UnitZ()}, HandPose{to_m, Vec3::UnitZ()},
                          duration_s, tremor_sd_m, sample_rate_hz, seed);
}

}  // namespace fitts::sim
