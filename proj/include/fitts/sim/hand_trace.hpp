#pragma once

#include <cstdint>
#include <vector>

#include "fitts/sim/hand.hpp"

namespace fitts::sim {

struct HandPose {
  Vec3 position_m = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
};

/// 10 tau^3 - 15 tau^4 + 6 tau^5
double minimum_jerk(double tau);

/// Minimum-jerk reach from `from` to `to` sampled at `sample_rate_hz`
/// (first and last sample land exactly on the endpoints), with Gaussian
/// tremor of `tremor_sd_m` per position axis. Direction follows the same
/// profile and is renormalized. Same seed, same trace.
std::vector<HandSample> synth_hand_trace(const HandPose& from, const HandPose& to,
                                         double duration_s, double tremor_sd_m,
                                         double sample_rate_hz, std::uint64_t seed);

std::vector<HandSample> synth_hand_trace(const Vec3& from_m, const Vec3& to_m, double duration_s,
                                         double tremor_sd_m, double sample_rate_hz,
                                         std::uint64_t seed);

}  // namespace fitts::sim
