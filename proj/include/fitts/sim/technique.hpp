#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fitts/sim/hand.hpp"
#include "fitts/sim/kalman.hpp"
#include "fitts/sim/parabola.hpp"
#include "fitts/trial.hpp"

namespace fitts::sim {

struct TechniqueConfig {
  Technique technique = Technique::RPRG;
  double dwell_threshold_s = 0.8;
  double dwell_radius_m = 0.3;
  double spike_lookback_s = 0.1;
  double kalman_process_noise = 10.0;
  double kalman_measurement_noise = 1e-4;

  KalmanTuning kalman() const { return {kalman_process_noise, kalman_measurement_noise}; }
};

struct TargetSpec {
  double width_m = 0.2;
  double distance_m = 3.0;
  double height_m = 0.0;
  double angle_deg = 0.0;
};

/// Shoulder anchors used to derive arm extension from hand position.
struct BodyModel {
  Vec3 left_shoulder_m{-0.18, 1.4, 0.0};
  Vec3 right_shoulder_m{0.18, 1.4, 0.0};
  double arm_length_m = 0.65;

  const Vec3& shoulder(Hand h) const { return h == Hand::Left ? left_shoulder_m : right_shoulder_m; }
  double extension(Hand h, const Vec3& hand_position_m) const;
};

/// User stands at the origin facing +z. The target sphere's centre sits at
/// depth D, elevation H, rotated by the viewing angle about the vertical axis;
/// the teleport parabola is intersected with the horizontal plane through it.
struct SceneSpec {
  double start_cube_depth_m = 0.59;
  TargetSpec target;
  double platform_size_m = 1.0;
  double gravity_m_s2 = 9.81;
  LaunchSpeedModel launch_speed;
  BodyModel body;

  Vec3 target_center() const;
  Vec3 start_point() const;  // start cube projected to the floor
};

struct TrialOutcome {
  double movement_time_s = 0.0;
  double endpoint_deviation_m = 0.0;
  std::uint32_t error_attempts = 0;
  bool success = false;
  double realized_amplitude_m = 0.0;
  Vec3 selection_point_m = Vec3::Zero();
};

/// Pointer sample at (confirmation_time - lookback), linearly interpolated and
/// clamped to the first sample. Throws if the confirmation time lies outside
/// the trace.
HandSample spike_compensate(std::span<const HandSample> trace, double confirmation_time_s,
                            double lookback_s);

struct DwellState {
  std::optional<Vec3> anchor_m;
  double anchor_time_s = 0.0;
};

struct DwellUpdate {
  DwellState state;
  bool selected = false;
  double progress = 0.0;  // elapsed / threshold, clamped to [0, 1]
};

/// Anchor-and-reset dwell timer: leaving the radius restarts the timer at the
/// current sample; reaching the threshold selects and restarts.
DwellUpdate dwell_update(const DwellState& state, const HandSample& sample, double threshold_s,
                         double radius_m);

struct TechniqueState {
  explicit TechniqueState(const TechniqueConfig& config) : smoother(config.kalman()) {}

  bool started = false;
  double start_time_s = 0.0;
  std::optional<Vec3> start_landing_m;
  HandSmoother smoother;
  std::vector<HandSample> pointer_history;  // smoothed
  std::array<bool, 2> previous_pinch{false, false};  // indexed by Hand
  DwellState dwell;
  std::uint32_t error_attempts = 0;
  std::optional<TrialOutcome> outcome;
};

struct StepEvents {
  bool confirmed = false;
  bool hit = false;
  std::optional<Vec3> selection_point_m;
  double deviation_m = 0.0;
  double dwell_progress = 0.0;
  bool finished = false;
};

/// Launch point and velocity of the pointer parabola for a pointer sample.
std::pair<Vec3, Vec3> pointer_launch(const SceneSpec& scene, Hand hand, const HandSample& sample);

/// Advances one time-aligned pair of hand samples. Routes pointer control and
/// confirmation per technique; a confirmation spike-compensates the pointer
/// (gesture techniques), casts the parabola and hit-tests it. A miss counts an
/// error attempt and the trial continues; a hit finishes it.
StepEvents technique_step(const TechniqueConfig& config, const SceneSpec& scene,
                          TechniqueState& state, const HandSample& left,
                          const HandSample& right);

/// Steps through both traces until the trial finishes. Empty if it never does.
std::optional<TrialOutcome> run_trial(const TechniqueConfig& config, const SceneSpec& scene,
                                      std::span<const HandSample> left,
                                      std::span<const HandSample> right);

}  // namespace fitts::sim
