#include "fitts/sim/technique.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fitts::sim {

double BodyModel::extension(Hand h, const Vec3& hand_position_m) const {
  return std::clamp((hand_position_m - shoulder(h)).norm() / arm_length_m, 0.0, 1.0);
}

Vec3 SceneSpec::target_center() const {
  const double a = target.angle_deg * std::numbers::pi / 180.0;
  return Vec3(target.distance_m * std::sin(a), target.height_m, target.distance_m * std::cos(a));
}

Vec3 SceneSpec::start_point() const { return Vec3(0.0, 0.0, start_cube_depth_m); }

HandSample spike_compensate(std::span<const HandSample> trace, double confirmation_time_s,
                            double lookback_s) {
  if (trace.empty()) throw std::invalid_argument("spike_compensate: empty trace");
  if (lookback_s < 0.0) throw std::invalid_argument("spike_compensate: negative lookback");
  if (confirmation_time_s < trace.front().t_s || confirmation_time_s > trace.back().t_s) {
    throw std::invalid_argument("spike_compensate: confirmation time outside the trace");
  }
  const double when = std::max(confirmation_time_s - lookback_s, trace.front().t_s);
  auto it = std::lower_bound(trace.begin(), trace.end(), when,
                             [](const HandSample& s, double t) { return s.t_s < t; });
  if (it->t_s == when || it == trace.begin()) return *it;
  const HandSample& b = *it;
  const HandSample& a = *(it - 1);
  const double u = (when - a.t_s) / (b.t_s - a.t_s);
  HandSample out;
  out.t_s = when;
  out.position_m = a.position_m * (1.0 - u) + b.position_m * u;
  Vec3 dir = a.direction * (1.0 - u) + b.direction * u;
  out.direction = dir.norm() > 0.0 ? Vec3(dir.normalized()) : a.direction;
  out.pinch = a.pinch;
  return out;
}

DwellUpdate dwell_update(const DwellState& state, const HandSample& sample, double threshold_s,
                         double radius_m) {
  DwellUpdate out;
  out.state = state;
  if (!out.state.anchor_m || (sample.position_m - *out.state.anchor_m).norm() > radius_m) {
    out.state.anchor_m = sample.position_m;
    out.state.anchor_time_s = sample.t_s;
  }
  const double elapsed = sample.t_s - out.state.anchor_time_s;
  if (elapsed >= threshold_s) {
    out.selected = true;
    out.progress = 1.0;
    out.state.anchor_m = sample.position_m;
    out.state.anchor_time_s = sample.t_s;
    return out;
  }
  out.progress = threshold_s > 0.0 ? std::clamp(elapsed / threshold_s, 0.0, 1.0) : 1.0;
  return out;
}

std::pair<Vec3, Vec3> pointer_launch(const SceneSpec& scene, Hand hand, const HandSample& s) {
  const double speed = scene.launch_speed.speed(scene.body.extension(hand, s.position_m));
  return {s.position_m, s.direction * speed};
}

StepEvents technique_step(const TechniqueConfig& config, const SceneSpec& scene,
                          TechniqueState& state, const HandSample& left,
                          const HandSample& right) {
  StepEvents ev;
  if (state.outcome) {
    ev.finished = true;
    return ev;
  }
  if (std::fabs(left.t_s - right.t_s) > 1e-9) {
    throw std::invalid_argument("technique_step: hand samples are not time-aligned");
  }

  const Hand pointer = pointer_hand(config.technique);
  const HandSample& raw_pointer = pointer == Hand::Left ? left : right;
  const HandSample smoothed = state.smoother.update(raw_pointer);
  state.pointer_history.push_back(smoothed);
  const Vec3 target = scene.target_center();
  const double landing_height = target.y();

  if (!state.started) {
    state.started = true;
    state.start_time_s = smoothed.t_s;
    auto [origin, velocity] = pointer_launch(scene, pointer, smoothed);
    if (auto l = parabola_landing(origin, velocity, scene.gravity_m_s2, landing_height)) {
      state.start_landing_m = l->point_m;
    }
  }

  std::optional<HandSample> selection_sample;
  if (auto gesture = gesture_hand(config.technique)) {
    const auto g = static_cast<std::size_t>(*gesture);
    const bool pinch = (*gesture == Hand::Left ? left : right).pinch;
    if (pinch && !state.previous_pinch[g]) {
      selection_sample = spike_compensate(state.pointer_history, smoothed.t_s,
                                          config.spike_lookback_s);
    }
  } else {
    DwellUpdate d = dwell_update(state.dwell, smoothed, config.dwell_threshold_s,
                                 config.dwell_radius_m);
    state.dwell = d.state;
    ev.dwell_progress = d.progress;
    if (d.selected) selection_sample = smoothed;
  }
  state.previous_pinch = {left.pinch, right.pinch};

  if (!selection_sample) return ev;
  ev.confirmed = true;
  auto [origin, velocity] = pointer_launch(scene, pointer, *selection_sample);
  const auto landing = parabola_landing(origin, velocity, scene.gravity_m_s2, landing_height);
  if (!landing) {
    ++state.error_attempts;
    return ev;
  }
  const HitTest hit = sphere_hit_test(landing->point_m, target, scene.target.width_m);
  ev.selection_point_m = landing->point_m;
  ev.deviation_m = hit.deviation_m;
  if (!hit.hit) {
    ++state.error_attempts;
    return ev;
  }
  ev.hit = true;
  ev.finished = true;
  TrialOutcome out;
  out.movement_time_s = smoothed.t_s - state.start_time_s;
  out.endpoint_deviation_m = hit.deviation_m;
  out.error_attempts = state.error_attempts;
  out.success = true;
  out.selection_point_m = landing->point_m;
  out.realized_amplitude_m =
      (landing->point_m - state.start_landing_m.value_or(scene.start_point())).norm();
  state.outcome = out;
  return ev;
}

std::optional<TrialOutcome> run_trial(const TechniqueConfig& config, const SceneSpec& scene,
                                      std::span<const HandSample> left,
                                      std::span<const HandSample> right) {
  if (left.size() != right.size()) {
    throw std::invalid_argument("run_trial: hand traces differ in length");
  }
  TechniqueState state(config);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (technique_step(config, scene, state, left[i], right[i]).finished) break;
  }
  return state.outcome;
}

}  // namespace fitts::sim
