#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <optional>
#include <vector>

#include "fitts/sim/technique.hpp"

using namespace fitts;
using namespace fitts::sim;
using doctest::Approx;

namespace {

const Vec3 kRightRest(0.25, 1.1, 0.45);
const Vec3 kLeftRest(-0.25, 1.1, 0.45);

SceneSpec scene_for(double w, double d, double h, double angle) {
  SceneSpec s;
  s.target = {w, d, h, angle};
  return s;
}

// Direction that lands a shot from `position` with `hand` on `aim_point`.
Vec3 aimed(const SceneSpec& scene, Hand hand, const Vec3& position, const Vec3& aim_point) {
  const double speed = scene.launch_speed.speed(scene.body.extension(hand, position));
  auto dir = aim_direction(position, speed, aim_point, scene.gravity_m_s2);
  REQUIRE(dir.has_value());
  return *dir;
}

struct Traces {
  std::vector<HandSample> left, right;
};

// Both hands held still; the pointer hand aims at `aim_point`. `pinch_left`
// and `pinch_right` list the sample indices with a closed pinch.
Traces still_hands(const SceneSpec& scene, Hand pointer, const Vec3& aim_point, int samples,
                   const std::vector<int>& pinch_left, const std::vector<int>& pinch_right) {
  Traces tr;
  const Vec3 lp = kLeftRest, rp = kRightRest;
  const Vec3 ld = pointer == Hand::Left ? aimed(scene, Hand::Left, lp, aim_point) : Vec3::UnitZ();
  const Vec3 rd = pointer == Hand::Right ? aimed(scene, Hand::Right, rp, aim_point) : Vec3::UnitZ();
  for (int k = 0; k < samples; ++k) {
    const double t = k / 100.0;
    HandSample l{t, lp, ld, false}, r{t, rp, rd, false};
    for (int i : pinch_left) l.pinch = l.pinch || i == k;
    for (int i : pinch_right) r.pinch = r.pinch || i == k;
    tr.left.push_back(l);
    tr.right.push_back(r);
  }
  return tr;
}

std::optional<TrialOutcome> run(Technique t, const SceneSpec& scene, const Traces& tr) {
  TechniqueConfig cfg;
  cfg.technique = t;
  return run_trial(cfg, scene, tr.left, tr.right);
}

}  // namespace

TEST_SUITE("teleport-sim") {

TEST_CASE("gesture routing") {
  const SceneSpec scene = scene_for(0.2, 3.0, 0.0, 10.0);
  const Vec3 target = scene.target_center();
  struct Case {
    Technique technique;
    Hand pointer;
    Hand gesture;
  };
  for (const Case c : {Case{Technique::RPRG, Hand::Right, Hand::Right},
                       Case{Technique::RPLG, Hand::Right, Hand::Left},
                       Case{Technique::LPLG, Hand::Left, Hand::Left},
                       Case{Technique::LPRG, Hand::Left, Hand::Right}}) {
    CAPTURE(to_string(c.technique));
    const std::vector<int> at30{30};
    const Traces good = still_hands(scene, c.pointer, target, 60,
                                    c.gesture == Hand::Left ? at30 : std::vector<int>{},
                                    c.gesture == Hand::Right ? at30 : std::vector<int>{});
    const auto out = run(c.technique, scene, good);
    REQUIRE(out.has_value());
    CHECK(out->success);
    CHECK(out->movement_time_s == Approx(0.30).epsilon(1e-12));
    CHECK(out->endpoint_deviation_m < 1e-9);
    CHECK(out->error_attempts == 0);

    // A pinch on the other hand does nothing.
    const Traces wrong = still_hands(scene, c.pointer, target, 60,
                                     c.gesture == Hand::Left ? std::vector<int>{} : at30,
                                     c.gesture == Hand::Right ? std::vector<int>{} : at30);
    CHECK_FALSE(run(c.technique, scene, wrong).has_value());
  }
}

TEST_CASE("a held pinch confirms once, on its rising edge") {
  const SceneSpec scene = scene_for(0.2, 3.0, 0.0, 0.0);
  const Vec3 off = scene.target_center() + Vec3(0.5, 0.0, 0.0);
  const Traces tr = still_hands(scene, Hand::Right, off, 60, {}, {10, 11, 12, 13, 40});
  TechniqueConfig cfg;
  cfg.technique = Technique::RPRG;
  TechniqueState state(cfg);
  int confirmations = 0;
  for (std::size_t i = 0; i < tr.left.size(); ++i) {
    confirmations += technique_step(cfg, scene, state, tr.left[i], tr.right[i]).confirmed;
  }
  CHECK(confirmations == 2);
  CHECK(state.error_attempts == 2);
  CHECK_FALSE(state.outcome.has_value());
}

TEST_CASE("miss, then hit") {
  const SceneSpec scene = scene_for(0.2, 3.0, 3.0, -10.0);
  const Vec3 target = scene.target_center();
  const Traces miss = still_hands(scene, Hand::Right, target + Vec3(0.0, 0.0, 0.5), 20, {}, {10});
  const Traces hit = still_hands(scene, Hand::Right, target, 41, {}, {40});
  Traces tr;
  for (int k = 0; k < 20; ++k) {
    tr.left.push_back(miss.left[k]);
    tr.right.push_back(miss.right[k]);
  }
  for (int k = 20; k < 41; ++k) {
    tr.left.push_back(hit.left[k]);
    tr.right.push_back(hit.right[k]);
  }
  const auto out = run(Technique::RPRG, scene, tr);
  REQUIRE(out.has_value());
  CHECK(out->error_attempts == 1);
  CHECK(out->movement_time_s == Approx(0.40).epsilon(1e-12));
  CHECK(out->endpoint_deviation_m < 0.1);
  // Measured from where the pointer rested when the trial began.
  const Vec3 start_landing = target + Vec3(0.0, 0.0, 0.5);
  CHECK(std::fabs(out->realized_amplitude_m - (out->selection_point_m - start_landing).norm()) < 1e-6);
  CHECK(std::fabs(out->realized_amplitude_m - 0.5) < 0.1);
}

TEST_CASE("dwell selection") {
  const SceneSpec scene = scene_for(0.2, 3.0, 0.0, 0.0);
  const Vec3 target = scene.target_center();

  // Pinches are ignored; the stationary pointer dwells for 0.8 s.
  const Traces tr = still_hands(scene, Hand::Right, target, 120, {5, 6}, {10, 20});
  const auto out = run(Technique::RPDW, scene, tr);
  REQUIRE(out.has_value());
  CHECK(out->movement_time_s == Approx(0.8).epsilon(1e-12));

  auto sample = [](int k, double x) { return HandSample{k / 100.0, Vec3(x, 1.0, 0.5), Vec3::UnitZ(), false}; };

  SUBCASE("fires on the first sample past the threshold within the radius") {
    DwellState s;
    int fired = -1;
    for (int k = 0; k <= 100 && fired < 0; ++k) {
      const auto u = dwell_update(s, sample(k, (k % 2) * 0.29), 0.8, 0.3);
      s = u.state;
      CHECK(u.progress >= 0.0);
      CHECK(u.progress <= 1.0);
      if (u.selected) fired = k;
    }
    CHECK(fired == 80);
  }
  SUBCASE("leaving the radius restarts the timer") {
    DwellState s;
    int fired = -1;
    for (int k = 0; k <= 200 && fired < 0; ++k) {
      const auto u = dwell_update(s, sample(k, k >= 70 ? 0.31 : 0.0), 0.8, 0.3);
      s = u.state;
      if (u.selected) fired = k;
    }
    CHECK(fired == 150);
  }
  SUBCASE("zero threshold fires immediately") {
    const auto u = dwell_update(DwellState{}, sample(0, 0.0), 0.0, 0.3);
    CHECK(u.selected);
    CHECK(u.progress == 1.0);
  }
}

TEST_CASE("spike compensation") {
  std::vector<HandSample> moving;
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    moving.push_back({t, Vec3(t, 1.0, 0.5), Vec3::UnitZ(), false});
  }
  const HandSample now = spike_compensate(moving, 0.5, 0.0);
  CHECK(now.position_m == moving[50].position_m);
  const HandSample before = spike_compensate(moving, 0.5, 0.1);
  CHECK(std::fabs((now.position_m - before.position_m).norm() - 0.1) < 1e-12);
  const HandSample between = spike_compensate(moving, 0.5, 0.105);
  CHECK(std::fabs(between.position_m.x() - 0.395) < 1e-12);
  const HandSample clamped = spike_compensate(moving, 0.05, 0.1);
  CHECK(clamped.position_m == moving.front().position_m);

  std::vector<HandSample> still(moving.size(), HandSample{});
  for (std::size_t i = 0; i < still.size(); ++i) {
    still[i] = {moving[i].t_s, Vec3(0.2, 1.1, 0.4), Vec3(0.0, 0.6, 0.8), false};
  }
  for (double lookback : {0.0, 0.03, 0.1, 0.5}) {
    const HandSample s = spike_compensate(still, 0.7, lookback);
    CHECK((s.position_m - still[0].position_m).norm() < 1e-15);
    CHECK((s.direction - still[0].direction).norm() < 1e-15);
  }

  CHECK_THROWS_AS(spike_compensate(std::vector<HandSample>{}, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(spike_compensate(moving, 0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(spike_compensate(moving, 1.5, 0.1), std::invalid_argument);
}

TEST_CASE("spike compensation absorbs the pinch jerk") {
  const SceneSpec scene = scene_for(0.2, 3.0, 0.0, 0.0);
  const Traces base = still_hands(scene, Hand::Right, scene.target_center(), 31, {}, {30});
  Traces jerked = base;
  // The pinch drags the pointing direction down by about 10 degrees.
  const Vec3 d = base.right[30].direction;
  jerked.right[30].direction = Vec3(d.x(), d.y() - 0.18, d.z()).normalized();

  for (double lookback : {0.0, 0.1}) {
    CAPTURE(lookback);
    TechniqueConfig cfg;
    cfg.technique = Technique::RPRG;
    cfg.spike_lookback_s = lookback;
    const auto out = run_trial(cfg, scene, jerked.left, jerked.right);
    CHECK(out.has_value() == (lookback > 0.0));
  }
}

TEST_CASE("misaligned hand samples are rejected") {
  const SceneSpec scene;
  TechniqueConfig cfg;
  TechniqueState state(cfg);
  HandSample l{0.0, kLeftRest, Vec3::UnitZ(), false}, r{0.01, kRightRest, Vec3::UnitZ(), false};
  CHECK_THROWS_AS(technique_step(cfg, scene, state, l, r), std::invalid_argument);
  std::vector<HandSample> one{l};
  CHECK_THROWS_AS(run_trial(cfg, scene, one, std::vector<HandSample>{}), std::invalid_argument);
}

}  // TEST_SUITE
