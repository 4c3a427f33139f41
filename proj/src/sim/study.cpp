#include "fitts/sim/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include <json.hpp>

#include "fitts/sim/latin_square.hpp"
#include "fitts/throughput.hpp"

namespace fitts::sim {

namespace {

constexpr int kMaxRedraws = 100000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_config(const StudyConfig& c) {
  if (c.participants < 1) throw std::invalid_argument("participants must be at least 1");
  if (c.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (c.truth.coefficients.size() != c.truth.spec.coefficient_count()) {
    throw std::invalid_argument("ground truth " + std::string(to_string(c.truth.spec.kind)) +
                                " needs " + std::to_string(c.truth.spec.coefficient_count()) +
                                " coefficients");
  }
  for (double v : c.truth.coefficients) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite ground-truth coefficient");
  }
  if (!(c.noise.mt_sd_s >= 0.0) || !std::isfinite(c.noise.mt_sd_s)) {
    throw std::invalid_argument("mt_sd_s must be finite and non-negative");
  }
  if (!(c.noise.endpoint_sd_fraction >= 0.0) || !std::isfinite(c.noise.endpoint_sd_fraction)) {
    throw std::invalid_argument("endpoint_sd_fraction must be finite and non-negative");
  }
  for (double o : c.offsets) {
    if (!std::isfinite(o)) throw std::invalid_argument("non-finite technique offset");
  }
}

double noiseless_mt(const StudyConfig& c, const GridCell& cell, Technique t) {
  const TargetGeometry g = geometry_from_grid(cell.width.meters(), cell.distance.meters(),
                                              cell.height.meters(), c.truth.amplitude_mode,
                                              c.truth.ctd_reference_m);
  return predict_mt(c.truth.spec, c.truth.coefficients, g) +
         c.offsets[static_cast<std::size_t>(t)];
}

}  // namespace

std::string_view to_string(Preset p) {
  return p == Preset::ModelExact ? "model-exact" : "realistic";
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "model-exact") return Preset::ModelExact;
  if (name == "realistic") return Preset::Realistic;
  return std::nullopt;
}

TechniqueOffsets observed_technique_offsets() {
  const TechniqueOffsets means{2.58, 2.41, 2.71, 2.61, 2.88};
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  TechniqueOffsets out{};
  for (std::size_t i = 0; i < means.size(); ++i) out[i] = means[i] - grand;
  return out;
}

StudyConfig preset_config(Preset preset) {
  StudyConfig c;
  c.preset = preset;
  if (preset == Preset::Realistic) {
    c.noise = {0.3, 0.25};
    c.offsets = observed_technique_offsets();
  }
  return c;
}

ParsedStudyConfig parse_study_config(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw StudyConfigError("config", e.what());
  }
  if (!j.is_object()) throw StudyConfigError("config", "expected a JSON object");

  auto number = [](const json& v, const std::string& field) {
    if (!v.is_number()) throw StudyConfigError(field, "expected a number");
    return v.get<double>();
  };
  auto count = [](const json& v, const std::string& field) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
      throw StudyConfigError(field, "expected a positive integer");
    }
    return static_cast<std::uint32_t>(v.get<std::int64_t>());
  };

  Preset preset = Preset::ModelExact;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw StudyConfigError("preset", "expected a string");
    auto p = parse_preset(j["preset"].get<std::string>());
    if (!p) throw StudyConfigError("preset", "expected model-exact or realistic");
    preset = *p;
  }
  ParsedStudyConfig out{preset_config(preset), false};
  StudyConfig& c = out.config;

  for (const auto& [key, value] : j.items()) {
    if (key == "preset") continue;
    if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw StudyConfigError("seed", "expected a non-negative integer");
      }
      c.seed = value.get<std::uint64_t>();
      out.has_seed = true;
    } else if (key == "participants") {
      c.participants = count(value, key);
    } else if (key == "repetitions") {
      c.repetitions = count(value, key);
    } else if (key == "ground_truth") {
      if (!value.is_object()) throw StudyConfigError(key, "expected an object");
      if (value.contains("model")) {
        const json& m = value["model"];
        auto kind = m.is_string() ? parse_model_kind(m.get<std::string>()) : std::nullopt;
        if (!kind) throw StudyConfigError("ground_truth.model", "unknown model");
        c.truth.spec.kind = *kind;
      }
      if (value.contains("coefficients")) {
        const json& arr = value["coefficients"];
        if (!arr.is_array()) throw StudyConfigError("ground_truth.coefficients", "expected an array");
        c.truth.coefficients.clear();
        for (const json& v : arr) c.truth.coefficients.push_back(number(v, "ground_truth.coefficients"));
      } else if (c.truth.spec.kind != ModelKind::Proposed) {
        throw StudyConfigError("ground_truth.coefficients", "required for this model");
      }
      if (value.contains("amplitude_mode")) {
        const json& m = value["amplitude_mode"];
        auto mode = m.is_string() ? parse_amplitude_mode(m.get<std::string>()) : std::nullopt;
        if (!mode) throw StudyConfigError("ground_truth.amplitude_mode", "expected euclidean or depth");
        c.truth.amplitude_mode = *mode;
      }
      if (value.contains("ctd_reference_m")) {
        c.truth.ctd_reference_m = number(value["ctd_reference_m"], "ground_truth.ctd_reference_m");
      }
      if (c.truth.coefficients.size() != c.truth.spec.coefficient_count()) {
        throw StudyConfigError("ground_truth.coefficients",
                               "expected " + std::to_string(c.truth.spec.coefficient_count()) +
                                   " values");
      }
    } else if (key == "noise") {
      if (!value.is_object()) throw StudyConfigError(key, "expected an object");
      if (value.contains("mt_sd_s")) c.noise.mt_sd_s = number(value["mt_sd_s"], "noise.mt_sd_s");
      if (value.contains("endpoint_sd_fraction")) {
        c.noise.endpoint_sd_fraction =
            number(value["endpoint_sd_fraction"], "noise.endpoint_sd_fraction");
      }
      if (c.noise.mt_sd_s < 0.0) throw StudyConfigError("noise.mt_sd_s", "must be non-negative");
      if (c.noise.endpoint_sd_fraction < 0.0) {
        throw StudyConfigError("noise.endpoint_sd_fraction", "must be non-negative");
      }
    } else if (key == "technique_offsets_s") {
      if (!value.is_object()) throw StudyConfigError(key, "expected an object");
      for (const auto& [tech, off] : value.items()) {
        auto t = parse_technique(tech);
        if (!t) throw StudyConfigError(key, "unknown technique " + tech);
        c.offsets[static_cast<std::size_t>(*t)] = number(off, key + "." + tech);
      }
    } else {
      throw StudyConfigError(key, "unknown field");
    }
  }
  return out;
}

std::uint64_t participant_seed(std::uint64_t seed, std::uint32_t index) {
  return splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(index) + 1));
}

std::vector<Trial> generate_study(const StudyConfig& config) {
  check_config(config);
  const std::vector<GridCell> grid = study_grid();
  for (Technique t : kTechniques) {
    for (const GridCell& cell : grid) {
      if (!(noiseless_mt(config, cell, t) > 0.0)) {
        throw std::invalid_argument(
            "ground truth predicts a non-positive movement time for " + std::string(to_string(t)) +
            " at W=" + std::to_string(cell.width.meters()) +
            " D=" + std::to_string(cell.distance.meters()) +
            " H=" + std::to_string(cell.height.meters()));
      }
    }
  }

  constexpr std::size_t kCombinations = kTechniques.size() * kPostures.size();
  const LatinSquare square = balanced_latin_square(kCombinations);
  const std::array<double, 3> angles{-10.0, 0.0, 10.0};

  std::vector<Trial> trials;
  trials.reserve(static_cast<std::size_t>(config.participants) * kCombinations * grid.size() *
                 config.repetitions);

  for (std::uint32_t p = 0; p < config.participants; ++p) {
    std::mt19937_64 rng(participant_seed(config.seed, p));
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_angle(0, angles.size() - 1);
    char id[16];
    std::snprintf(id, sizeof id, "P%02u", static_cast<unsigned>(p + 1));

    const auto& order = square[p % kCombinations];
    for (std::size_t block = 0; block < order.size(); ++block) {
      const Technique tech = kTechniques[order[block] / 2];
      const Posture posture = kPostures[order[block] % 2];

      std::vector<std::size_t> sequence;
      for (std::uint32_t r = 0; r < config.repetitions; ++r) {
        for (std::size_t c = 0; c < grid.size(); ++c) sequence.push_back(c);
      }
      std::shuffle(sequence.begin(), sequence.end(), rng);

      for (std::size_t i = 0; i < sequence.size(); ++i) {
        const GridCell& cell = grid[sequence[i]];
        Trial t;
        t.participant_id = id;
        t.technique = tech;
        t.posture = posture;
        t.block = static_cast<std::uint32_t>(block);
        t.trial_index = static_cast<std::uint32_t>(i);
        t.width_m = cell.width.meters();
        t.distance_m = cell.distance.meters();
        t.height_m = cell.height.meters();
        t.angle_deg = angles[pick_angle(rng)];

        const double mean = noiseless_mt(config, cell, tech);
        double mt = mean;
        if (config.noise.mt_sd_s > 0.0) {
          int tries = 0;
          do {
            if (++tries > kMaxRedraws) throw std::runtime_error("movement-time redraw limit hit");
            mt = mean + config.noise.mt_sd_s * unit_normal(rng);
          } while (!(mt > 0.0));
        }
        t.movement_time_s = mt;

        const double sd = config.noise.endpoint_sd_fraction * t.width_m;
        double deviation = 0.0;
        if (sd > 0.0) {
          for (;;) {
            deviation = std::fabs(sd * unit_normal(rng));
            if (deviation <= t.width_m / 2.0) break;
            if (++t.error_attempts > kMaxRedraws) {
              throw std::runtime_error("endpoint redraw limit hit");
            }
          }
        }
        t.endpoint_deviation_m = deviation;
        t.success = true;
        trials.push_back(std::move(t));
      }
    }
  }
  return trials;
}

}  // namespace fitts::sim
