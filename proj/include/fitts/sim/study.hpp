#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fitts/models.hpp"
#include "fitts/trial.hpp"

namespace fitts::sim {

struct GroundTruth {
  ModelSpec spec{ModelKind::Proposed};
  std::vector<double> coefficients{-2.46, 1.21, -3.00};
  AmplitudeMode amplitude_mode = AmplitudeMode::Euclidean;
  double ctd_reference_m = kStartCubeDepthM;
};

struct NoiseModel {
  double mt_sd_s = 0.05;
  double endpoint_sd_fraction = 0.25;  // SD of endpoint deviation as a fraction of W
};

enum class Preset { ModelExact, Realistic };

std::string_view to_string(Preset p);
std::optional<Preset> parse_preset(std::string_view name);

using TechniqueOffsets = std::array<double, 5>;  // indexed by Technique

/// Observed per-technique mean MTs, centred on their grand mean.
TechniqueOffsets observed_technique_offsets();

struct StudyConfig {
  Preset preset = Preset::ModelExact;
  GroundTruth truth;
  NoiseModel noise;
  std::uint32_t participants = 20;
  std::uint32_t repetitions = 5;
  std::uint64_t seed = 0;
  TechniqueOffsets offsets{};
};

/// Preset defaults: model-exact has no offsets and little noise, realistic
/// uses the observed technique offsets and human-scale MT noise.
StudyConfig preset_config(Preset preset);

class StudyConfigError : public std::runtime_error {
 public:
  StudyConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses a JSON simulation config. `seed` is optional here so the command
/// line can supply it; everything else falls back to the preset.
struct ParsedStudyConfig {
  StudyConfig config;
  bool has_seed = false;
};
ParsedStudyConfig parse_study_config(std::string_view json_text);

/// Seed of participant `index`'s private generator.
std::uint64_t participant_seed(std::uint64_t seed, std::uint32_t index);

/// Full within-subject study: per participant, technique x posture blocks in
/// balanced Latin square order, each block holding the 8 grid cells x
/// repetitions in random order. Throws std::invalid_argument on a bad config,
/// including ground truth that predicts a non-positive MT anywhere.
std::vector<Trial> generate_study(const StudyConfig& config);

/// Index of a technique x posture combination, 0..9.
constexpr std::size_t combination_index(Technique t, Posture p) {
  return static_cast<std::size_t>(t) * 2 + static_cast<std::size_t>(p);
}

}  // namespace fitts::sim
