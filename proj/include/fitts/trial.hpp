#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fitts {

enum class Technique { RPRG, RPLG, LPLG, LPRG, RPDW };
enum class Posture { Sitting, Standing };
enum class Hand { Left, Right };

inline constexpr std::array<Technique, 5> kTechniques{
    Technique::RPRG, Technique::RPLG, Technique::LPLG, Technique::LPRG, Technique::RPDW};
inline constexpr std::array<Posture, 2> kPostures{Posture::Sitting, Posture::Standing};

std::string_view to_string(Technique t);
std::string_view to_string(Posture p);
std::string_view to_string(Hand h);

// Exact codes only; posture additionally accepts any letter case.
std::optional<Technique> parse_technique(std::string_view text);
std::optional<Posture> parse_posture(std::string_view text);

/// Hand that steers the teleportation parabola.
Hand pointer_hand(Technique t);
/// Hand whose index-finger pinch confirms; empty for dwell selection.
std::optional<Hand> gesture_hand(Technique t);

/// One teleportation attempt sequence ending in a successful selection.
struct Trial {
  std::string participant_id;
  Technique technique = Technique::RPRG;
  Posture posture = Posture::Sitting;
  std::uint32_t block = 0;
  std::uint32_t trial_index = 0;
  double width_m = 0.0;
  double distance_m = 0.0;
  double height_m = 0.0;  // magnitude of the elevation change
  double angle_deg = 0.0;
  double movement_time_s = 0.0;
  double endpoint_deviation_m = 0.0;
  std::uint32_t error_attempts = 0;
  bool success = true;

  bool operator==(const Trial&) const = default;
};

}  // namespace fitts
