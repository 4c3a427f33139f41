#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fitts/trial.hpp"

namespace fitts {

/// Length quantized to whole millimetres; used wherever metres act as a key.
struct Millimeters {
  std::int64_t value = 0;

  static Millimeters from_meters(double m);
  double meters() const { return static_cast<double>(value) / 1000.0; }
  auto operator<=>(const Millimeters&) const = default;
};

/// Aggregation cell. An empty technique/posture means that factor has been
/// collapsed away.
struct ConditionKey {
  std::optional<Technique> technique;
  std::optional<Posture> posture;
  Millimeters width;
  Millimeters distance;
  Millimeters height;

  static ConditionKey of(const Trial& t);

  double width_m() const { return width.meters(); }
  double distance_m() const { return distance.meters(); }
  double height_m() const { return height.meters(); }

  auto operator<=>(const ConditionKey&) const = default;
};

std::string describe(const ConditionKey& key);

struct ConditionSummary {
  ConditionKey key;
  std::size_t n_trials = 0;
  // Raw cells have one constituent; collapsed cells count the cells averaged.
  std::size_t n_cells = 1;
  double mean_mt_s = 0.0;
  double sd_mt_s = 0.0;
  double mean_deviation_m = 0.0;
  double sd_deviation_m = 0.0;
  double error_rate = 0.0;
  std::optional<double> ci95_mt_s;

  bool operator==(const ConditionSummary&) const = default;
};

using SummaryMap = std::map<ConditionKey, ConditionSummary>;

struct Violation {
  std::size_t index = 0;  // position in the input sequence
  std::string message;
};

struct ValidationOptions {
  // Restrict angle_deg to the -10/0/+10 study levels.
  bool study_grid_angles = false;
};

std::vector<Violation> validate_log(std::span<const Trial> trials,
                                    const ValidationOptions& options = {});

SummaryMap group_by_condition(std::span<const Trial> trials);

enum class Factor { Technique, Posture };
std::optional<Factor> parse_factor(std::string_view name);
std::string_view to_string(Factor f);

enum class Aggregation { MeansOfMeans, Pooled };
std::optional<Aggregation> parse_aggregation(std::string_view name);
std::string_view to_string(Aggregation a);

class UnknownFactor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Removes `drop` from every key and merges the cells that then coincide.
/// MeansOfMeans averages constituent cell means without weights; Pooled
/// weights them by trial count. In a collapsed cell, the SD fields and the
/// CI describe the spread of the constituent cell means.
/// Throws UnknownFactor if a dropped factor is already absent from the keys.
SummaryMap collapse_over(const SummaryMap& summaries, const std::set<Factor>& drop,
                         Aggregation aggregation = Aggregation::MeansOfMeans);

SummaryMap collapse_over(const SummaryMap& summaries, std::span<const std::string_view> drop,
                         Aggregation aggregation = Aggregation::MeansOfMeans);

/// Cells with the given technique (resp. posture), keys unchanged.
SummaryMap filter_technique(const SummaryMap& summaries, Technique t);
SummaryMap filter_posture(const SummaryMap& summaries, Posture p);

}  // namespace fitts
