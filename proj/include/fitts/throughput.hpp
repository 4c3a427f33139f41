#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fitts/conditions.hpp"
#include "fitts/models.hpp"

namespace fitts {

/// Crossman's constant: W_e = 4.133 * SD of endpoints.
inline constexpr double kEffectiveWidthFactor = 4.133;

/// (distance, height, width) cell of the amplitude x width grid.
struct GridCell {
  Millimeters distance;
  Millimeters height;
  Millimeters width;
  auto operator<=>(const GridCell&) const = default;
};

/// The 2 distances x 2 heights x 2 widths of the teleportation study.
std::vector<GridCell> study_grid();

struct ThroughputCell {
  ConditionKey key;
  std::size_t n_trials = 0;
  double ae_m = 0.0;
  double we_m = 0.0;
  double ide_bits = 0.0;
  double mean_mt_s = 0.0;
  double tp_bits_per_s = 0.0;
};

/// 4.133 x sample SD (n-1). Needs at least two samples. Returns 0 for
/// zero scatter; callers treat that as degenerate.
double effective_width(std::span<const double> endpoint_deviations_m);

/// Mean realized amplitude. Throws on empty input.
double effective_amplitude(std::span<const double> realized_amplitudes_m);

/// log2(Ae/We + 1); We must be positive.
double effective_id(double ae_m, double we_m);

struct ThroughputOptions {
  bool allow_partial_grid = false;
  std::vector<GridCell> expected_grid = study_grid();
};

/// Unweighted mean of per-cell IDe/MT. Unless partial grids are allowed,
/// every expected cell must be present (IncompleteData lists the missing ones).
double throughput_mean_of_means(std::span<const ThroughputCell> cells,
                                const ThroughputOptions& options = {});

struct ThroughputRecord {
  Technique technique = Technique::RPRG;
  Posture posture = Posture::Sitting;
  double tp_bits_per_s = 0.0;
  std::vector<ThroughputCell> cells;
  std::vector<std::string> warnings;  // degenerate cells that were excluded
};

/// One record per (technique, posture) present in `trials`, in enum order.
/// Ae falls back to the nominal grid amplitude because logs carry no
/// realized amplitude.
std::vector<ThroughputRecord> throughput_by_condition(std::span<const Trial> trials,
                                                      AmplitudeMode mode,
                                                      const ThroughputOptions& options = {});

/// Per-technique TP averaged over postures.
std::map<Technique, double> technique_throughput(std::span<const ThroughputRecord> records);

void write_throughput_records(std::ostream& out, std::span<const ThroughputRecord> records,
                              AmplitudeMode mode);
void render_throughput_table(std::ostream& out, std::span<const ThroughputRecord> records,
                             AmplitudeMode mode);

}  // namespace fitts
