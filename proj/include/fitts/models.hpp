#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fitts {

enum class ModelKind { Standard, TwoPart, Vergence, Proposed };

inline constexpr std::array<ModelKind, 4> kModelKinds{
    ModelKind::Standard, ModelKind::TwoPart, ModelKind::Vergence, ModelKind::Proposed};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::Standard;

  constexpr std::size_t predictor_count() const { return kind == ModelKind::Standard ? 1 : 2; }
  constexpr std::size_t coefficient_count() const { return predictor_count() + 1; }
};

struct TargetGeometry {
  double amplitude_m = 0.0;
  double width_m = 0.0;
  double depth_m = 0.0;
  double altitude_m = 0.0;  // magnitude
  double ctd_m = 0.0;       // change in target depth
};

enum class AmplitudeMode { Euclidean, DepthOnly };

std::string_view to_string(AmplitudeMode mode);
std::optional<AmplitudeMode> parse_amplitude_mode(std::string_view name);

/// Depth of the start cube in front of the user; every trial starts there.
inline constexpr double kStartCubeDepthM = 0.59;

/// log2(A/W + 1). Throws std::domain_error for W <= 0, A < 0 or non-finite input.
double id_shannon(double amplitude_m, double width_m);

double amplitude_from_grid(double distance_m, double height_m, AmplitudeMode mode);

/// Geometry of a grid cell: A from `mode`, CTD = |D - ctd_reference_m|.
TargetGeometry geometry_from_grid(double width_m, double distance_m, double height_m,
                                  AmplitudeMode mode,
                                  double ctd_reference_m = kStartCubeDepthM);

// Negative-signed terms of the published forms are folded into the
// predictor, so every fitted slope is expected to come out positive.

/// [log2(A/W + 1)]
std::vector<double> predictors_standard(const TargetGeometry& g);
/// [log2(A + W), -log2(W)]
std::vector<double> predictors_two_part(const TargetGeometry& g);
/// [log2(A/W + 1), CTD]; the second predictor is in metres.
std::vector<double> predictors_vergence(const TargetGeometry& g);
/// [log2(A/W + 1), -log2(W / max(D, H) + 1)]
std::vector<double> predictors_proposed(const TargetGeometry& g);

std::vector<double> predictors(ModelSpec spec, const TargetGeometry& g);

/// intercept + sum(slope_i * predictor_i). `coefficients` is {intercept, slopes...}.
double predict_mt(ModelSpec spec, std::span<const double> coefficients, const TargetGeometry& g);

}  // namespace fitts
