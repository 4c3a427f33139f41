#include "fitts/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fitts {
namespace {

void require_width(double w) {
  if (!std::isfinite(w) || !(w > 0.0)) throw std::domain_error("target width must be positive and finite");
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Standard: return "Standard";
    case ModelKind::TwoPart: return "Two-part";
    case ModelKind::Vergence: return "Vergence";
    case ModelKind::Proposed: return "Proposed";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind k : kModelKinds) {
    if (name == to_string(k)) return k;
  }
  if (name == "standard") return ModelKind::Standard;
  if (name == "two-part" || name == "twopart") return ModelKind::TwoPart;
  if (name == "vergence") return ModelKind::Vergence;
  if (name == "proposed") return ModelKind::Proposed;
  return std::nullopt;
}

std::string_view to_string(AmplitudeMode mode) {
  return mode == AmplitudeMode::Euclidean ? "euclidean" : "depth";
}

std::optional<AmplitudeMode> parse_amplitude_mode(std::string_view name) {
  if (name == "euclidean") return AmplitudeMode::Euclidean;
  if (name == "depth") return AmplitudeMode::DepthOnly;
  return std::nullopt;
}

double id_shannon(double amplitude_m, double width_m) {
  require_width(width_m);
  if (!std::isfinite(amplitude_m) || amplitude_m < 0.0) {
    throw std::domain_error("amplitude must be non-negative and finite");
  }
  return std::log2(amplitude_m / width_m + 1.0);
}

double amplitude_from_grid(double distance_m, double height_m, AmplitudeMode mode) {
  return mode == AmplitudeMode::Euclidean ? std::hypot(distance_m, height_m) : distance_m;
}

TargetGeometry geometry_from_grid(double width_m, double distance_m, double height_m,
                                  AmplitudeMode mode, double ctd_reference_m) {
  TargetGeometry g;
  g.amplitude_m = amplitude_from_grid(distance_m, height_m, mode);
  g.width_m = width_m;
  g.depth_m = distance_m;
  g.altitude_m = height_m;
  g.ctd_m = std::fabs(distance_m - ctd_reference_m);
  return g;
}

std::vector<double> predictors_standard(const TargetGeometry& g) {
  return {id_shannon(g.amplitude_m, g.width_m)};
}

std::vector<double> predictors_two_part(const TargetGeometry& g) {
  require_width(g.width_m);
  if (!std::isfinite(g.amplitude_m) || g.amplitude_m < 0.0) {
    throw std::domain_error("amplitude must be non-negative and finite");
  }
  return {std::log2(g.amplitude_m + g.width_m), -std::log2(g.width_m)};
}

std::vector<double> predictors_vergence(const TargetGeometry& g) {
  if (!std::isfinite(g.ctd_m)) throw std::domain_error("change in target depth must be finite");
  return {id_shannon(g.amplitude_m, g.width_m), g.ctd_m};
}

std::vector<double> predictors_proposed(const TargetGeometry& g) {
  const double reach = std::max(g.depth_m, g.altitude_m);
  if (!std::isfinite(reach) || !(reach > 0.0)) {
    throw std::domain_error("max(depth, altitude) must be positive and finite");
  }
  const double id = id_shannon(g.amplitude_m, g.width_m);
  return {id, -std::log2(g.width_m / reach + 1.0)};
}

std::vector<double> predictors(ModelSpec spec, const TargetGeometry& g) {
  switch (spec.kind) {
    case ModelKind::Standard: return predictors_standard(g);
    case ModelKind::TwoPart: return predictors_two_part(g);
    case ModelKind::Vergence: return predictors_vergence(g);
    case ModelKind::Proposed: return predictors_proposed(g);
  }
  throw std::logic_error("unhandled model kind");
}

double predict_mt(ModelSpec spec, std::span<const double> coefficients, const TargetGeometry& g) {
  if (coefficients.size() != spec.coefficient_count()) {
    throw std::invalid_argument(std::string(to_string(spec.kind)) + " model takes " +
                                std::to_string(spec.coefficient_count()) +
                                " coefficients, got " + std::to_string(coefficients.size()));
  }
  const auto x = predictors(spec, g);
  double mt = coefficients[0];
  for (std::size_t i = 0; i < x.size(); ++i) mt += coefficients[i + 1] * x[i];
  return mt;
}

}  // namespace fitts
