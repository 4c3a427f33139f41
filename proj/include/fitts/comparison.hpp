#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fitts/conditions.hpp"
#include "fitts/models.hpp"
#include "fitts/regression.hpp"

namespace fitts {

enum class Criterion { AIC, BIC };

// Burnham-Anderson bands for ΔAIC. 7..10 is left unnamed by the usual table
// and is reported as Indeterminate.
enum class AicGrade { Substantial, Strong, Less, Indeterminate, None };
// Raftery bands for ΔBIC.
enum class BicGrade { None, Positive, Strong, VeryStrong };

std::string_view to_string(Criterion c);
std::string_view to_string(AicGrade g);
std::string_view to_string(BicGrade g);

struct EvidenceGrade {
  Criterion criterion = Criterion::AIC;
  double delta = 0.0;
  std::variant<AicGrade, BicGrade> grade;

  /// Position on the criterion's scale; never decreases as delta grows.
  int level() const;
  std::string_view label() const;
  bool operator==(const EvidenceGrade&) const = default;
};

/// Step function over delta >= 0 (negative or NaN throws std::domain_error).
/// Boundaries sit with the higher-delta band, except that ΔAIC == 10 is
/// still Indeterminate.
EvidenceGrade grade_delta(Criterion criterion, double delta);

struct ModelFit {
  ModelKind kind = ModelKind::Standard;
  FitResult fit;
  // Nested F test against the Standard model; absent for Standard itself.
  std::optional<FTest> nested_vs_standard;
  double delta_aic = 0.0;
  double delta_bic = 0.0;
  EvidenceGrade aic_grade;
  EvidenceGrade bic_grade;

  bool operator==(const ModelFit&) const = default;
};

struct ComparisonReport {
  std::string group_label;
  AmplitudeMode amplitude_mode = AmplitudeMode::Euclidean;
  std::array<ModelFit, 4> models;  // indexed by ModelKind
  std::array<ModelKind, 4> rank_aic{};
  std::array<ModelKind, 4> rank_bic{};

  const ModelFit& model(ModelKind kind) const { return models[static_cast<std::size_t>(kind)]; }
  ModelKind best_by_aic() const { return rank_aic.front(); }
  ModelKind best_by_bic() const { return rank_bic.front(); }
  bool operator==(const ComparisonReport&) const = default;
};

struct CompareOptions {
  AmplitudeMode amplitude_mode = AmplitudeMode::Euclidean;
  double ctd_reference_m = kStartCubeDepthM;
};

inline constexpr std::size_t kMinComparisonCells = 5;

class IncompleteData : public std::runtime_error {
 public:
  IncompleteData(std::vector<std::string> missing, const std::string& what)
      : std::runtime_error(what), missing_(std::move(missing)) {}
  const std::vector<std::string>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class InsufficientCells : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// value - min(values); the minimum itself maps to exactly 0, and a finite
/// value against a -inf minimum maps to +inf.
std::array<double, 4> information_deltas(const std::array<double, 4>& values);

/// Regression rows for one model over a set of condition cells.
std::vector<PredictorRow> design_rows(ModelSpec spec, const SummaryMap& cells,
                                      const CompareOptions& options);

/// Fits all four models on the same cell means and ranks them.
ComparisonReport compare_models(const SummaryMap& cells, std::string group_label,
                                const CompareOptions& options = {});

/// Table row order: RPRG, LPLG, RPLG, LPRG, RPDW, All Sit, All Stand, All.
std::vector<std::string> comparison_group_labels();

/// Groups of the full (technique, posture, W, D, H) summaries, in table order.
/// Throws IncompleteData naming the missing techniques or postures.
std::vector<std::pair<std::string, SummaryMap>> comparison_groups(
    const SummaryMap& full_cells, Aggregation aggregation = Aggregation::MeansOfMeans);

/// Eight reports per amplitude mode, modes in the order given.
std::vector<ComparisonReport> run_comparison_suite(
    const SummaryMap& full_cells, std::span<const AmplitudeMode> modes,
    Aggregation aggregation = Aggregation::MeansOfMeans,
    double ctd_reference_m = kStartCubeDepthM);

// Rendering. `render_equation` uses the published sign convention
// (e.g. "MT = -2.46 + 1.21*log2(A/W+1) - 3.00*log2(W/max(D,H)+1)");
// `render_equation_compact` uses the table style "MT=1.21*A+3.00*B-2.46".
std::string render_equation(ModelKind kind, std::span<const double> coefficients);
std::string render_equation_compact(ModelKind kind, std::span<const double> coefficients);

void render_table(std::ostream& out, std::span<const ComparisonReport> reports);

/// One JSON object per line, one line per model x group.
void write_records(std::ostream& out, std::span<const ComparisonReport> reports);
/// Inverse of write_records. Throws std::runtime_error on malformed input.
std::vector<ComparisonReport> read_records(std::istream& in);

}  // namespace fitts
