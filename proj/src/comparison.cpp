#include "fitts/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fitts {

std::string_view to_string(Criterion c) { return c == Criterion::AIC ? "AIC" : "BIC"; }

std::string_view to_string(AicGrade g) {
  switch (g) {
    case AicGrade::Substantial: return "Substantial";
    case AicGrade::Strong: return "Strong";
    case AicGrade::Less: return "Less";
    case AicGrade::Indeterminate: return "Indeterminate";
    case AicGrade::None: return "None";
  }
  return "?";
}

std::string_view to_string(BicGrade g) {
  switch (g) {
    case BicGrade::None: return "None";
    case BicGrade::Positive: return "Positive";
    case BicGrade::Strong: return "Strong";
    case BicGrade::VeryStrong: return "VeryStrong";
  }
  return "?";
}

int EvidenceGrade::level() const {
  return std::visit([](auto g) { return static_cast<int>(g); }, grade);
}

std::string_view EvidenceGrade::label() const {
  return std::visit([](auto g) { return to_string(g); }, grade);
}

EvidenceGrade grade_delta(Criterion criterion, double delta) {
  if (std::isnan(delta) || delta < 0.0) {
    throw std::domain_error("grade_delta: delta must be >= 0");
  }
  EvidenceGrade out;
  out.criterion = criterion;
  out.delta = delta;
  if (criterion == Criterion::AIC) {
    if (delta < 2.0) {
      out.grade = AicGrade::Substantial;
    } else if (delta < 4.0) {
      out.grade = AicGrade::Strong;
    } else if (delta < 7.0) {
      out.grade = AicGrade::Less;
    } else if (delta <= 10.0) {
      out.grade = AicGrade::Indeterminate;
    } else {
      out.grade = AicGrade::None;
    }
  } else {
    if (delta < 2.0) {
      out.grade = BicGrade::None;
    } else if (delta < 6.0) {
      out.grade = BicGrade::Positive;
    } else if (delta < 10.0) {
      out.grade = BicGrade::Strong;
    } else {
      out.grade = BicGrade::VeryStrong;
    }
  }
  return out;
}

std::vector<PredictorRow> design_rows(ModelSpec spec, const SummaryMap& cells,
                                      const CompareOptions& options) {
  std::vector<PredictorRow> rows;
  rows.reserve(cells.size());
  for (const auto& [key, summary] : cells) {
    const TargetGeometry g = geometry_from_grid(key.width_m(), key.distance_m(), key.height_m(),
                                                options.amplitude_mode, options.ctd_reference_m);
    rows.push_back({predictors(spec, g), summary.mean_mt_s});
  }
  return rows;
}

std::array<double, 4> information_deltas(const std::array<double, 4>& values) {
  const double best = *std::min_element(values.begin(), values.end());
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = values[i] == best ? 0.0 : values[i] - best;
  }
  return out;
}

namespace {

std::array<ModelKind, 4> rank_by(const std::array<double, 4>& values) {
  std::array<std::size_t, 4> idx{0, 1, 2, 3};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::array<ModelKind, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<ModelKind>(idx[i]);
  return out;
}

}  // namespace

ComparisonReport compare_models(const SummaryMap& cells, std::string group_label,
                                const CompareOptions& options) {
  if (cells.size() < kMinComparisonCells) {
    throw InsufficientCells("group '" + group_label + "' has " + std::to_string(cells.size()) +
                            " condition cells; model comparison needs at least " +
                            std::to_string(kMinComparisonCells));
  }
  ComparisonReport report;
  report.group_label = std::move(group_label);
  report.amplitude_mode = options.amplitude_mode;

  std::array<double, 4> aics{};
  std::array<double, 4> bics{};
  for (ModelKind kind : kModelKinds) {
    const auto i = static_cast<std::size_t>(kind);
    ModelFit& m = report.models[i];
    m.kind = kind;
    const auto rows = design_rows(ModelSpec{kind}, cells, options);
    m.fit = ols_fit(rows);
    aics[i] = m.fit.aic;
    bics[i] = m.fit.bic;
  }
  const FitResult& standard = report.models[0].fit;
  for (std::size_t i = 1; i < 4; ++i) {
    report.models[i].nested_vs_standard = partial_f(report.models[i].fit, standard);
  }

  const auto daic = information_deltas(aics);
  const auto dbic = information_deltas(bics);
  for (std::size_t i = 0; i < 4; ++i) {
    ModelFit& m = report.models[i];
    m.delta_aic = daic[i];
    m.delta_bic = dbic[i];
    m.aic_grade = grade_delta(Criterion::AIC, daic[i]);
    m.bic_grade = grade_delta(Criterion::BIC, dbic[i]);
  }
  report.rank_aic = rank_by(aics);
  report.rank_bic = rank_by(bics);
  return report;
}

std::vector<std::string> comparison_group_labels() {
  return {"RPRG", "LPLG", "RPLG", "LPRG", "RPDW", "All Sit", "All Stand", "All"};
}

std::vector<std::pair<std::string, SummaryMap>> comparison_groups(const SummaryMap& full_cells,
                                                              Aggregation aggregation) {
  std::vector<std::string> missing;
  for (Technique t : kTechniques) {
    if (filter_technique(full_cells, t).empty()) missing.emplace_back(to_string(t));
  }
  for (Posture p : kPostures) {
    if (filter_posture(full_cells, p).empty()) missing.emplace_back(to_string(p));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw IncompleteData(missing, "log is missing condition groups: " + list);
  }

  constexpr std::array<Technique, 5> table_order{Technique::RPRG, Technique::LPLG,
                                                 Technique::RPLG, Technique::LPRG,
                                                 Technique::RPDW};
  std::vector<std::pair<std::string, SummaryMap>> groups;
  for (Technique t : table_order) {
    groups.emplace_back(std::string(to_string(t)),
                        collapse_over(filter_technique(full_cells, t), {Factor::Posture},
                                      aggregation));
  }
  groups.emplace_back("All Sit", collapse_over(filter_posture(full_cells, Posture::Sitting),
                                               {Factor::Technique}, aggregation));
  groups.emplace_back("All Stand", collapse_over(filter_posture(full_cells, Posture::Standing),
                                                 {Factor::Technique}, aggregation));
  groups.emplace_back("All", collapse_over(full_cells, {Factor::Technique, Factor::Posture},
                                           aggregation));
  return groups;
}

std::vector<ComparisonReport> run_comparison_suite(const SummaryMap& full_cells,
                                               std::span<const AmplitudeMode> modes,
                                               Aggregation aggregation,
                                               double ctd_reference_m) {
  const auto groups = comparison_groups(full_cells, aggregation);
  std::vector<ComparisonReport> reports;
  for (AmplitudeMode mode : modes) {
    CompareOptions options{mode, ctd_reference_m};
    for (const auto& [label, cells] : groups) {
      reports.push_back(compare_models(cells, label, options));
    }
  }
  return reports;
}

namespace {

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  std::string s = os.str();
  if (s.find_first_not_of("-0.") == std::string::npos) s = std::string("0.") + std::string(decimals, '0');
  return s;
}

// " + 1.23*term" / " - 1.23*term"
std::string signed_term(double coefficient, std::string_view term, int decimals,
                        bool negate_term = false) {
  const double c = negate_term ? -coefficient : coefficient;
  std::string out = c < 0 ? " - " : " + ";
  out += fixed(std::fabs(c), decimals);
  out += '*';
  out += term;
  return out;
}

std::string compact_signed(double c, std::string_view suffix) {
  std::string out = c < 0 ? "-" : "+";
  out += fixed(std::fabs(c), 2);
  out += suffix;
  return out;
}

std::string pvalue_text(double p) {
  if (p < 0.001) return "<0.001";
  return fixed(p, 3);
}

std::string pad(std::string s, std::size_t width) {
  s.append(s.size() < width ? width - s.size() : 1, ' ');
  return s;
}

}  // namespace

std::string render_equation(ModelKind kind, std::span<const double> c) {
  if (c.size() != ModelSpec{kind}.coefficient_count()) {
    throw std::invalid_argument("render_equation: wrong coefficient count");
  }
  constexpr int d = 4;
  std::string out = "MT = " + fixed(c[0], d);
  switch (kind) {
    case ModelKind::Standard:
      out += signed_term(c[1], "log2(A/W+1)", d);
      break;
    case ModelKind::TwoPart:
      out += signed_term(c[1], "log2(A+W)", d);
      out += signed_term(c[2], "log2(W)", d, true);
      break;
    case ModelKind::Vergence:
      out += signed_term(c[1], "log2(A/W+1)", d);
      out += signed_term(c[2], "CTD", d);
      break;
    case ModelKind::Proposed:
      out += signed_term(c[1], "log2(A/W+1)", d);
      out += signed_term(c[2], "log2(W/max(D,H)+1)", d, true);
      break;
  }
  return out;
}

std::string render_equation_compact(ModelKind kind, std::span<const double> c) {
  if (c.size() != ModelSpec{kind}.coefficient_count()) {
    throw std::invalid_argument("render_equation_compact: wrong coefficient count");
  }
  std::string out = "MT=";
  if (kind == ModelKind::Standard) {
    out += fixed(c[1], 2) + "*ID";
  } else {
    out += fixed(c[1], 2) + "*A" + compact_signed(c[2], "*B");
  }
  out += compact_signed(c[0], "");
  return out;
}

void render_table(std::ostream& out, std::span<const ComparisonReport> reports) {
  const std::vector<std::size_t> widths{10, 11, 11, 8, 10, 8, 6, 7, 9, 9, 8, 8, 14, 11};
  const std::vector<std::string> header{"Model",   "Condition", "F-stat",  "p-val",
                                        "nested-F", "p-val",    "R2",      "Adj R2",
                                        "AIC",     "BIC",       "dAIC",    "dBIC",
                                        "AIC grade", "BIC grade"};

  std::optional<AmplitudeMode> current_mode;
  auto print_header = [&] {
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) line += pad(header[i], widths[i]);
    out << line << "Equation\n";
  };

  std::vector<const ComparisonReport*> block;
  auto flush_block = [&] {
    if (block.empty()) return;
    out << "Amplitude mode: " << to_string(block.front()->amplitude_mode) << '\n';
    print_header();
    for (ModelKind kind : kModelKinds) {
      for (const ComparisonReport* r : block) {
        const ModelFit& m = r->model(kind);
        const auto& f = m.fit;
        std::vector<std::string> cells{
            std::string(to_string(kind)),
            r->group_label,
            fixed(f.f_stat, 2),
            pvalue_text(f.p_value),
            m.nested_vs_standard ? fixed(m.nested_vs_standard->f_stat, 2) : "-",
            m.nested_vs_standard ? pvalue_text(m.nested_vs_standard->p_value) : "-",
            fixed(f.r2, 2),
            fixed(f.adj_r2, 2),
            fixed(f.aic, 2),
            fixed(f.bic, 2),
            fixed(m.delta_aic, 2),
            fixed(m.delta_bic, 2),
            std::string(m.aic_grade.label()),
            std::string(m.bic_grade.label())};
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) line += pad(cells[i], widths[i]);
        out << line << render_equation_compact(kind, f.coefficients) << '\n';
      }
    }
    out << "Best by AIC / BIC:";
    for (const ComparisonReport* r : block) {
      out << "  " << r->group_label << "=" << to_string(r->best_by_aic()) << '/'
          << to_string(r->best_by_bic());
    }
    out << "\n\n";
    block.clear();
  };

  for (const ComparisonReport& r : reports) {
    if (current_mode && *current_mode != r.amplitude_mode) flush_block();
    current_mode = r.amplitude_mode;
    block.push_back(&r);
  }
  flush_block();

  out << "Notes: AIC = n ln(RSS/n) + 2k, BIC = n ln(RSS/n) + k ln(n), k = predictors + 1.\n"
         "  Absolute values depend on this convention; compare deltas.\n"
         "  dAIC grades: <2 Substantial, [2,4) Strong, [4,7) Less, [7,10] Indeterminate, >10 None.\n"
         "  dBIC grades: <2 None, [2,6) Positive, [6,10) Strong, >=10 VeryStrong.\n"
         "  Equations: A and B are the two model terms with the published signs folded in,\n"
         "  e.g. Proposed MT=b1*A+b2*B+a with A=log2(A/W+1), B=-log2(W/max(D,H)+1).\n"
         "  nested-F tests each two-predictor model against Standard.\n";
}

}  // namespace fitts
