#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fitts/comparison.hpp"
#include "fitts/sim/study.hpp"
#include "fitts/throughput.hpp"

using namespace fitts;
using doctest::Approx;

namespace {

// Eight noiseless (W, D, H) condition means from a ground-truth equation.
SummaryMap noiseless_cells(ModelKind kind, const std::vector<double>& coefficients,
                           AmplitudeMode mode = AmplitudeMode::Euclidean) {
  SummaryMap cells;
  for (const GridCell& cell : study_grid()) {
    ConditionKey key;
    key.width = cell.width;
    key.distance = cell.distance;
    key.height = cell.height;
    ConditionSummary s;
    s.key = key;
    s.n_trials = 1;
    const auto g = geometry_from_grid(key.width_m(), key.distance_m(), key.height_m(), mode);
    s.mean_mt_s = predict_mt({kind}, coefficients, g);
    cells[key] = s;
  }
  return cells;
}

}  // namespace

TEST_SUITE("model-comparison") {

TEST_CASE("evidence grade table") {
  struct Row {
    double delta;
    AicGrade aic;
    BicGrade bic;
  };
  const Row rows[] = {
      {0.0, AicGrade::Substantial, BicGrade::None},
      {1.99, AicGrade::Substantial, BicGrade::None},
      {2.0, AicGrade::Strong, BicGrade::Positive},
      {3.99, AicGrade::Strong, BicGrade::Positive},
      {4.0, AicGrade::Less, BicGrade::Positive},
      {6.0, AicGrade::Less, BicGrade::Strong},
      {6.99, AicGrade::Less, BicGrade::Strong},
      {7.0, AicGrade::Indeterminate, BicGrade::Strong},
      {10.0, AicGrade::Indeterminate, BicGrade::VeryStrong},
      {10.01, AicGrade::None, BicGrade::VeryStrong},
      {11.0, AicGrade::None, BicGrade::VeryStrong},
  };
  for (const Row& r : rows) {
    CAPTURE(r.delta);
    CHECK(std::get<AicGrade>(grade_delta(Criterion::AIC, r.delta).grade) == r.aic);
    CHECK(std::get<BicGrade>(grade_delta(Criterion::BIC, r.delta).grade) == r.bic);
  }
  CHECK(std::get<AicGrade>(grade_delta(Criterion::AIC, INFINITY).grade) == AicGrade::None);
  CHECK_THROWS_AS(grade_delta(Criterion::AIC, -0.1), std::domain_error);
  CHECK_THROWS_AS(grade_delta(Criterion::BIC, std::nan("")), std::domain_error);
}

TEST_CASE("property: grades never strengthen as delta shrinks") {
  for (Criterion c : {Criterion::AIC, Criterion::BIC}) {
    int previous = grade_delta(c, 0.0).level();
    for (double d = 0.0; d < 15.0; d += 0.005) {
      const int level = grade_delta(c, d).level();
      CHECK(level >= previous);
      previous = level;
    }
  }
}

TEST_CASE("information deltas") {
  const auto d = information_deltas({10.59, 12.18, 12.65, 13.64});
  CHECK(d[0] == 0.0);
  CHECK(d[1] == Approx(1.59).epsilon(1e-12));
  CHECK(d[2] == Approx(2.06).epsilon(1e-12));
  CHECK(d[3] == Approx(3.05).epsilon(1e-12));
  const double inf = std::numeric_limits<double>::infinity();
  const auto s = information_deltas({-inf, 1.0, -inf, 2.0});
  CHECK(s[0] == 0.0);
  CHECK(s[1] == inf);
  CHECK(s[2] == 0.0);
}

TEST_CASE("noiseless reference equations are recovered") {
  const std::vector<double> standard{-0.41, 0.83};
  auto report = compare_models(noiseless_cells(ModelKind::Standard, standard), "All");
  const FitResult s = report.model(ModelKind::Standard).fit;
  CHECK(std::fabs(s.coefficients[0] + 0.41) <= 1e-9);
  CHECK(std::fabs(s.coefficients[1] - 0.83) <= 1e-9);
  CHECK(s.r2 == 1.0);
  CHECK(report.best_by_aic() == ModelKind::Standard);

  const std::vector<double> proposed{-2.46, 1.21, 3.00};
  report = compare_models(noiseless_cells(ModelKind::Proposed, proposed), "All");
  const FitResult& p = report.model(ModelKind::Proposed).fit;
  CHECK(std::fabs(p.coefficients[0] + 2.46) <= 1e-9);
  CHECK(std::fabs(p.coefficients[1] - 1.21) <= 1e-9);
  CHECK(std::fabs(p.coefficients[2] - 3.00) <= 1e-9);
  CHECK(p.rss == 0.0);
  CHECK(report.best_by_aic() == ModelKind::Proposed);
  CHECK(report.best_by_bic() == ModelKind::Proposed);
  CHECK(report.model(ModelKind::Proposed).delta_aic == 0.0);
  CHECK(render_equation_compact(ModelKind::Proposed, p.coefficients) == "MT=1.21*A+3.00*B-2.46");
  CHECK(render_equation_compact(ModelKind::Standard, s.coefficients) == "MT=0.83*ID-0.41");
}

TEST_CASE("constant response ties are broken by model order") {
  SummaryMap cells = noiseless_cells(ModelKind::Standard, {2.0, 0.0});
  const auto report = compare_models(cells, "flat");
  for (const ModelFit& m : report.models) {
    CHECK(m.delta_aic == 0.0);
    CHECK(m.delta_bic == 0.0);
  }
  CHECK(report.rank_aic == std::array<ModelKind, 4>{ModelKind::Standard, ModelKind::TwoPart,
                                                    ModelKind::Vergence, ModelKind::Proposed});
  CHECK(report.rank_bic == report.rank_aic);
}

TEST_CASE("too few cells") {
  SummaryMap cells = noiseless_cells(ModelKind::Standard, {0.0, 1.0});
  while (cells.size() > 4) cells.erase(cells.begin());
  CHECK_THROWS_AS(compare_models(cells, "small"), InsufficientCells);
}

TEST_CASE("property: shifting responses changes only the intercept") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 0.1);
  for (int trial = 0; trial < 50; ++trial) {
    SummaryMap cells = noiseless_cells(ModelKind::Proposed, {0.5, 0.9, -1.5});
    for (auto& [k, s] : cells) s.mean_mt_s += noise(rng);
    SummaryMap shifted = cells;
    const double c = 3.0 * noise(rng) * 10.0;
    for (auto& [k, s] : shifted) s.mean_mt_s += c;
    const auto a = compare_models(cells, "g");
    const auto b = compare_models(shifted, "g");
    CHECK(a.rank_aic == b.rank_aic);
    for (ModelKind kind : kModelKinds) {
      const auto& fa = a.model(kind);
      const auto& fb = b.model(kind);
      CHECK(fb.fit.rss == Approx(fa.fit.rss).epsilon(1e-8));
      CHECK(fb.delta_aic == Approx(fa.delta_aic).epsilon(1e-6).scale(1.0));
      for (std::size_t j = 1; j < fa.fit.coefficients.size(); ++j) {
        CHECK(fb.fit.coefficients[j] == Approx(fa.fit.coefficients[j]).epsilon(1e-9).scale(1.0));
      }
      CHECK(fb.fit.coefficients[0] == Approx(fa.fit.coefficients[0] + c).epsilon(1e-9).scale(1.0));
    }
    int zero_aic = 0, zero_bic = 0;
    for (const ModelFit& m : a.models) {
      zero_aic += m.delta_aic == 0.0;
      zero_bic += m.delta_bic == 0.0;
    }
    CHECK(zero_aic >= 1);
    CHECK(zero_bic >= 1);
    CHECK(a.model(a.best_by_aic()).delta_aic == 0.0);
    CHECK(a.model(a.best_by_bic()).delta_bic == 0.0);
  }
}

TEST_CASE("comparison suite over a simulated study") {
  sim::StudyConfig config = sim::preset_config(sim::Preset::ModelExact);
  config.participants = 4;
  config.seed = 3;
  const auto trials = sim::generate_study(config);
  const auto full = group_by_condition(trials);
  const std::vector<AmplitudeMode> modes{AmplitudeMode::Euclidean, AmplitudeMode::DepthOnly};
  const auto reports = run_comparison_suite(full, modes);
  REQUIRE(reports.size() == 16);
  const auto labels = comparison_group_labels();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].group_label == labels[i % 8]);
    CHECK(reports[i].amplitude_mode == modes[i / 8]);
  }

  std::vector<Trial> no_dwell;
  for (const Trial& t : trials) {
    if (t.technique != Technique::RPDW) no_dwell.push_back(t);
  }
  try {
    run_comparison_suite(group_by_condition(no_dwell), modes);
    FAIL("expected IncompleteData");
  } catch (const IncompleteData& e) {
    CHECK(e.missing() == std::vector<std::string>{"RPDW"});
    CHECK(std::string(e.what()).find("RPDW") != std::string::npos);
  }

  std::ostringstream records;
  write_records(records, reports);
  std::istringstream in(records.str());
  const auto back = read_records(in);
  CHECK(back == reports);

  std::ostringstream table;
  render_table(table, reports);
  CHECK(table.str().find("Amplitude mode: depth") != std::string::npos);
  CHECK(table.str().find("All Stand") != std::string::npos);
}

TEST_CASE("records reject inconsistent grades") {
  const auto report = compare_models(noiseless_cells(ModelKind::Standard, {-0.41, 0.83}), "All");
  std::ostringstream os;
  write_records(os, std::vector<ComparisonReport>{report});
  std::string text = os.str();
  const auto pos = text.find("\"aic_grade\":\"Substantial\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 25, "\"aic_grade\":\"None\"");
  std::istringstream in(text);
  CHECK_THROWS(read_records(in));
}

TEST_CASE("equations render in the published sign convention") {
  const std::vector<double> two_part{0.1, 0.5, 0.25};
  CHECK(render_equation(ModelKind::TwoPart, two_part).find("- 0.2500*log2(W)") != std::string::npos);
  const std::vector<double> proposed{-2.46, 1.21, 3.0};
  const std::string eq = render_equation(ModelKind::Proposed, proposed);
  CHECK(eq.find("- 3.0000*log2(W/max(D,H)+1)") != std::string::npos);
  CHECK(eq.find("-2.4600") != std::string::npos);
}

}  // TEST_SUITE
