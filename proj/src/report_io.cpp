#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "fitts/comparison.hpp"
#include "json.hpp"

namespace fitts {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_number(const json& j, const char* field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::runtime_error(std::string("record field '") + field + "' is not a number");
}

const json& field(const json& rec, const char* name) {
  auto it = rec.find(name);
  if (it == rec.end()) throw std::runtime_error(std::string("record is missing field '") + name + "'");
  return *it;
}

EvidenceGrade parse_grade(Criterion criterion, double delta, const std::string& label) {
  EvidenceGrade g = grade_delta(criterion, delta);
  if (g.label() != label) {
    throw std::runtime_error("grade '" + label + "' is inconsistent with delta " +
                             std::to_string(delta));
  }
  return g;
}

}  // namespace

void write_records(std::ostream& out, std::span<const ComparisonReport> reports) {
  for (const ComparisonReport& r : reports) {
    for (const ModelFit& m : r.models) {
      const FitResult& f = m.fit;
      json coefficients = json::array();
      for (double c : f.coefficients) coefficients.push_back(number(c));
      int rank_aic = 0;
      int rank_bic = 0;
      for (int i = 0; i < 4; ++i) {
        if (r.rank_aic[i] == m.kind) rank_aic = i + 1;
        if (r.rank_bic[i] == m.kind) rank_bic = i + 1;
      }
      json rec = {
          {"group", r.group_label},
          {"amplitude_mode", to_string(r.amplitude_mode)},
          {"model", to_string(m.kind)},
          {"n", f.n},
          {"p", f.p},
          {"coefficients", coefficients},
          {"rss", number(f.rss)},
          {"r2", number(f.r2)},
          {"adj_r2", number(f.adj_r2)},
          {"f_stat", number(f.f_stat)},
          {"p_value", number(f.p_value)},
          {"nested_f_stat", m.nested_vs_standard ? number(m.nested_vs_standard->f_stat) : json()},
          {"nested_p_value", m.nested_vs_standard ? number(m.nested_vs_standard->p_value) : json()},
          {"aic", number(f.aic)},
          {"bic", number(f.bic)},
          {"delta_aic", number(m.delta_aic)},
          {"delta_bic", number(m.delta_bic)},
          {"aic_grade", m.aic_grade.label()},
          {"bic_grade", m.bic_grade.label()},
          {"rank_aic", rank_aic},
          {"rank_bic", rank_bic},
          {"saturated", f.saturated},
          {"equation", render_equation(m.kind, f.coefficients)},
          {"equation_compact", render_equation_compact(m.kind, f.coefficients)},
      };
      out << rec.dump() << '\n';
    }
  }
}

std::vector<ComparisonReport> read_records(std::istream& in) {
  std::vector<ComparisonReport> reports;
  std::string line;
  std::size_t line_no = 0;
  std::size_t filled = 0;
  std::array<bool, 4> seen{};

  auto finish = [&] {
    if (reports.empty()) return;
    if (filled != 4) {
      throw std::runtime_error("group '" + reports.back().group_label + "' has " +
                               std::to_string(filled) + " model records, expected 4");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("records line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      const auto group = field(rec, "group").get<std::string>();
      const auto mode = parse_amplitude_mode(field(rec, "amplitude_mode").get<std::string>());
      const auto kind = parse_model_kind(field(rec, "model").get<std::string>());
      if (!mode) throw std::runtime_error("unknown amplitude_mode");
      if (!kind) throw std::runtime_error("unknown model");

      if (reports.empty() || reports.back().group_label != group ||
          reports.back().amplitude_mode != *mode || filled == 4) {
        finish();
        reports.emplace_back();
        reports.back().group_label = group;
        reports.back().amplitude_mode = *mode;
        filled = 0;
        seen = {};
      }
      ComparisonReport& r = reports.back();
      const auto idx = static_cast<std::size_t>(*kind);
      if (seen[idx]) throw std::runtime_error("duplicate model record");
      seen[idx] = true;
      ++filled;

      ModelFit& m = r.models[idx];
      m.kind = *kind;
      FitResult& f = m.fit;
      f.n = field(rec, "n").get<std::size_t>();
      f.p = field(rec, "p").get<std::size_t>();
      f.coefficients.clear();
      for (const auto& c : field(rec, "coefficients")) f.coefficients.push_back(to_number(c, "coefficients"));
      f.rss = to_number(field(rec, "rss"), "rss");
      f.r2 = to_number(field(rec, "r2"), "r2");
      f.adj_r2 = to_number(field(rec, "adj_r2"), "adj_r2");
      f.f_stat = to_number(field(rec, "f_stat"), "f_stat");
      f.p_value = to_number(field(rec, "p_value"), "p_value");
      f.aic = to_number(field(rec, "aic"), "aic");
      f.bic = to_number(field(rec, "bic"), "bic");
      f.saturated = field(rec, "saturated").get<bool>();
      const json& nf = field(rec, "nested_f_stat");
      if (nf.is_null()) {
        m.nested_vs_standard.reset();
      } else {
        m.nested_vs_standard =
            FTest{to_number(nf, "nested_f_stat"),
                  to_number(field(rec, "nested_p_value"), "nested_p_value")};
      }
      m.delta_aic = to_number(field(rec, "delta_aic"), "delta_aic");
      m.delta_bic = to_number(field(rec, "delta_bic"), "delta_bic");
      m.aic_grade = parse_grade(Criterion::AIC, m.delta_aic, field(rec, "aic_grade").get<std::string>());
      m.bic_grade = parse_grade(Criterion::BIC, m.delta_bic, field(rec, "bic_grade").get<std::string>());
      const int rank_aic = field(rec, "rank_aic").get<int>();
      const int rank_bic = field(rec, "rank_bic").get<int>();
      if (rank_aic < 1 || rank_aic > 4 || rank_bic < 1 || rank_bic > 4) {
        throw std::runtime_error("rank outside 1..4");
      }
      r.rank_aic[rank_aic - 1] = *kind;
      r.rank_bic[rank_bic - 1] = *kind;
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("records line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("records line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  finish();
  return reports;
}

}  // namespace fitts
