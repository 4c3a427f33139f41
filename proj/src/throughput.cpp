#include "fitts/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fitts/comparison.hpp"
#include "json.hpp"

namespace fitts {
namespace {

GridCell grid_cell_of(const ConditionKey& key) {
  return GridCell{key.distance, key.height, key.width};
}

std::string describe(const GridCell& c) {
  std::ostringstream os;
  os << "D=" << c.distance.meters() << " H=" << c.height.meters() << " W=" << c.width.meters();
  return os.str();
}

}  // namespace

std::vector<GridCell> study_grid() {
  std::vector<GridCell> grid;
  for (double d : {3.0, 9.0}) {
    for (double h : {0.0, 3.0}) {
      for (double w : {0.2, 1.35}) {
        grid.push_back({Millimeters::from_meters(d), Millimeters::from_meters(h),
                        Millimeters::from_meters(w)});
      }
    }
  }
  return grid;
}

double effective_width(std::span<const double> deviations) {
  if (deviations.size() < 2) throw std::invalid_argument("effective_width: needs at least 2 endpoints");
  double sum = 0.0;
  for (double d : deviations) sum += d;
  const double mean = sum / static_cast<double>(deviations.size());
  double ss = 0.0;
  for (double d : deviations) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(deviations.size() - 1));
  return kEffectiveWidthFactor * sd;
}

double effective_amplitude(std::span<const double> realized) {
  if (realized.empty()) throw std::invalid_argument("effective_amplitude: no amplitudes");
  double sum = 0.0;
  for (double a : realized) sum += a;
  return sum / static_cast<double>(realized.size());
}

double effective_id(double ae_m, double we_m) {
  if (!(we_m > 0.0) || !std::isfinite(we_m)) {
    throw std::domain_error("effective_id: effective width must be positive");
  }
  if (!(ae_m >= 0.0) || !std::isfinite(ae_m)) {
    throw std::domain_error("effective_id: effective amplitude must be non-negative");
  }
  return std::log2(ae_m / we_m + 1.0);
}

double throughput_mean_of_means(std::span<const ThroughputCell> cells,
                                const ThroughputOptions& options) {
  if (!options.allow_partial_grid) {
    std::set<GridCell> present;
    for (const auto& c : cells) present.insert(grid_cell_of(c.key));
    std::vector<std::string> missing;
    for (const auto& g : options.expected_grid) {
      if (!present.contains(g)) missing.push_back(describe(g));
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : "; ") + m;
      throw IncompleteData(missing, "incomplete amplitude x width grid, missing: " + list);
    }
  }
  if (cells.empty()) throw std::invalid_argument("throughput_mean_of_means: no cells");
  double sum = 0.0;
  for (const auto& c : cells) {
    if (!(c.mean_mt_s > 0.0)) throw std::domain_error("throughput: movement time must be positive");
    sum += c.ide_bits / c.mean_mt_s;
  }
  return sum / static_cast<double>(cells.size());
}

std::vector<ThroughputRecord> throughput_by_condition(std::span<const Trial> trials,
                                                      AmplitudeMode mode,
                                                      const ThroughputOptions& options) {
  struct CellData {
    std::vector<double> deviations;
    std::vector<double> mts;
  };
  std::map<ConditionKey, CellData> data;
  for (const Trial& t : trials) {
    auto& c = data[ConditionKey::of(t)];
    c.deviations.push_back(t.endpoint_deviation_m);
    c.mts.push_back(t.movement_time_s);
  }
  const SummaryMap summaries = group_by_condition(trials);

  std::vector<ThroughputRecord> records;
  for (Technique technique : kTechniques) {
    for (Posture posture : kPostures) {
      ThroughputRecord rec;
      rec.technique = technique;
      rec.posture = posture;
      bool any = false;
      std::set<GridCell> seen;
      for (const auto& [key, cell] : data) {
        if (key.technique != technique || key.posture != posture) continue;
        any = true;
        seen.insert(grid_cell_of(key));
        if (cell.deviations.size() < 2) {
          rec.warnings.push_back(describe(key) + ": fewer than 2 trials, excluded");
          continue;
        }
        std::vector<double> deviations = cell.deviations;
        std::sort(deviations.begin(), deviations.end());
        const double we = effective_width(deviations);
        if (!(we > 0.0)) {
          rec.warnings.push_back(describe(key) + ": zero endpoint scatter, excluded");
          continue;
        }
        ThroughputCell tc;
        tc.key = key;
        tc.n_trials = cell.mts.size();
        const double nominal = amplitude_from_grid(key.distance_m(), key.height_m(), mode);
        tc.ae_m = effective_amplitude(std::span<const double>(&nominal, 1));
        tc.we_m = we;
        tc.ide_bits = effective_id(tc.ae_m, tc.we_m);
        tc.mean_mt_s = summaries.at(key).mean_mt_s;
        tc.tp_bits_per_s = tc.ide_bits / tc.mean_mt_s;
        rec.cells.push_back(tc);
      }
      if (!any) continue;

      // Degenerate cells count as present for the grid check.
      if (!options.allow_partial_grid) {
        std::vector<std::string> missing;
        for (const auto& g : options.expected_grid) {
          if (!seen.contains(g)) {
            missing.push_back(std::string(to_string(technique)) + "/" +
                              std::string(to_string(posture)) + " " + describe(g));
          }
        }
        if (!missing.empty()) {
          std::string list;
          for (const auto& m : missing) list += (list.empty() ? "" : "; ") + m;
          throw IncompleteData(missing, "incomplete amplitude x width grid, missing: " + list);
        }
      }
      if (rec.cells.empty()) {
        throw std::runtime_error(std::string(to_string(technique)) + "/" +
                                 std::string(to_string(posture)) +
                                 ": every cell is degenerate, throughput undefined");
      }
      ThroughputOptions relaxed = options;
      relaxed.allow_partial_grid = true;
      rec.tp_bits_per_s = throughput_mean_of_means(rec.cells, relaxed);
      records.push_back(std::move(rec));
    }
  }

  if (!options.allow_partial_grid) {
    std::vector<std::string> missing;
    for (Technique t : kTechniques) {
      for (Posture p : kPostures) {
        const bool found = std::any_of(records.begin(), records.end(), [&](const auto& r) {
          return r.technique == t && r.posture == p;
        });
        if (!found) missing.push_back(std::string(to_string(t)) + "/" + std::string(to_string(p)));
      }
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw IncompleteData(missing, "log is missing technique/posture cells: " + list);
    }
  }
  return records;
}

std::map<Technique, double> technique_throughput(std::span<const ThroughputRecord> records) {
  std::map<Technique, std::pair<double, int>> acc;
  for (const auto& r : records) {
    auto& [sum, count] = acc[r.technique];
    sum += r.tp_bits_per_s;
    ++count;
  }
  std::map<Technique, double> out;
  for (const auto& [t, sc] : acc) out[t] = sc.first / sc.second;
  return out;
}

void write_throughput_records(std::ostream& out, std::span<const ThroughputRecord> records,
                              AmplitudeMode mode) {
  using nlohmann::json;
  for (const auto& r : records) {
    json cells = json::array();
    for (const auto& c : r.cells) {
      cells.push_back({{"width_m", c.key.width_m()},
                       {"distance_m", c.key.distance_m()},
                       {"height_m", c.key.height_m()},
                       {"n_trials", c.n_trials},
                       {"ae_m", c.ae_m},
                       {"we_m", c.we_m},
                       {"ide_bits", c.ide_bits},
                       {"mean_mt_s", c.mean_mt_s},
                       {"tp_bits_per_s", c.tp_bits_per_s}});
    }
    json rec = {{"technique", to_string(r.technique)},
                {"posture", to_string(r.posture)},
                {"amplitude_mode", to_string(mode)},
                {"tp_bits_per_s", r.tp_bits_per_s},
                {"n_cells", r.cells.size()},
                {"cells", cells},
                {"warnings", r.warnings}};
    out << rec.dump() << '\n';
  }
}

void render_throughput_table(std::ostream& out, std::span<const ThroughputRecord> records,
                             AmplitudeMode mode) {
  out << "Throughput (means-of-means), amplitude mode: " << to_string(mode) << '\n';
  out << std::left << std::setw(10) << "Technique" << std::setw(10) << "Posture"
      << std::setw(8) << "Cells" << "TP (bits/s)\n";
  for (const auto& r : records) {
    out << std::left << std::setw(10) << to_string(r.technique) << std::setw(10)
        << to_string(r.posture) << std::setw(8) << r.cells.size() << std::fixed
        << std::setprecision(3) << r.tp_bits_per_s << '\n';
    for (const auto& w : r.warnings) out << "  warning: " << w << '\n';
  }
  out << "\nBy technique (mean over postures):\n";
  for (const auto& [t, tp] : technique_throughput(records)) {
    out << "  " << std::left << std::setw(8) << to_string(t) << std::fixed << std::setprecision(3)
        << tp << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace fitts
