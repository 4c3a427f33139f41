#include "fitts/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fitts/distributions.hpp"

namespace fitts {
namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

// Values are sorted first so the result does not depend on input order.
Moments moments(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  Moments m;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return m;
}

std::optional<double> ci95_half_width(double sd, std::size_t n) {
  if (n < 2) return std::nullopt;
  const double t = stats::student_t_quantile(0.975, static_cast<double>(n - 1));
  return t * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace

Millimeters Millimeters::from_meters(double m) {
  return Millimeters{static_cast<std::int64_t>(std::llround(m * 1000.0))};
}

ConditionKey ConditionKey::of(const Trial& t) {
  return ConditionKey{t.technique, t.posture, Millimeters::from_meters(t.width_m),
                      Millimeters::from_meters(t.distance_m),
                      Millimeters::from_meters(t.height_m)};
}

std::string describe(const ConditionKey& key) {
  std::ostringstream os;
  os << (key.technique ? to_string(*key.technique) : "*") << '/'
     << (key.posture ? to_string(*key.posture) : "*") << " W=" << key.width_m()
     << " D=" << key.distance_m() << " H=" << key.height_m();
  return os.str();
}

std::vector<Violation> validate_log(std::span<const Trial> trials,
                                    const ValidationOptions& options) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    auto flag = [&](std::string msg) { out.push_back({i, std::move(msg)}); };

    if (t.participant_id.empty()) flag("empty participant id");
    if (t.participant_id.find_first_of(",\r\n") != std::string::npos) {
      flag("participant id contains a separator character");
    }
    if (!std::isfinite(t.movement_time_s)) {
      flag("non-finite movement time");
    } else if (t.movement_time_s <= 0.0) {
      flag("non-positive movement time");
    }
    if (!std::isfinite(t.width_m) || t.width_m <= 0.0) flag("non-positive width");
    if (!std::isfinite(t.distance_m) || t.distance_m <= 0.0) flag("non-positive distance");
    if (!std::isfinite(t.height_m) || t.height_m < 0.0) flag("negative height");
    if (!std::isfinite(t.angle_deg)) {
      flag("non-finite angle");
    } else if (options.study_grid_angles && t.angle_deg != -10.0 && t.angle_deg != 0.0 &&
               t.angle_deg != 10.0) {
      flag("angle outside the -10/0/+10 grid");
    }
    if (!std::isfinite(t.endpoint_deviation_m) || t.endpoint_deviation_m < 0.0) {
      flag("negative endpoint deviation");
    } else if (t.success && std::isfinite(t.width_m) && t.width_m > 0.0 &&
               t.endpoint_deviation_m > t.width_m / 2.0) {
      flag("successful selection outside target radius");
    }
  }
  return out;
}

SummaryMap group_by_condition(std::span<const Trial> trials) {
  struct Cell {
    std::vector<double> mt;
    std::vector<double> deviation;
    std::size_t erroneous = 0;
  };
  std::map<ConditionKey, Cell> cells;
  for (const Trial& t : trials) {
    Cell& c = cells[ConditionKey::of(t)];
    c.mt.push_back(t.movement_time_s);
    c.deviation.push_back(t.endpoint_deviation_m);
    if (t.error_attempts > 0) ++c.erroneous;
  }

  SummaryMap out;
  for (auto& [key, cell] : cells) {
    ConditionSummary s;
    s.key = key;
    s.n_trials = cell.mt.size();
    auto mt = moments(cell.mt);
    auto dev = moments(cell.deviation);
    s.mean_mt_s = mt.mean;
    s.sd_mt_s = mt.sd;
    s.mean_deviation_m = dev.mean;
    s.sd_deviation_m = dev.sd;
    s.error_rate = static_cast<double>(cell.erroneous) / static_cast<double>(s.n_trials);
    s.ci95_mt_s = ci95_half_width(mt.sd, s.n_trials);
    out.emplace(key, s);
  }
  return out;
}

std::optional<Factor> parse_factor(std::string_view name) {
  if (name == "technique") return Factor::Technique;
  if (name == "posture") return Factor::Posture;
  return std::nullopt;
}

std::string_view to_string(Factor f) { return f == Factor::Technique ? "technique" : "posture"; }

std::optional<Aggregation> parse_aggregation(std::string_view name) {
  if (name == "means-of-means") return Aggregation::MeansOfMeans;
  if (name == "pooled") return Aggregation::Pooled;
  return std::nullopt;
}

std::string_view to_string(Aggregation a) {
  return a == Aggregation::MeansOfMeans ? "means-of-means" : "pooled";
}

SummaryMap collapse_over(const SummaryMap& summaries, const std::set<Factor>& drop,
                         Aggregation aggregation) {
  if (drop.empty()) return summaries;

  std::map<ConditionKey, std::vector<const ConditionSummary*>> groups;
  for (const auto& [key, summary] : summaries) {
    ConditionKey reduced = key;
    for (Factor f : drop) {
      const bool present = f == Factor::Technique ? key.technique.has_value()
                                                  : key.posture.has_value();
      if (!present) {
        throw UnknownFactor("unknown factor: '" + std::string(to_string(f)) +
                            "' is not present in the condition keys");
      }
      if (f == Factor::Technique) reduced.technique.reset();
      if (f == Factor::Posture) reduced.posture.reset();
    }
    groups[reduced].push_back(&summary);
  }

  SummaryMap out;
  for (const auto& [key, members] : groups) {
    ConditionSummary s;
    s.key = key;
    s.n_cells = 0;
    std::vector<double> mt_means;
    std::vector<double> dev_means;
    double weight_total = 0.0;
    double mt_acc = 0.0;
    double dev_acc = 0.0;
    double err_acc = 0.0;
    for (const ConditionSummary* m : members) {
      s.n_trials += m->n_trials;
      s.n_cells += m->n_cells;
      mt_means.push_back(m->mean_mt_s);
      dev_means.push_back(m->mean_deviation_m);
      const double w =
          aggregation == Aggregation::Pooled ? static_cast<double>(m->n_trials) : 1.0;
      weight_total += w;
      mt_acc += w * m->mean_mt_s;
      dev_acc += w * m->mean_deviation_m;
      err_acc += w * m->error_rate;
    }
    s.mean_mt_s = mt_acc / weight_total;
    s.mean_deviation_m = dev_acc / weight_total;
    s.error_rate = err_acc / weight_total;
    s.sd_mt_s = moments(mt_means).sd;
    s.sd_deviation_m = moments(dev_means).sd;
    s.ci95_mt_s = ci95_half_width(s.sd_mt_s, members.size());
    out.emplace(key, s);
  }
  return out;
}

SummaryMap collapse_over(const SummaryMap& summaries, std::span<const std::string_view> drop,
                         Aggregation aggregation) {
  std::set<Factor> factors;
  for (std::string_view name : drop) {
    auto f = parse_factor(name);
    if (!f) throw UnknownFactor("unknown factor: '" + std::string(name) + "'");
    factors.insert(*f);
  }
  return collapse_over(summaries, factors, aggregation);
}

SummaryMap filter_technique(const SummaryMap& summaries, Technique t) {
  SummaryMap out;
  for (const auto& [key, s] : summaries) {
    if (key.technique == t) out.emplace(key, s);
  }
  return out;
}

SummaryMap filter_posture(const SummaryMap& summaries, Posture p) {
  SummaryMap out;
  for (const auto& [key, s] : summaries) {
    if (key.posture == p) out.emplace(key, s);
  }
  return out;
}

}  // namespace fitts
