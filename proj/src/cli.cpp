#include "fitts/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "fitts/comparison.hpp"
#include "fitts/conditions.hpp"
#include "fitts/models.hpp"
#include "fitts/regression.hpp"
#include "fitts/sim/study.hpp"
#include "fitts/throughput.hpp"
#include "fitts/trial_log.hpp"

namespace fitts::cli {

namespace {

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Options {
  std::string input;
  std::string output;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string amplitude_mode = "euclidean";
  std::string aggregation = "means-of-means";
  std::string format = "table";
  std::string group = "All";
  std::vector<std::string> models;
  bool allow_partial_grid = false;
  bool study_grid = false;
};

using Writer = std::function<void(std::ostream&)>;

std::vector<AmplitudeMode> amplitude_modes(const std::string& name) {
  if (name == "both") return {AmplitudeMode::Euclidean, AmplitudeMode::DepthOnly};
  auto mode = parse_amplitude_mode(name);
  if (!mode) throw CliError(kExitInput, "--amplitude-mode: expected euclidean, depth or both");
  return {*mode};
}

Aggregation aggregation_of(const std::string& name) {
  auto a = parse_aggregation(name);
  if (!a) throw CliError(kExitInput, "--aggregation: expected means-of-means or pooled");
  return *a;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError(kExitIo, "cannot open " + path + " for writing");
  f << content;
  f.flush();
  if (!f) throw CliError(kExitIo, "write failed: " + path);
}

std::string render(const Writer& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

// Primary format to --output (or stdout); with --output the other format
// goes next to it.
void emit(const Options& o, std::ostream& out, const Writer& table, const Writer& records) {
  const bool as_records = o.format == "records";
  const Writer& primary = as_records ? records : table;
  if (o.output.empty()) {
    out << render(primary);
    return;
  }
  write_file(o.output, render(primary));
  if (as_records) {
    write_file(o.output + ".table.txt", render(table));
  } else {
    write_file(o.output + ".records.jsonl", render(records));
  }
}

std::vector<Trial> load_checked(const Options& o) {
  std::vector<Trial> trials;
  try {
    trials = load_trial_log(o.input);
  } catch (const LogParseError& e) {
    throw CliError(kExitInput, o.input + ": " + e.what());
  } catch (const IoError& e) {
    throw CliError(kExitIo, e.what());
  }
  const auto violations = validate_log(trials, ValidationOptions{o.study_grid});
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw CliError(kExitInput, o.input + ": line " + std::to_string(log_line_of(v.index)) + ": " +
                                   v.message);
  }
  return trials;
}

SummaryMap group_cells(const SummaryMap& full, const std::string& label, Aggregation agg) {
  SummaryMap cells;
  if (auto t = parse_technique(label)) {
    cells = filter_technique(full, *t);
    if (!cells.empty()) cells = collapse_over(cells, {Factor::Posture}, agg);
  } else if (label == "All Sit" || label == "All Stand") {
    cells = filter_posture(full, label == "All Sit" ? Posture::Sitting : Posture::Standing);
    if (!cells.empty()) cells = collapse_over(cells, {Factor::Technique}, agg);
  } else if (label == "All") {
    if (!full.empty()) cells = collapse_over(full, {Factor::Technique, Factor::Posture}, agg);
  } else {
    throw CliError(kExitInput, "--group: unknown group '" + label + "'");
  }
  if (cells.empty()) throw CliError(kExitIncomplete, "no trials in group " + label);
  return cells;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  std::ifstream f(o.config, std::ios::binary);
  if (!f) throw CliError(kExitIo, "cannot read config " + o.config);
  std::stringstream text;
  text << f.rdbuf();
  sim::ParsedStudyConfig parsed;
  try {
    parsed = sim::parse_study_config(text.str());
  } catch (const sim::StudyConfigError& e) {
    throw CliError(kExitInput, "config: " + std::string(e.what()));
  }
  if (o.seed) {
    parsed.config.seed = *o.seed;
  } else if (!parsed.has_seed) {
    throw CliError(kExitInput, "missing required field: seed (pass --seed or set \"seed\")");
  }
  std::vector<Trial> trials;
  try {
    trials = sim::generate_study(parsed.config);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitInput, std::string("config: ") + e.what());
  }
  std::ostringstream log;
  write_trial_log(log, trials);
  write_file(o.output, log.str());
  out << "simulated " << trials.size() << " trials (seed " << parsed.config.seed << ", preset "
      << sim::to_string(parsed.config.preset) << ") -> " << o.output << '\n';
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto modes = amplitude_modes(o.amplitude_mode);
  const Aggregation agg = aggregation_of(o.aggregation);
  const auto trials = load_checked(o);
  const auto reports = run_comparison_suite(group_by_condition(trials), modes, agg);
  emit(o, out, [&](std::ostream& os) { render_table(os, reports); },
       [&](std::ostream& os) { write_records(os, reports); });
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto modes = amplitude_modes(o.amplitude_mode);
  const Aggregation agg = aggregation_of(o.aggregation);
  std::vector<ModelKind> kinds;
  for (const auto& name : o.models) {
    auto k = parse_model_kind(name);
    if (!k) throw CliError(kExitInput, "--model: unknown model '" + name + "'");
    kinds.push_back(*k);
  }
  if (kinds.empty()) kinds.assign(kModelKinds.begin(), kModelKinds.end());

  const auto trials = load_checked(o);
  const SummaryMap cells = group_cells(group_by_condition(trials), o.group, agg);
  std::vector<ComparisonReport> reports;
  for (AmplitudeMode mode : modes) reports.push_back(compare_models(cells, o.group, {mode}));

  auto table = [&](std::ostream& os) {
    for (const auto& r : reports) {
      os << "Group " << r.group_label << " (" << cells.size() << " cells, amplitude "
         << to_string(r.amplitude_mode) << ")\n";
      for (ModelKind k : kinds) {
        const FitResult& f = r.model(k).fit;
        os << "  " << std::left << std::setw(9) << to_string(k) << std::right
           << "  R2=" << std::fixed << std::setprecision(4) << f.r2 << "  AdjR2=" << f.adj_r2
           << "  F=" << std::setprecision(3) << f.f_stat << "  p=" << std::setprecision(4)
           << f.p_value << "  AIC=" << std::setprecision(2) << f.aic << "  BIC=" << f.bic
           << "\n    " << render_equation(k, f.coefficients) << '\n';
        os.unsetf(std::ios::floatfield);
      }
    }
  };
  auto records = [&](std::ostream& os) {
    for (const auto& r : reports) {
      for (ModelKind k : kinds) {
        const FitResult& f = r.model(k).fit;
        auto num = [](double v) -> nlohmann::json {
          if (std::isfinite(v)) return v;
          return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        };
        nlohmann::json j;
        j["group"] = r.group_label;
        j["amplitude_mode"] = to_string(r.amplitude_mode);
        j["model"] = to_string(k);
        j["n"] = f.n;
        j["p"] = f.p;
        j["coefficients"] = f.coefficients;
        j["rss"] = num(f.rss);
        j["r2"] = num(f.r2);
        j["adj_r2"] = num(f.adj_r2);
        j["f_stat"] = num(f.f_stat);
        j["p_value"] = num(f.p_value);
        j["aic"] = num(f.aic);
        j["bic"] = num(f.bic);
        j["saturated"] = f.saturated;
        j["equation"] = render_equation(k, f.coefficients);
        os << j.dump() << '\n';
      }
    }
  };
  emit(o, out, table, records);
  return kExitOk;
}

std::vector<ThroughputRecord> throughput_for(const std::vector<Trial>& trials, AmplitudeMode mode,
                                             const Options& o) {
  ThroughputOptions topts;
  topts.allow_partial_grid = o.allow_partial_grid;
  return throughput_by_condition(trials, mode, topts);
}

int cmd_throughput(const Options& o, std::ostream& out) {
  const auto modes = amplitude_modes(o.amplitude_mode);
  const auto trials = load_checked(o);
  std::vector<std::pair<AmplitudeMode, std::vector<ThroughputRecord>>> results;
  for (AmplitudeMode mode : modes) results.emplace_back(mode, throughput_for(trials, mode, o));
  emit(
      o, out,
      [&](std::ostream& os) {
        for (const auto& [mode, recs] : results) render_throughput_table(os, recs, mode);
      },
      [&](std::ostream& os) {
        for (const auto& [mode, recs] : results) write_throughput_records(os, recs, mode);
      });
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto modes = amplitude_modes(o.amplitude_mode);
  const Aggregation agg = aggregation_of(o.aggregation);
  const auto trials = load_checked(o);
  const SummaryMap full = group_by_condition(trials);
  const auto reports = run_comparison_suite(full, modes, agg);
  std::vector<std::pair<AmplitudeMode, std::vector<ThroughputRecord>>> tp;
  for (AmplitudeMode mode : modes) tp.emplace_back(mode, throughput_for(trials, mode, o));

  auto table = [&](std::ostream& os) {
    os << "Trials: " << trials.size() << ", condition cells: " << full.size()
       << ", aggregation: " << to_string(agg) << "\n\n";
    render_table(os, reports);
    os << '\n';
    for (const auto& [mode, recs] : tp) render_throughput_table(os, recs, mode);
  };
  auto records = [&](std::ostream& os) {
    write_records(os, reports);
    for (const auto& [mode, recs] : tp) write_throughput_records(os, recs, mode);
  };
  emit(o, out, table, records);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  std::vector<Trial> trials;
  try {
    trials = load_trial_log(o.input);
  } catch (const LogParseError& e) {
    out << o.input << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    throw CliError(kExitIo, e.what());
  }
  const auto violations = validate_log(trials, ValidationOptions{o.study_grid});
  for (const Violation& v : violations) {
    out << o.input << ": line " << log_line_of(v.index) << ": " << v.message << '\n';
  }
  out << trials.size() << " trials, " << violations.size() << " violations\n";
  return violations.empty() ? kExitOk : kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fit and compare Fitts' law models on VR teleportation trial logs"};
  app.name("fittsctl");
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> format_values{"table", "records"};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "table or records")->check(CLI::IsMember(format_values));
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "trial log (CSV)")->required();
    sub->add_option("--output", o.output, "output file (stdout if omitted)");
    sub->add_option("--amplitude-mode", o.amplitude_mode, "euclidean, depth or both");
  };

  auto* simulate = app.add_subcommand("simulate", "generate a trial log from a simulation config");
  simulate->add_option("--config", o.config, "simulation config (JSON)")->required();
  simulate->add_option("--output", o.output, "trial log to write")->required();
  simulate->add_option("--seed", o.seed, "random seed (overrides the config)");

  auto* fit = app.add_subcommand("fit", "fit models on one condition group");
  add_analysis(fit);
  add_format(fit);
  fit->add_option("--aggregation", o.aggregation, "means-of-means or pooled");
  fit->add_option("--group", o.group, "RPRG, ..., RPDW, All Sit, All Stand or All");
  fit->add_option("--model", o.models, "model to report (repeatable; default all)");

  auto* compare = app.add_subcommand("compare", "compare the four models on every group");
  add_analysis(compare);
  add_format(compare);
  compare->add_option("--aggregation", o.aggregation, "means-of-means or pooled");

  auto* throughput = app.add_subcommand("throughput", "effective throughput per technique and posture");
  add_analysis(throughput);
  add_format(throughput);
  throughput->add_flag("--allow-partial-grid", o.allow_partial_grid, "accept missing grid cells");

  auto* report = app.add_subcommand("report", "model comparison and throughput in one report");
  add_analysis(report);
  add_format(report);
  report->add_option("--aggregation", o.aggregation, "means-of-means or pooled");
  report->add_flag("--allow-partial-grid", o.allow_partial_grid, "accept missing grid cells");

  auto* validate = app.add_subcommand("validate", "check a trial log for invariant violations");
  validate->add_option("--input", o.input, "trial log (CSV)")->required();

  for (CLI::App* sub : {fit, compare, report, validate}) {
    sub->add_flag("--study-grid", o.study_grid, "restrict angles to the study levels");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp too; anything else is bad usage.
    err << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*simulate) return cmd_simulate(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*throughput) return cmd_throughput(o, out);
    if (*report) return cmd_report(o, out);
    if (*validate) return cmd_validate(o, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const IncompleteData& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& m : e.missing()) err << "  missing: " << m << '\n';
    return kExitIncomplete;
  } catch (const InsufficientCells& e) {
    err << "error: " << e.what() << '\n';
    return kExitIncomplete;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CollinearPredictors& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace fitts::cli
