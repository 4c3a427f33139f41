#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fitts/cli.hpp"
#include "fitts/comparison.hpp"
#include "fitts/throughput.hpp"
#include "fitts/trial_log.hpp"
#include "helpers.hpp"

using namespace fitts;
using testutil::TempDir;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run fittsctl(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

// Every technique x posture x grid cell, twice, with MT from `mt_of`.
template <class F>
std::vector<Trial> full_log(F mt_of) {
  std::vector<Trial> trials;
  for (Technique t : kTechniques) {
    for (Posture p : kPostures) {
      for (const GridCell& c : study_grid()) {
        for (int rep = 0; rep < 2; ++rep) {
          Trial tr = testutil::make_trial(c.width.meters(), c.distance.meters(), c.height.meters(),
                                          mt_of(c), t, p);
          tr.endpoint_deviation_m = tr.width_m * (rep == 0 ? 0.1 : 0.3);
          tr.trial_index = static_cast<std::uint32_t>(trials.size());
          trials.push_back(tr);
        }
      }
    }
  }
  return trials;
}

double standard_mt(const GridCell& c) {
  const TargetGeometry g = geometry_from_grid(c.width.meters(), c.distance.meters(),
                                              c.height.meters(), AmplitudeMode::Euclidean);
  return 0.4 + 0.5 * g.amplitude_m / 10.0 + 0.3 * std::log2(g.amplitude_m / g.width_m + 1.0) -
         0.05 * g.amplitude_m / 10.0;
}

}  // namespace

TEST_SUITE("cli-io") {

TEST_CASE("simulate writes a complete, reproducible log") {
  TempDir dir("cli-sim");
  spit(dir / "sim.json", R"({"preset": "realistic"})");
  const auto a = fittsctl({"simulate", "--config", (dir / "sim.json").string(), "--output",
                           (dir / "a.csv").string(), "--seed", "42"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out.find("simulated 8000 trials") != std::string::npos);
  const std::string log_a = slurp(dir / "a.csv");
  CHECK(count_lines(log_a) == 8001);
  CHECK(log_a.rfind(std::string(kTrialLogHeader), 0) == 0);

  spit(dir / "seeded.json", R"({"preset": "realistic", "seed": 42})");
  const auto b = fittsctl({"simulate", "--config", (dir / "seeded.json").string(), "--output",
                           (dir / "b.csv").string()});
  REQUIRE(b.code == cli::kExitOk);
  CHECK(slurp(dir / "b.csv") == log_a);

  const auto missing = fittsctl({"simulate", "--config", (dir / "sim.json").string(), "--output",
                                 (dir / "c.csv").string()});
  CHECK(missing.code == cli::kExitInput);
  CHECK(missing.err.find("seed") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir / "c.csv"));

  spit(dir / "bad.json", R"({"preset": "realistic", "sed": 1})");
  const auto bad = fittsctl({"simulate", "--config", (dir / "bad.json").string(), "--output",
                             (dir / "d.csv").string(), "--seed", "1"});
  CHECK(bad.code == cli::kExitInput);
  CHECK(bad.err.find("sed") != std::string::npos);

  CHECK(fittsctl({"simulate", "--config", (dir / "nope.json").string(), "--output",
                  (dir / "e.csv").string(), "--seed", "1"})
            .code == cli::kExitIo);
}

TEST_CASE("compare ranks a noiseless Standard log") {
  TempDir dir("cli-cmp");
  const auto trials = full_log([](const GridCell& c) {
    const TargetGeometry g = geometry_from_grid(c.width.meters(), c.distance.meters(),
                                                c.height.meters(), AmplitudeMode::Euclidean);
    return 0.4 + 0.3 * std::log2(g.amplitude_m / g.width_m + 1.0);
  });
  save_trial_log(dir / "std.csv", trials);
  const auto r = fittsctl({"compare", "--input", (dir / "std.csv").string(), "--output",
                           (dir / "cmp.jsonl").string(), "--format", "records"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(std::filesystem::exists(dir / "cmp.jsonl.table.txt"));

  std::ifstream in(dir / "cmp.jsonl");
  const auto reports = read_records(in);
  REQUIRE(reports.size() == 8);
  for (const auto& rep : reports) {
    CAPTURE(rep.group_label);
    CHECK(rep.best_by_aic() == ModelKind::Standard);
    CHECK(rep.best_by_bic() == ModelKind::Standard);
  }

  // Table output to stdout, records companion next to --output.
  const auto t = fittsctl({"compare", "--input", (dir / "std.csv").string()});
  REQUIRE(t.code == cli::kExitOk);
  CHECK(t.out.find("All Stand") != std::string::npos);
  const auto t2 = fittsctl({"compare", "--input", (dir / "std.csv").string(), "--output",
                            (dir / "cmp.txt").string()});
  REQUIRE(t2.code == cli::kExitOk);
  CHECK(slurp(dir / "cmp.txt") == t.out);
  std::ifstream companion(dir / "cmp.txt.records.jsonl");
  CHECK(read_records(companion) == reports);

  const auto both = fittsctl({"compare", "--input", (dir / "std.csv").string(), "--format",
                              "records", "--amplitude-mode", "both"});
  REQUIRE(both.code == cli::kExitOk);
  CHECK(count_lines(both.out) == 2 * 8 * 4);

  const auto fit = fittsctl({"fit", "--input", (dir / "std.csv").string(), "--group", "RPDW",
                             "--model", "Standard", "--format", "records"});
  REQUIRE(fit.code == cli::kExitOk);
  REQUIRE(count_lines(fit.out) == 1);
  const auto j = nlohmann::json::parse(fit.out);
  CHECK(j["model"] == "Standard");
  CHECK(j["saturated"] == true);
  CHECK(j["aic"] == "-inf");
  CHECK(std::fabs(j["coefficients"][1].get<double>() - 0.3) < 1e-9);

  CHECK(fittsctl({"fit", "--input", (dir / "std.csv").string(), "--group", "Nobody"}).code ==
        cli::kExitInput);
  CHECK(fittsctl({"fit", "--input", (dir / "std.csv").string(), "--model", "Cubic"}).code ==
        cli::kExitInput);
  CHECK(fittsctl({"compare", "--input", (dir / "std.csv").string(), "--amplitude-mode", "radial"})
            .code == cli::kExitInput);
}

TEST_CASE("invalid rows are reported by line") {
  TempDir dir("cli-bad");
  auto trials = full_log(standard_mt);
  trials[6].movement_time_s = -0.5;
  save_trial_log(dir / "neg.csv", trials);
  const auto r = fittsctl({"compare", "--input", (dir / "neg.csv").string()});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("line 8") != std::string::npos);
  CHECK(r.err.find("non-positive movement time") != std::string::npos);

  const auto v = fittsctl({"validate", "--input", (dir / "neg.csv").string()});
  CHECK(v.code == cli::kExitInput);
  CHECK(v.out.find("line 8: non-positive movement time") != std::string::npos);
  CHECK(v.out.find("1 violations") != std::string::npos);

  spit(dir / "garbled.csv", std::string(kTrialLogHeader) + "\nP01,RPRG,Sitting,zero\n");
  CHECK(fittsctl({"compare", "--input", (dir / "garbled.csv").string()}).code == cli::kExitInput);
  CHECK(fittsctl({"compare", "--input", (dir / "missing.csv").string()}).code == cli::kExitIo);
  save_trial_log(dir / "good.csv", full_log(standard_mt));
  CHECK(fittsctl({"compare", "--input", (dir / "good.csv").string(), "--output",
                  (dir / "no" / "such" / "dir.txt").string()})
            .code == cli::kExitIo);
}

TEST_CASE("validate agrees with compare") {
  TempDir dir("cli-val");
  for (int variant = 0; variant < 4; ++variant) {
    auto trials = full_log(standard_mt);
    if (variant == 1) trials[3].endpoint_deviation_m = trials[3].width_m;
    if (variant == 2) trials[10].participant_id.clear();
    if (variant == 3) trials[12].angle_deg = 45.0;
    const auto path = (dir / ("v" + std::to_string(variant) + ".csv")).string();
    save_trial_log(path, trials);
    for (bool study_grid : {false, true}) {
      std::vector<std::string> v{"validate", "--input", path};
      std::vector<std::string> c{"compare", "--input", path};
      if (study_grid) {
        v.push_back("--study-grid");
        c.push_back("--study-grid");
      }
      const int vc = fittsctl(v).code;
      const int cc = fittsctl(c).code;
      CAPTURE(variant);
      CAPTURE(study_grid);
      CHECK((vc == cli::kExitOk) == (cc == cli::kExitOk));
    }
  }
}

TEST_CASE("throughput") {
  TempDir dir("cli-tp");
  save_trial_log(dir / "full.csv", full_log(standard_mt));
  const auto r = fittsctl({"throughput", "--input", (dir / "full.csv").string(), "--format", "records"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(count_lines(r.out) == 10);

  // Two cells chosen so that IDe/MT is 2 and 1.5.
  std::vector<Trial> toy;
  auto add_cell = [&](double d, double mt, double center, double delta) {
    for (double dev : {center - delta, center, center + delta}) {
      Trial t = testutil::make_trial(1.35, d, 0.0, mt);
      t.endpoint_deviation_m = dev;
      toy.push_back(t);
    }
  };
  add_cell(3.0, 1.0, 0.3, 1.0 / kEffectiveWidthFactor);
  add_cell(9.0, 2.0, 0.35, 9.0 / (7.0 * kEffectiveWidthFactor));
  save_trial_log(dir / "toy.csv", toy);

  const auto partial = fittsctl({"throughput", "--input", (dir / "toy.csv").string(), "--format",
                                 "records", "--allow-partial-grid"});
  REQUIRE(partial.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(partial.out);
  CHECK(j["technique"] == "RPRG");
  CHECK(std::fabs(j["tp_bits_per_s"].get<double>() - 1.75) < 1e-9);

  const auto strict = fittsctl({"throughput", "--input", (dir / "toy.csv").string()});
  CHECK(strict.code == cli::kExitIncomplete);
  CHECK(strict.err.find("missing") != std::string::npos);
}

TEST_CASE("a missing technique is incomplete data") {
  TempDir dir("cli-inc");
  auto trials = full_log(standard_mt);
  std::erase_if(trials, [](const Trial& t) { return t.technique == Technique::RPDW; });
  save_trial_log(dir / "no_dwell.csv", trials);
  const auto r = fittsctl({"compare", "--input", (dir / "no_dwell.csv").string()});
  CHECK(r.code == cli::kExitIncomplete);
  CHECK(r.err.find("RPDW") != std::string::npos);
  CHECK(fittsctl({"report", "--input", (dir / "no_dwell.csv").string()}).code ==
        cli::kExitIncomplete);
}

TEST_CASE("usage errors") {
  CHECK(fittsctl({}).code == cli::kExitInput);
  CHECK(fittsctl({"compare"}).code == cli::kExitInput);
  CHECK(fittsctl({"frobnicate"}).code == cli::kExitInput);
  CHECK(fittsctl({"--help"}).code == cli::kExitOk);
}

}  // TEST_SUITE
