#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "fitts/trial.hpp"

namespace testutil {

inline fitts::Trial make_trial(double w = 0.2, double d = 3.0, double h = 0.0, double mt = 2.0,
                               fitts::Technique t = fitts::Technique::RPRG,
                               fitts::Posture p = fitts::Posture::Sitting) {
  fitts::Trial trial;
  trial.participant_id = "P01";
  trial.technique = t;
  trial.posture = p;
  trial.width_m = w;
  trial.distance_m = d;
  trial.height_m = h;
  trial.movement_time_s = mt;
  trial.endpoint_deviation_m = w / 4.0;
  return trial;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("fitts-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
