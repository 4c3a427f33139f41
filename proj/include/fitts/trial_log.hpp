#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fitts/trial.hpp"

namespace fitts {

inline constexpr std::string_view kTrialLogHeader =
    "participant_id,technique,posture,block,trial_index,width_m,distance_m,height_m,"
    "angle_deg,movement_time_s,endpoint_deviation_m,error_attempts,success";

/// Line number (1-based, header is line 1) of the data row at `index`.
constexpr std::size_t log_line_of(std::size_t index) { return index + 2; }

class LogParseError : public std::runtime_error {
 public:
  LogParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<Trial> read_trial_log(std::istream& in);
void write_trial_log(std::ostream& out, std::span<const Trial> trials);

std::vector<Trial> load_trial_log(const std::filesystem::path& path);
void save_trial_log(const std::filesystem::path& path, std::span<const Trial> trials);

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace fitts
