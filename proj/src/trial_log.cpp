#include "fitts/trial_log.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace fitts {
namespace {

constexpr std::size_t kFieldCount = 13;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view text, std::size_t line, std::string_view field) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw LogParseError(line, "invalid number '" + std::string(text) + "' in field " +
                                  std::string(field));
  }
  return value;
}

std::uint32_t parse_count(std::string_view text, std::size_t line, std::string_view field) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw LogParseError(line, "invalid non-negative integer '" + std::string(text) +
                                  "' in field " + std::string(field));
  }
  return value;
}

Trial parse_row(std::string_view row, std::size_t line) {
  auto f = split_fields(row);
  if (f.size() != kFieldCount) {
    throw LogParseError(line, "expected " + std::to_string(kFieldCount) + " fields, got " +
                                  std::to_string(f.size()));
  }
  Trial t;
  t.participant_id = std::string(f[0]);
  auto technique = parse_technique(f[1]);
  if (!technique) throw LogParseError(line, "unknown technique '" + std::string(f[1]) + "'");
  t.technique = *technique;
  auto posture = parse_posture(f[2]);
  if (!posture) throw LogParseError(line, "unknown posture '" + std::string(f[2]) + "'");
  t.posture = *posture;
  t.block = parse_count(f[3], line, "block");
  t.trial_index = parse_count(f[4], line, "trial_index");
  t.width_m = parse_double(f[5], line, "width_m");
  t.distance_m = parse_double(f[6], line, "distance_m");
  t.height_m = parse_double(f[7], line, "height_m");
  t.angle_deg = parse_double(f[8], line, "angle_deg");
  t.movement_time_s = parse_double(f[9], line, "movement_time_s");
  t.endpoint_deviation_m = parse_double(f[10], line, "endpoint_deviation_m");
  t.error_attempts = parse_count(f[11], line, "error_attempts");
  if (f[12] == "true") {
    t.success = true;
  } else if (f[12] == "false") {
    t.success = false;
  } else {
    throw LogParseError(line, "success must be 'true' or 'false', got '" + std::string(f[12]) + "'");
  }
  return t;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<Trial> read_trial_log(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw LogParseError(1, "missing header row");
  std::string_view header = strip_cr(line);
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
  if (header != kTrialLogHeader) throw LogParseError(1, "unexpected header row");

  std::vector<Trial> trials;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = strip_cr(line);
    if (row.empty()) continue;
    trials.push_back(parse_row(row, line_no));
  }
  return trials;
}

void write_trial_log(std::ostream& out, std::span<const Trial> trials) {
  out << kTrialLogHeader << '\n';
  for (const Trial& t : trials) {
    out << t.participant_id << ',' << to_string(t.technique) << ',' << to_string(t.posture)
        << ',' << t.block << ',' << t.trial_index << ',' << format_double(t.width_m) << ','
        << format_double(t.distance_m) << ',' << format_double(t.height_m) << ','
        << format_double(t.angle_deg) << ',' << format_double(t.movement_time_s) << ','
        << format_double(t.endpoint_deviation_m) << ',' << t.error_attempts << ','
        << (t.success ? "true" : "false") << '\n';
  }
}

std::vector<Trial> load_trial_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trial log '" + path.string() + "'");
  return read_trial_log(in);
}

void save_trial_log(const std::filesystem::path& path, std::span<const Trial> trials) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_trial_log(out, trials);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace fitts
