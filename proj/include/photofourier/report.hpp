#ifndef PHOTOFOURIER_REPORT_HPP
#define PHOTOFOURIER_REPORT_HPP

// Report plumbing: the run manifest embedded in every report and JSON/CSV
// serialization with stable field names. Reports carry no timestamps so
// identical runs are byte-identical.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "photofourier/archmodel.hpp"
#include "photofourier/errors.hpp"

namespace photofourier::report {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunManifest {
  std::string command;
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"config", m.config},
          {"seed", m.seed},
          {"out", m.out},
          {"tool_version", kToolVersion}};
}

inline nlohmann::json to_json(const archmodel::PowerBreakdown& b) {
  return {{"dac_w", b.dac_w},   {"adc_w", b.adc_w},   {"mrr_w", b.mrr_w},
          {"laser_w", b.laser_w}, {"sram_w", b.sram_w}, {"cmos_w", b.cmos_w},
          {"misc_w", b.misc_w},  {"total_w", b.total_w}};
}

inline nlohmann::json to_json(const archmodel::AreaBreakdown& a) {
  return {{"lens_mm2", a.lens_mm2},       {"mrr_mm2", a.mrr_mm2},
          {"pd_mm2", a.pd_mm2},           {"splitter_mm2", a.splitter_mm2},
          {"laser_mm2", a.laser_mm2},     {"routing_mm2", a.routing_mm2},
          {"pfcu_mm2", a.pfcu_mm2},       {"pic_mm2", a.pic_mm2},
          {"sram_mm2", a.sram_mm2},       {"cmos_mm2", a.cmos_mm2},
          {"total_mm2", a.total_mm2},     {"pfcu_width_mm", a.pfcu_width_mm}};
}

inline nlohmann::json to_json(const archmodel::PerfReport& r) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : r.layers)
    layers.push_back({{"photonic_cycles", l.photonic_cycles},
                      {"latency_s", l.latency_s},
                      {"energy_j", l.energy_j},
                      {"utilization", l.utilization}});
  return {{"layers", layers},
          {"total_cycles", r.total_cycles},
          {"latency_s", r.latency_s},
          {"energy_j", r.energy_j},
          {"avg_power_w", r.avg_power_w},
          {"fps", r.fps},
          {"fps_per_watt", r.fps_per_watt},
          {"edp", r.edp}};
}

/// CSV from a header row plus value rows; numbers are printed with
/// max_digits10 round-trip precision.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<std::string>& row) {
    if (row.size() != header_.size()) throw InvalidInput("csv row width mismatch");
    rows_.push_back(row);
  }

  std::string str() const {
    std::ostringstream os;
    join(os, header_);
    for (const auto& r : rows_) join(os, r);
    return os.str();
  }

  static std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }

 private:
  static void join(std::ostringstream& os, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file: " + path);
  f << content;
}

}  // namespace photofourier::report

#endif
