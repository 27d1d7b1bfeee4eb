#pragma once

#include <string>
#include <vector>

#include "stbcbp/sim_config.hpp"

namespace stbcbp {

// One Monte-Carlo measurement point.
struct BerRecord {
  double snr_db = 0.0;
  long frames = 0;
  long bits = 0;
  long bit_errors = 0;
  double ber = 0.0;
  double wall_time_s = 0.0;
};

// Shortest round-trip decimal representation; locale-independent.
std::string format_double(double v);

std::string csv_header();
std::string csv_line(const BerRecord& rec);

// Writes the CSV at `path` and the run manifest alongside it
// (manifest_path_for(path)). I/O failures carry the offending path.
void emit_results(const std::vector<BerRecord>& records, const SimConfig& cfg);
void write_csv(const std::string& path, const std::vector<BerRecord>& records);

std::string manifest_path_for(const std::string& csv_path);
void write_manifest(const std::string& path, const SimConfig& cfg);
SimConfig load_manifest(const std::string& path);

}  // namespace stbcbp
