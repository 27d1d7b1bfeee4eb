#include "stbcbp/results_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stbcbp/cda_code.hpp"
#include "stbcbp/version.hpp"

namespace stbcbp {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

std::string format_fixed3(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
  if (ec != std::errc{}) throw std::runtime_error("format_fixed3 failed");
  return std::string(buf, end);
}

}  // namespace

std::string csv_header() { return "snr_db,frames,bits,bit_errors,ber,wall_time_s"; }

std::string csv_line(const BerRecord& rec) {
  return format_double(rec.snr_db) + "," + std::to_string(rec.frames) + "," +
         std::to_string(rec.bits) + "," + std::to_string(rec.bit_errors) + "," +
         format_double(rec.ber) + "," + format_fixed3(rec.wall_time_s);
}

void write_csv(const std::string& path, const std::vector<BerRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << csv_header() << "\n";
  for (const auto& rec : records) out << csv_line(rec) << "\n";
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string manifest_path_for(const std::string& csv_path) {
  return csv_path + ".manifest.json";
}

namespace {

json config_to_json(const SimConfig& cfg) {
  return json{{"code", to_string(cfg.code)},
              {"n", cfg.n},
              {"nr", cfg.n_r},
              {"detector", to_string(cfg.detector)},
              {"iters", cfg.bp_iters},
              {"damping", cfg.bp_damping},
              {"psi-form", to_string(cfg.psi_form)},
              {"channel", to_string(cfg.channel)},
              {"corr-r", cfg.corr_r},
              {"snr", cfg.snr.str()},
              {"frames", cfg.max_frames},
              {"target-errors", cfg.target_bit_errors},
              {"seed", cfg.seed},
              {"out", cfg.out},
              {"threads", cfg.threads},
              {"force-noiseless", cfg.force_noiseless}};
}

SimConfig config_from_json(const json& j) {
  SimConfig cfg;
  cfg.code = code_kind_from_string(j.at("code").get<std::string>());
  cfg.n = j.at("n").get<int>();
  cfg.n_r = j.at("nr").get<int>();
  cfg.detector = detector_kind_from_string(j.at("detector").get<std::string>());
  cfg.bp_iters = j.at("iters").get<int>();
  cfg.bp_damping = j.at("damping").get<double>();
  cfg.psi_form = psi_form_from_string(j.at("psi-form").get<std::string>());
  cfg.channel = channel_kind_from_string(j.at("channel").get<std::string>());
  cfg.corr_r = j.at("corr-r").get<double>();
  cfg.snr = SnrGrid::parse(j.at("snr").get<std::string>());
  cfg.max_frames = j.at("frames").get<long>();
  cfg.target_bit_errors = j.at("target-errors").get<long>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.out = j.at("out").get<std::string>();
  cfg.threads = j.at("threads").get<int>();
  cfg.force_noiseless = j.at("force-noiseless").get<bool>();
  return cfg;
}

}  // namespace

void write_manifest(const std::string& path, const SimConfig& cfg) {
  json j;
  j["version"] = kVersion;
  j["generator"] = "stbcsim";
  j["config"] = config_to_json(cfg);
  if (cfg.code != CodeKind::Vblast) {
    const CodeSpec spec =
        make_code_spec(cfg.n, cfg.code == CodeKind::Ill ? CodeVariant::Ill : CodeVariant::FdIll);
    j["code_parameters"] = json{{"n", spec.n},
                                {"k", spec.k},
                                {"variant", cfg.code == CodeKind::Ill ? "ill" : "fdill"},
                                {"delta", {spec.delta.real(), spec.delta.imag()}},
                                {"t", {spec.t.real(), spec.t.imag()}},
                                {"omega_n", {spec.omega.real(), spec.omega.imag()}}};
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SimConfig load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  in >> j;
  return config_from_json(j.at("config"));
}

void emit_results(const std::vector<BerRecord>& records, const SimConfig& cfg) {
  if (cfg.out.empty()) throw std::invalid_argument("emit_results: config has no output path");
  write_csv(cfg.out, records);
  write_manifest(manifest_path_for(cfg.out), cfg);
}

}  // namespace stbcbp
