#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stbcbp/reference_curves.hpp"
#include "stbcbp/results_io.hpp"
#include "stbcbp/sim_runner.hpp"

using namespace stbcbp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// CSV text with the wall_time_s column blanked, for comparisons that must
// ignore timing.
std::string strip_wall_time(const std::string& csv) {
  std::stringstream out;
  std::stringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << line.substr(0, pos) << "\n";
  }
  return out.str();
}

SimConfig tiny_bp_config() {
  SimConfig cfg;
  cfg.code = CodeKind::Ill;
  cfg.n = 2;
  cfg.n_r = 2;
  cfg.detector = DetectorKind::Bp;
  cfg.snr = SnrGrid{0.0, 2.0, 4.0};
  cfg.max_frames = 4000;
  cfg.target_bit_errors = 100;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("snr grid parsing and points") {
  const SnrGrid g = SnrGrid::parse("0:2:4");
  CHECK(g.points() == std::vector<double>{0.0, 2.0, 4.0});
  CHECK(g.str() == "0:2:4");

  const SnrGrid single = SnrGrid::parse("6.5");
  CHECK(single.points() == std::vector<double>{6.5});

  const SnrGrid empty = SnrGrid::parse("4:1:2");
  CHECK(empty.points().empty());

  CHECK_THROWS_AS(SnrGrid::parse("4:0:8"), std::invalid_argument);
  CHECK_THROWS_AS(SnrGrid::parse("a:b"), std::invalid_argument);
  CHECK(SnrGrid::parse(SnrGrid{4.0, 0.5, 10.0}.str()) == SnrGrid{4.0, 0.5, 10.0});
}

TEST_CASE("config validation catches inconsistencies") {
  SimConfig cfg = tiny_bp_config();
  validate(cfg);

  SimConfig ml = cfg;
  ml.detector = DetectorKind::Ml;
  ml.n = 8;  // K = 64 > 24
  CHECK_THROWS_AS(validate(ml), std::invalid_argument);
  ml.n = 4;  // K = 16
  validate(ml);
  ml.code = CodeKind::Vblast;
  ml.n = 24;  // K = 24 is the boundary
  validate(ml);

  SimConfig bad = cfg;
  bad.target_bit_errors = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = cfg;
  bad.bp_damping = 1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = cfg;
  bad.max_frames = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("analytical reference curves") {
  CHECK(siso_awgn_ber(-300.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(siso_awgn_ber(60.0) == 0.0);  // gamma -> infinity
  CHECK(siso_awgn_ber(6.79) == doctest::Approx(1e-3).epsilon(0.01));
  CHECK(siso_rayleigh_ber(-300.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(siso_rayleigh_ber(40.0) == doctest::Approx(2.5e-5).epsilon(0.01));
}

TEST_CASE("noiseless frames decode without errors") {
  SimConfig cfg;
  cfg.code = CodeKind::Ill;
  cfg.n = 2;
  cfg.n_r = 2;
  cfg.detector = DetectorKind::Ml;
  cfg.force_noiseless = true;
  cfg.max_frames = 100;
  cfg.target_bit_errors = 1;
  cfg.seed = 5;
  const BerRecord rec = run_point(cfg, 10.0);
  CHECK(rec.frames == 100);
  CHECK(rec.bit_errors == 0);
  CHECK(rec.ber == 0.0);
  CHECK(rec.bits == 400);
}

TEST_CASE("records are identical at any parallelism level") {
  SimConfig cfg = tiny_bp_config();
  cfg.threads = 1;
  const BerRecord serial = run_point(cfg, 2.0);
  cfg.threads = 4;
  const BerRecord parallel = run_point(cfg, 2.0);
  CHECK(serial.frames == parallel.frames);
  CHECK(serial.bits == parallel.bits);
  CHECK(serial.bit_errors == parallel.bit_errors);
  CHECK(serial.ber == parallel.ber);
}

TEST_CASE("single-antenna BP matches the Rayleigh closed form") {
  SimConfig cfg;
  cfg.code = CodeKind::Ill;
  cfg.n = 1;
  cfg.n_r = 1;
  cfg.detector = DetectorKind::Bp;
  cfg.max_frames = 2000000;
  cfg.target_bit_errors = 300;
  cfg.seed = 17;
  for (const double snr : {6.0, 10.0, 14.0}) {
    const BerRecord rec = run_point(cfg, snr);
    const double expected = siso_rayleigh_ber(snr);
    const double sigma = std::sqrt(expected * (1.0 - expected) / rec.bits);
    CHECK(std::abs(rec.ber - expected) < 3.0 * sigma);
  }
}

TEST_CASE("sweep runs the grid in ascending order and respects emptiness") {
  SimConfig cfg = tiny_bp_config();
  int seen = 0;
  const auto records = run_sweep(cfg, [&](const BerRecord&) { ++seen; });
  REQUIRE(records.size() == 3);
  CHECK(seen == 3);
  CHECK(records[0].snr_db == 0.0);
  CHECK(records[1].snr_db == 2.0);
  CHECK(records[2].snr_db == 4.0);

  cfg.snr = SnrGrid{4.0, 1.0, 2.0};
  CHECK(run_sweep(cfg).empty());
}

TEST_CASE("BER is non-increasing in SNR up to Monte-Carlo noise") {
  SimConfig cfg = tiny_bp_config();
  cfg.snr = SnrGrid{0.0, 4.0, 8.0};
  cfg.target_bit_errors = 300;
  cfg.max_frames = 100000;
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 3);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& prev = records[i - 1];
    const auto& cur = records[i];
    const double sigma = std::sqrt(std::max(prev.ber, cur.ber) / std::min(prev.bits, cur.bits));
    CHECK(cur.ber <= prev.ber + 3.0 * sigma);
  }
}

TEST_CASE("csv and manifest round-trip") {
  SimConfig cfg = tiny_bp_config();
  cfg.snr = SnrGrid{2.0, 1.0, 2.0};
  cfg.target_bit_errors = 50;
  cfg.out = "test_sim_out.csv";

  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 1);
  emit_results(records, cfg);

  const std::string csv = slurp(cfg.out);
  std::stringstream ss(csv);
  std::string line;
  int lines = 0;
  while (std::getline(ss, line)) ++lines;
  CHECK(lines == 2);  // header + one record
  CHECK(csv.rfind("snr_db,frames,bits,bit_errors,ber,wall_time_s\n", 0) == 0);

  const SimConfig loaded = load_manifest(manifest_path_for(cfg.out));
  CHECK(loaded == cfg);

  // Re-running the same config reproduces the CSV byte for byte except for
  // the wall-time column.
  const auto records2 = run_sweep(cfg);
  std::vector<BerRecord> rs2(records2.begin(), records2.end());
  write_csv("test_sim_out2.csv", rs2);
  CHECK(strip_wall_time(slurp("test_sim_out2.csv")) == strip_wall_time(csv));

  std::remove("test_sim_out.csv");
  std::remove("test_sim_out2.csv");
  std::remove(manifest_path_for(cfg.out).c_str());
}

TEST_CASE("io failures carry the offending path") {
  SimConfig cfg = tiny_bp_config();
  cfg.out = "no_such_dir/out.csv";
  try {
    emit_results({}, cfg);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("no_such_dir/out.csv") != std::string::npos);
  }
}

TEST_CASE("vblast frames run through the same harness") {
  SimConfig cfg;
  cfg.code = CodeKind::Vblast;
  cfg.n = 4;
  cfg.n_r = 4;
  cfg.detector = DetectorKind::Mmse;
  cfg.snr = SnrGrid{6.0, 1.0, 6.0};
  cfg.target_bit_errors = 100;
  cfg.max_frames = 100000;
  cfg.seed = 31;
  const auto records = run_sweep(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].bits == records[0].frames * 4);
  CHECK(records[0].bit_errors >= 100);
}
