#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stbcbp/bp_detector.hpp"

namespace stbcbp {

enum class CodeKind { Ill, FdIll, Vblast };
enum class DetectorKind { Bp, Ml, Mmse, Mf };
enum class ChannelKind { Iid, Kron };

// Inclusive SNR grid "start:step:stop" (a bare number is a single point).
struct SnrGrid {
  double start_db = 0.0;
  double step_db = 1.0;
  double stop_db = 0.0;

  std::vector<double> points() const;
  static SnrGrid parse(const std::string& text);
  std::string str() const;
  bool operator==(const SnrGrid&) const = default;
};

struct SimConfig {
  CodeKind code = CodeKind::Ill;
  int n = 4;    // transmit antennas (STBC: n x n code, K = n^2; V-BLAST: K = n)
  int n_r = 4;  // receive antennas
  DetectorKind detector = DetectorKind::Bp;
  int bp_iters = 5;
  double bp_damping = 0.0;
  PsiForm psi_form = PsiForm::RealOfExp;
  ChannelKind channel = ChannelKind::Iid;
  double corr_r = 0.0;
  SnrGrid snr{};
  long max_frames = 1000000;
  long target_bit_errors = 400;
  std::uint64_t seed = 1;
  std::string out;
  int threads = 0;               // 0 = hardware concurrency
  bool force_noiseless = false;  // skip noise injection; detector keeps the SNR-derived sigma2

  bool operator==(const SimConfig&) const = default;
};

// Symbols (= uncoded BPSK bits) per frame: n^2 for STBC codes, n for V-BLAST.
int symbols_per_frame(const SimConfig& cfg);

// Throws std::invalid_argument on inconsistent configs (e.g. ML with K > 24).
void validate(const SimConfig& cfg);

std::string to_string(CodeKind v);
std::string to_string(DetectorKind v);
std::string to_string(ChannelKind v);
std::string to_string(PsiForm v);
CodeKind code_kind_from_string(const std::string& s);
DetectorKind detector_kind_from_string(const std::string& s);
ChannelKind channel_kind_from_string(const std::string& s);
PsiForm psi_form_from_string(const std::string& s);

}  // namespace stbcbp
