#include "stbcbp/sim_config.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include "stbcbp/reference_detectors.hpp"

namespace stbcbp {

namespace {

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("snr grid: bad number '" + s + "'");
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

}  // namespace

std::vector<double> SnrGrid::points() const {
  if (!(step_db > 0.0)) throw std::invalid_argument("snr grid: step must be > 0");
  std::vector<double> pts;
  for (int i = 0;; ++i) {
    const double s = start_db + i * step_db;
    if (s > stop_db + 1e-9) break;
    pts.push_back(s);
  }
  return pts;
}

SnrGrid SnrGrid::parse(const std::string& text) {
  SnrGrid g;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    g.start_db = g.stop_db = parse_double(text);
    g.step_db = 1.0;
    return g;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("snr grid: expected start:step:stop, got '" + text + "'");
  g.start_db = parse_double(text.substr(0, c1));
  g.step_db = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  g.stop_db = parse_double(text.substr(c2 + 1));
  if (!(g.step_db > 0.0)) throw std::invalid_argument("snr grid: step must be > 0");
  return g;
}

std::string SnrGrid::str() const {
  return format_double(start_db) + ":" + format_double(step_db) + ":" + format_double(stop_db);
}

int symbols_per_frame(const SimConfig& cfg) {
  return cfg.code == CodeKind::Vblast ? cfg.n : cfg.n * cfg.n;
}

void validate(const SimConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (cfg.n_r < 1) throw std::invalid_argument("config: nr must be >= 1");
  if (cfg.bp_iters < 1) throw std::invalid_argument("config: iters must be >= 1");
  if (!(cfg.bp_damping >= 0.0 && cfg.bp_damping < 1.0))
    throw std::invalid_argument("config: damping must be in [0,1)");
  if (!(cfg.corr_r >= 0.0 && cfg.corr_r < 1.0))
    throw std::invalid_argument("config: corr-r must be in [0,1)");
  if (!(cfg.snr.step_db > 0.0)) throw std::invalid_argument("config: snr step must be > 0");
  if (cfg.max_frames < 1) throw std::invalid_argument("config: frames must be >= 1");
  if (cfg.target_bit_errors < 1)
    throw std::invalid_argument("config: target-errors must be >= 1");
  if (cfg.threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (cfg.detector == DetectorKind::Ml && symbols_per_frame(cfg) > kMlMaxK)
    throw std::invalid_argument("config: ml detector requires K <= " + std::to_string(kMlMaxK));
}

std::string to_string(CodeKind v) {
  switch (v) {
    case CodeKind::Ill: return "ill";
    case CodeKind::FdIll: return "fdill";
    case CodeKind::Vblast: return "vblast";
  }
  throw std::invalid_argument("bad CodeKind");
}

std::string to_string(DetectorKind v) {
  switch (v) {
    case DetectorKind::Bp: return "bp";
    case DetectorKind::Ml: return "ml";
    case DetectorKind::Mmse: return "mmse";
    case DetectorKind::Mf: return "mf";
  }
  throw std::invalid_argument("bad DetectorKind");
}

std::string to_string(ChannelKind v) {
  switch (v) {
    case ChannelKind::Iid: return "iid";
    case ChannelKind::Kron: return "kron";
  }
  throw std::invalid_argument("bad ChannelKind");
}

std::string to_string(PsiForm v) {
  switch (v) {
    case PsiForm::RealOfExp: return "as-printed";
    case PsiForm::ExpOfNegRe: return "exp-of-re";
  }
  throw std::invalid_argument("bad PsiForm");
}

CodeKind code_kind_from_string(const std::string& s) {
  if (s == "ill") return CodeKind::Ill;
  if (s == "fdill") return CodeKind::FdIll;
  if (s == "vblast") return CodeKind::Vblast;
  throw std::invalid_argument("unknown code '" + s + "' (expected ill|fdill|vblast)");
}

DetectorKind detector_kind_from_string(const std::string& s) {
  if (s == "bp") return DetectorKind::Bp;
  if (s == "ml") return DetectorKind::Ml;
  if (s == "mmse") return DetectorKind::Mmse;
  if (s == "mf") return DetectorKind::Mf;
  throw std::invalid_argument("unknown detector '" + s + "' (expected bp|ml|mmse|mf)");
}

ChannelKind channel_kind_from_string(const std::string& s) {
  if (s == "iid") return ChannelKind::Iid;
  if (s == "kron") return ChannelKind::Kron;
  throw std::invalid_argument("unknown channel '" + s + "' (expected iid|kron)");
}

PsiForm psi_form_from_string(const std::string& s) {
  if (s == "as-printed") return PsiForm::RealOfExp;
  if (s == "exp-of-re") return PsiForm::ExpOfNegRe;
  throw std::invalid_argument("unknown psi form '" + s + "' (expected as-printed|exp-of-re)");
}

}  // namespace stbcbp
