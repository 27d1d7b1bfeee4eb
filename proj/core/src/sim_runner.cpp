#include "stbcbp/sim_runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

#include "stbcbp/cda_code.hpp"
#include "stbcbp/channel.hpp"
#include "stbcbp/reference_detectors.hpp"

namespace stbcbp {

RandomStream frame_stream(std::uint64_t seed, double snr_db, std::uint64_t frame) {
  const auto snr_key =
      static_cast<std::uint32_t>(static_cast<std::int32_t>(std::llround(snr_db * 1000.0)));
  return RandomStream(seed, snr_key, frame);
}

namespace {

struct PointContext {
  const SimConfig& cfg;
  double snr_db;
  int K;
  double sigma2;
  std::unique_ptr<const CdaCode> code;  // null for V-BLAST
  ChannelModel chan;
  MrfOptions mrf_opt;
};

PointContext make_context(const SimConfig& cfg, double snr_db) {
  const bool stbc = cfg.code != CodeKind::Vblast;
  std::unique_ptr<const CdaCode> code;
  if (stbc)
    code = std::make_unique<const CdaCode>(
        build_code(cfg.n, cfg.code == CodeKind::Ill ? CodeVariant::Ill : CodeVariant::FdIll));
  // Transmitted matrix entries carry n data symbols each for the square CDA
  // codes, so their average energy is n; V-BLAST sends the unit-energy
  // symbols directly. This keeps snr_db the per-receive-antenna SNR.
  ChannelConfig ch;
  ch.n_t = cfg.n;
  ch.n_r = cfg.n_r;
  ch.snr_db = snr_db;
  ch.es = stbc ? static_cast<double>(cfg.n) : 1.0;
  ch.model = cfg.channel == ChannelKind::Kron ? FadingModel::Kronecker : FadingModel::Iid;
  ch.corr_r = cfg.channel == ChannelKind::Kron ? cfg.corr_r : 0.0;
  ChannelModel chan(ch);
  const double sigma2 = chan.sigma2();
  return PointContext{cfg,   snr_db, symbols_per_frame(cfg), sigma2, std::move(code),
                      chan,  MrfOptions{cfg.psi_form}};
}

int run_frame(const PointContext& ctx, long frame) {
  RandomStream rng = frame_stream(ctx.cfg.seed, ctx.snr_db, static_cast<std::uint64_t>(frame));

  Eigen::VectorXi sent(ctx.K);
  for (int i = 0; i < ctx.K; ++i) sent(i) = rng.bit() ? -1 : +1;
  const Eigen::VectorXcd d = sent.cast<std::complex<double>>();

  const BpOptions bp_opt{ctx.cfg.bp_iters, ctx.cfg.bp_damping};
  Eigen::VectorXi hard;
  if (ctx.code) {
    const Eigen::MatrixXcd x = encode(ctx.code->spec, d);
    const ChannelRealization ch = ctx.chan.draw(rng);
    const Eigen::MatrixXcd y_c =
        ctx.cfg.force_noiseless ? (ch.h_c * x).eval() : apply_channel(ch, x, rng);
    switch (ctx.cfg.detector) {
      case DetectorKind::Bp:
        hard = detect(build_mrf_stbc(y_c, ch.h_c, *ctx.code, ctx.sigma2, ctx.mrf_opt), bp_opt).hard;
        break;
      case DetectorKind::Mf:
        hard = mf_detect(build_mrf_stbc(y_c, ch.h_c, *ctx.code, ctx.sigma2, ctx.mrf_opt));
        break;
      case DetectorKind::Ml:
        hard = ml_detect({vec(y_c), linearize(*ctx.code, ch.h_c), ctx.sigma2});
        break;
      case DetectorKind::Mmse:
        hard = mmse_detect({vec(y_c), linearize(*ctx.code, ch.h_c), ctx.sigma2});
        break;
    }
  } else {
    const ChannelRealization ch = ctx.chan.draw(rng);
    const Eigen::VectorXcd y =
        ctx.cfg.force_noiseless ? (ch.h_c * d).eval() : apply_channel(ch, d, rng).col(0).eval();
    switch (ctx.cfg.detector) {
      case DetectorKind::Bp:
        hard = detect(build_mrf(y, ch.h_c, ctx.sigma2, ctx.mrf_opt), bp_opt).hard;
        break;
      case DetectorKind::Mf:
        hard = mf_detect(build_mrf(y, ch.h_c, ctx.sigma2, ctx.mrf_opt));
        break;
      case DetectorKind::Ml:
        hard = ml_detect({y, ch.h_c, ctx.sigma2});
        break;
      case DetectorKind::Mmse:
        hard = mmse_detect({y, ch.h_c, ctx.sigma2});
        break;
    }
  }

  int errors = 0;
  for (int i = 0; i < ctx.K; ++i) errors += hard(i) != sent(i);
  return errors;
}

}  // namespace

BerRecord run_point(const SimConfig& cfg, double snr_db) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const PointContext ctx = make_context(cfg, snr_db);

  int threads = cfg.threads > 0 ? cfg.threads
                                : std::max(1u, std::thread::hardware_concurrency());
  // Batches keep the stopping rule deterministic: every frame in a batch is
  // evaluated, then the serial scan decides where to stop.
  const long batch_size = std::max<long>(8L * threads, 65536L / std::max(1, ctx.K));

  long frames = 0;
  long errors = 0;
  bool stop = false;
  std::vector<int> batch_errors;
  while (!stop && frames < cfg.max_frames) {
    const long b = std::min(batch_size, cfg.max_frames - frames);
    batch_errors.assign(static_cast<std::size_t>(b), 0);
    auto work = [&](int tid) {
      for (long idx = tid; idx < b; idx += threads)
        batch_errors[static_cast<std::size_t>(idx)] = run_frame(ctx, frames + idx);
    };
    if (threads == 1 || b == 1) {
      for (long idx = 0; idx < b; ++idx)
        batch_errors[static_cast<std::size_t>(idx)] = run_frame(ctx, frames + idx);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(threads) - 1);
      for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
      work(0);
      for (auto& th : pool) th.join();
    }
    for (long idx = 0; idx < b; ++idx) {
      errors += batch_errors[static_cast<std::size_t>(idx)];
      ++frames;
      if (errors >= cfg.target_bit_errors) {
        stop = true;
        break;
      }
    }
  }

  BerRecord rec;
  rec.snr_db = snr_db;
  rec.frames = frames;
  rec.bits = frames * static_cast<long>(ctx.K);
  rec.bit_errors = errors;
  rec.ber = rec.bits > 0 ? static_cast<double>(errors) / static_cast<double>(rec.bits) : 0.0;
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<BerRecord> run_sweep(const SimConfig& cfg, const RecordCallback& on_record) {
  validate(cfg);
  std::vector<BerRecord> records;
  for (const double snr : cfg.snr.points()) {
    records.push_back(run_point(cfg, snr));
    if (on_record) on_record(records.back());
  }
  return records;
}

}  // namespace stbcbp
