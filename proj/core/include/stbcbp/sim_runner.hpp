#pragma once

#include <functional>
#include <vector>

#include "stbcbp/results_io.hpp"
#include "stbcbp/rng.hpp"
#include "stbcbp/sim_config.hpp"

namespace stbcbp {

// The random stream owned by frame f of the SNR point at snr_db. Frames never
// share generator state, so any frame-parallel schedule reproduces the serial
// run bit for bit.
RandomStream frame_stream(std::uint64_t seed, double snr_db, std::uint64_t frame);

// Runs one SNR point: draw symbols, encode, draw a fresh channel per frame,
// add noise, detect, count bit errors. Stops at the first frame F (in frame
// order) where the cumulative error count reaches target_bit_errors, or at
// max_frames. The stopping scan is serial over per-frame results, so the
// returned record is identical at every parallelism level.
BerRecord run_point(const SimConfig& cfg, double snr_db);

using RecordCallback = std::function<void(const BerRecord&)>;

// run_point across the SNR grid in ascending order; on_record (if set) sees
// each record as soon as it is measured.
std::vector<BerRecord> run_sweep(const SimConfig& cfg, const RecordCallback& on_record = {});

}  // namespace stbcbp
