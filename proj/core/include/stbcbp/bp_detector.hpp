#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stbcbp/cda_code.hpp"
#include "stbcbp/linear_system.hpp"

namespace stbcbp {

// Pairwise-MRF detector for BPSK MIMO systems. The graph is fully connected:
// node i holds symbol x_i in {+1,-1}, node potentials come from the matched
// filter output z = H^H y / sigma^2 and edge potentials from the channel
// correlation R = H^H H / sigma^2:
//
//   phi_i(x)      = exp( x * Re(z_i) + ln p(x_i = x) )
//   psi_ij(xi,xj) = Re( exp( -xi * R_ij * xj ) )
//
// psi can be negative when |Im R_ij| exceeds pi/2, so it is floored at
// kPsiFloor; the strictly positive variant exp(-Re(xi R_ij xj)) is available
// behind PsiForm::ExpOfNegRe. Potentials are stored in the log domain so the
// detector stays finite at arbitrarily small noise variances.

// Value index convention everywhere in this header: index 0 means x = +1,
// index 1 means x = -1.
inline constexpr int kBpsk[2] = {+1, -1};
inline constexpr double kPsiFloor = 1e-12;

enum class PsiForm {
  RealOfExp,  // Re(exp(-xi R xj)), floored at kPsiFloor (default)
  ExpOfNegRe  // exp(-Re(xi R xj)), strictly positive, no floor
};

struct MrfOptions {
  PsiForm psi_form = PsiForm::RealOfExp;
};

struct MrfModel {
  int K = 0;
  Eigen::VectorXcd z;      // matched filter output, (1/sigma^2) H^H y
  Eigen::MatrixXcd r_mat;  // channel correlation, (1/sigma^2) H^H H (Hermitian)
  Eigen::ArrayX2d prior;   // p(x_i = +1), p(x_i = -1)
  Eigen::ArrayX2d log_phi;
  // log psi_{i,j}(x_i = kBpsk[a], x_j = kBpsk[b]) at [(i*K + j)*4 + a*2 + b].
  std::vector<double> log_psi;
  long clamp_events = 0;  // table entries whose raw psi fell below kPsiFloor

  double phi(int i, int a) const { return std::exp(log_phi(i, a)); }
  double psi(int i, int j, int a, int b) const {
    return std::exp(log_psi[(static_cast<std::size_t>(i) * K + j) * 4 + a * 2 + b]);
  }
  double log_psi_at(int i, int j, int a, int b) const {
    return log_psi[(static_cast<std::size_t>(i) * K + j) * 4 + a * 2 + b];
  }
};

// Builds the model from precomputed moments. z and r_mat are taken as-is
// (r_mat must be Hermitian); prior rows must sum to 1.
MrfModel build_mrf_from_moments(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& r_mat,
                                const Eigen::ArrayX2d& prior, const MrfOptions& opt = {});

MrfModel build_mrf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma2,
                   const Eigen::ArrayX2d& prior, const MrfOptions& opt = {});
MrfModel build_mrf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma2,
                   const MrfOptions& opt = {});  // uniform prior
MrfModel build_mrf(const LinearSystem& sys, const MrfOptions& opt = {});

// Same model as build_mrf(vec(y_c), linearize(code, h_c), sigma2), but z and
// R are computed through the permutation structure of the weight matrices in
// O(K^2 n) instead of dense O(K^2 n N_r) products.
MrfModel build_mrf_stbc(const Eigen::MatrixXcd& y_c, const Eigen::MatrixXcd& h_c,
                        const CdaCode& code, double sigma2, const MrfOptions& opt = {});

// All pairwise messages, stored as logs of normalized 2-vectors:
// log_m[a](j, i) = ln m_{j,i}(x_i = kBpsk[a]). Diagonal entries are unused
// and held at zero.
struct MessageState {
  int K = 0;
  long iteration = 0;
  Eigen::MatrixXd log_m[2];

  double message(int j, int i, int a) const { return std::exp(log_m[a](j, i)); }
};

MessageState initial_messages(const MrfModel& model);  // uniform (0.5, 0.5)

// One synchronous flooding update of every ordered pair from a snapshot of
// the previous iteration's messages, each message renormalized to sum 1.
// damping = alpha keeps alpha of the old message (0 = off, 1 = identity).
void iterate(const MrfModel& model, MessageState& state, double damping = 0.0);

// b_i(x) proportional to phi_i(x) * prod_j m_{j,i}(x), each row normalized.
Eigen::ArrayX2d beliefs(const MrfModel& model, const MessageState& state);

struct BpOptions {
  int iterations = 5;
  double damping = 0.0;
};

struct DetectionResult {
  Eigen::VectorXi hard;       // argmax-belief decisions, ties to +1
  Eigen::ArrayX2d beliefs;    // soft output
  Eigen::VectorXd llr;        // ln b(+1)/b(-1)
};

// Runs `iterations` synchronous updates from uniform messages and reads the
// beliefs once at the end.
DetectionResult detect(const MrfModel& model, const BpOptions& opt = {});

}  // namespace stbcbp
