#include "stbcbp/cda_code.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stbcbp {

namespace {
using cd = std::complex<double>;
}

CodeSpec make_code_spec(int n, CodeVariant variant) {
  if (n < 1) throw std::invalid_argument("cda code: n must be >= 1");
  CodeSpec spec;
  spec.n = n;
  spec.variant = variant;
  spec.k = n * n;
  spec.omega = std::polar(1.0, 2.0 * std::numbers::pi / n);
  switch (variant) {
    case CodeVariant::Ill:
      spec.delta = cd{1.0, 0.0};
      spec.t = cd{1.0, 0.0};
      break;
    case CodeVariant::FdIll:
      spec.delta = std::polar(1.0, std::sqrt(5.0));
      spec.t = std::polar(1.0, 1.0);
      break;
    default:
      throw std::invalid_argument("cda code: unknown variant");
  }
  return spec;
}

WeightMatrixSet build_weight_matrices(const CodeSpec& spec) {
  const int n = spec.n;
  WeightMatrixSet set;
  set.matrices.reserve(spec.k);
  // A^{(u,v)}(r,c) = delta^[r<c] * omega^(c v) * t^v at r = (u+c) mod n,
  // zero elsewhere: the partial derivative of the code matrix w.r.t. d_{u,v}.
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
      const cd tv = std::pow(spec.t, v);
      cd omega_cv{1.0, 0.0};  // omega^(c v), advanced by omega^v per column
      const cd omega_v = std::pow(spec.omega, v);
      for (int c = 0; c < n; ++c) {
        const int r = (u + c) % n;
        cd w = omega_cv * tv;
        if (r < c) w *= spec.delta;
        a(r, c) = w;
        omega_cv *= omega_v;
      }
      set.matrices.push_back(std::move(a));
    }
  }
  set.column_stack.resize(spec.k, spec.k);
  for (int i = 0; i < spec.k; ++i) set.column_stack.col(i) = vec(set.matrices[i]);
  return set;
}

CdaCode build_code(int n, CodeVariant variant) {
  CdaCode code;
  code.spec = make_code_spec(n, variant);
  code.weights = build_weight_matrices(code.spec);
  return code;
}

Eigen::MatrixXcd encode(const CodeSpec& spec, const Eigen::VectorXcd& d) {
  const int n = spec.n;
  if (d.size() != spec.k)
    throw std::invalid_argument("encode: symbol vector length does not match k = n^2");
  Eigen::MatrixXcd x(n, n);
  for (int c = 0; c < n; ++c) {
    const cd omega_c = std::pow(spec.omega, c);
    for (int r = 0; r < n; ++r) {
      const int u = (r - c + n) % n;
      // sum_i d_{u,i} * (omega^c)^i * t^i
      cd acc{0.0, 0.0};
      cd w{1.0, 0.0};
      for (int i = 0; i < n; ++i) {
        acc += d(u * n + i) * w;
        w *= omega_c * spec.t;
      }
      x(r, c) = (r < c) ? spec.delta * acc : acc;
    }
  }
  return x;
}

Eigen::MatrixXcd encode_by_weights(const CdaCode& code, const Eigen::VectorXcd& d) {
  const int n = code.spec.n;
  if (d.size() != code.spec.k)
    throw std::invalid_argument("encode_by_weights: symbol vector length does not match k");
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < code.spec.k; ++i) x += d(i) * code.weights.matrices[i];
  return x;
}

Eigen::MatrixXcd linearize(const CdaCode& code, const Eigen::MatrixXcd& h_c) {
  const int n = code.spec.n;
  if (h_c.cols() != n)
    throw std::invalid_argument("linearize: channel matrix must have n columns");
  const Eigen::Index n_r = h_c.rows();
  Eigen::MatrixXcd h_eff(n_r * n, code.spec.k);
  // Column i of (I (x) h_c) vec(A_i): block c is h_c * A_i(:,c), and A_i has a
  // single nonzero per column at row (u+c) mod n.
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int i = u * n + v;
      const Eigen::MatrixXcd& a = code.weights.matrices[i];
      for (int c = 0; c < n; ++c) {
        const int r = (u + c) % n;
        h_eff.col(i).segment(c * n_r, n_r) = a(r, c) * h_c.col(r);
      }
    }
  }
  return h_eff;
}

}  // namespace stbcbp
