#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace stbcbp {

// Full-rate square space-time block codes built from cyclic division
// algebras. An n-antenna code spans n time slots and carries k = n^2 data
// symbols per code matrix. Entry (r,c) of the code matrix is
//
//   X(r,c) = delta^[r<c] * sum_{i=0..n-1} d[(r-c) mod n][i] * omega^(c*i) * t^i
//
// with omega = e^{j 2 pi / n}. The ILL parameterization uses delta = t = 1;
// FD-ILL additionally rotates with delta = e^{j sqrt(5)} and t = e^{j}.

enum class CodeVariant { Ill, FdIll };

struct CodeSpec {
  int n = 1;  // transmit antennas == time slots
  CodeVariant variant = CodeVariant::Ill;
  std::complex<double> delta{1.0, 0.0};  // unit-modulus twist on the strict upper triangle
  std::complex<double> t{1.0, 0.0};      // unit-modulus per-symbol rotation
  std::complex<double> omega{1.0, 0.0};  // e^{j 2 pi / n}
  int k = 1;                             // n^2 data symbols per code matrix
};

// The k dispersion matrices of the code. Flat symbol index i = u*n + v maps
// the data symbol d_{u,v}; matrices[i] is that symbol's weight matrix. Every
// weight matrix is permutation-type: exactly one unit-modulus entry per row
// and per column.
struct WeightMatrixSet {
  std::vector<Eigen::MatrixXcd> matrices;
  Eigen::MatrixXcd column_stack;  // n^2 x n^2; column i = vec(matrices[i]), column-major
};

struct CdaCode {
  CodeSpec spec;
  WeightMatrixSet weights;
};

CodeSpec make_code_spec(int n, CodeVariant variant);
WeightMatrixSet build_weight_matrices(const CodeSpec& spec);
CdaCode build_code(int n, CodeVariant variant);

// Code matrix for the length-n^2 data vector d (index u*n + v), evaluated
// directly from the construction formula. This is the production path.
Eigen::MatrixXcd encode(const CodeSpec& spec, const Eigen::VectorXcd& d);

// Same code matrix via sum_i d[i] * matrices[i]. Kept as an independent
// route for cross-validation against encode().
Eigen::MatrixXcd encode_by_weights(const CdaCode& code, const Eigen::VectorXcd& d);

// Effective V-BLAST channel of the coded system: the (N_r*n) x n^2 matrix
// whose i-th column is (I (x) h_c) vec(matrices[i]), so that
// vec(h_c * encode(d)) == linearize(code, h_c) * d for every d.
// h_c may be rectangular (N_r x n).
Eigen::MatrixXcd linearize(const CdaCode& code, const Eigen::MatrixXcd& h_c);

// Column-major vectorization.
inline Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

}  // namespace stbcbp
