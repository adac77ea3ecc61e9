#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nsg/system.hpp"
#include "nsg/walnut.hpp"

namespace nsg {

/// Column-major complex matrix (Eigen default storage).
using DenseMatrix = Eigen::MatrixXcd;

/// Largest L the dense routines accept unless a caller raises the cap.
constexpr Index kOracleMaxLength = 2048;

/// L x sum(M_n); column offset(n) + m holds g_{m,n}, windows in system order.
DenseMatrix dense_synthesis(const NsgSystem& s, Index max_length = kOracleMaxLength);
/// Adjoint of dense_synthesis.
DenseMatrix dense_analysis(const NsgSystem& s, Index max_length = kOracleMaxLength);

/// D_H D_G^*, the dense form of synthesize(H, analyze(G, .)).
DenseMatrix dense_frame_operator(const NsgSystem& G, const NsgSystem& H,
                                 Index max_length = kOracleMaxLength);
DenseMatrix dense_frame_operator(const NsgSystem& s, Index max_length = kOracleMaxLength);

struct DenseBounds {
  double A = 0.0;
  double B = 0.0;
};

/// Extreme eigenvalues of a self-adjoint matrix.
DenseBounds optimal_bounds(const DenseMatrix& S);

/// Inverse of a self-adjoint positive definite S via Cholesky; NotAFrameError
/// when S is singular to working precision.
DenseMatrix dense_inverse(const DenseMatrix& S);

/// duals[n][m] = S^{-1} g_{m,n}.
std::vector<std::vector<CVec>> dense_canonical_dual(const NsgSystem& s,
                                                    Index max_length = kOracleMaxLength);

/// Dense L x L matrix of a banded operator.
DenseMatrix to_dense(const WalnutOperator& W);

CVec to_cvec(const Eigen::VectorXcd& v);
Eigen::VectorXcd to_eigen(const CVec& v);

}  // namespace nsg
