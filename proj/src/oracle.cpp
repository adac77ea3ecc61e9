#include "nsg/oracle.hpp"

#include <sstream>

#include <Eigen/Eigenvalues>

#include "nsg/error.hpp"

namespace nsg {

namespace {

void check_cap(const NsgSystem& s, Index max_length) {
  if (s.L() > max_length) {
    throw ParameterError("dense oracle capped at L = " + std::to_string(max_length));
  }
}

}  // namespace

CVec to_cvec(const Eigen::VectorXcd& v) { return CVec(v.data(), v.data() + v.size()); }

Eigen::VectorXcd to_eigen(const CVec& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

DenseMatrix dense_synthesis(const NsgSystem& s, Index max_length) {
  check_cap(s, max_length);
  DenseMatrix D = DenseMatrix::Zero(s.L(), s.total_channels());
  Index col = 0;
  for (Index n = 0; n < s.size(); ++n) {
    for (Index m = 0; m < s.M(n); ++m, ++col) D.col(col) = to_eigen(s.element(n, m));
  }
  return D;
}

DenseMatrix dense_analysis(const NsgSystem& s, Index max_length) {
  return dense_synthesis(s, max_length).adjoint();
}

DenseMatrix dense_frame_operator(const NsgSystem& G, const NsgSystem& H, Index max_length) {
  require_paired(G, H);
  return dense_synthesis(H, max_length) * dense_synthesis(G, max_length).adjoint();
}

DenseMatrix dense_frame_operator(const NsgSystem& s, Index max_length) {
  const DenseMatrix D = dense_synthesis(s, max_length);
  return D * D.adjoint();
}

DenseBounds optimal_bounds(const DenseMatrix& S) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(S, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

DenseMatrix dense_inverse(const DenseMatrix& S) {
  const DenseBounds b = optimal_bounds(S);
  if (!(b.B > 0.0) || b.A <= 1e-10 * b.B) {
    std::ostringstream msg;
    msg << "frame operator is singular: smallest eigenvalue " << b.A;
    throw NotAFrameError(msg.str(), b.A);
  }
  Eigen::LLT<DenseMatrix> llt(S);
  if (llt.info() != Eigen::Success) throw NotAFrameError("Cholesky factorization failed", b.A);
  return llt.solve(DenseMatrix::Identity(S.rows(), S.cols()));
}

std::vector<std::vector<CVec>> dense_canonical_dual(const NsgSystem& s, Index max_length) {
  check_cap(s, max_length);
  const DenseMatrix Sinv = dense_inverse(dense_frame_operator(s, max_length));
  std::vector<std::vector<CVec>> out(s.size());
  for (Index n = 0; n < s.size(); ++n) {
    out[n].reserve(s.M(n));
    for (Index m = 0; m < s.M(n); ++m) out[n].push_back(to_cvec(Sinv * to_eigen(s.element(n, m))));
  }
  return out;
}

DenseMatrix to_dense(const WalnutOperator& W) {
  const Index L = W.L();
  DenseMatrix D = DenseMatrix::Zero(L, L);
  for (const auto& [x, w] : W.bands()) {
    for (Index l = 0; l < L; ++l) D(l, wrap(l - x, L)) += w[l];
  }
  return D;
}

}  // namespace nsg
