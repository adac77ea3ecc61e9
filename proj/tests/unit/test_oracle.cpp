#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace nsg;
using namespace nsg::testing;

TEST(DenseSynthesis, BoxPairColumnsAreOrthogonal) {
  const DenseMatrix D = dense_synthesis(box_pair());
  ASSERT_EQ(D.rows(), 8);
  ASSERT_EQ(D.cols(), 8);
  const DenseMatrix gram = D.adjoint() * D;
  EXPECT_LT((gram - 4.0 * DenseMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
  for (Index k = 0; k < 8; ++k) EXPECT_NEAR(D.col(k).norm(), 2.0, 1e-15);
}

TEST(DenseSynthesis, ColumnsAreElements) {
  Rng rng(1);
  const NsgSystem s = random_mixed(rng, 64);
  const DenseMatrix D = dense_synthesis(s);
  Index col = 0;
  for (Index n = 0; n < s.size(); ++n) {
    for (Index m = 0; m < s.M(n); ++m) {
      EXPECT_EQ(max_abs_diff(to_cvec(D.col(col++)), s.element(n, m)), 0.0);
    }
  }
  EXPECT_EQ(col, s.total_channels());
}

TEST(DenseSynthesis, AdjointConsistency) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const NsgSystem s = random_mixed(rng, 128);
    const DenseMatrix D = dense_synthesis(s);
    const DenseMatrix C = dense_analysis(s);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(s.total_channels());
    for (Index i = 0; i < c.size(); ++i) c(i) = Complex(std::sin(1.0 + i), std::cos(2.0 * i));
    const Eigen::VectorXcd f = to_eigen(random_signal(rng, s.L()));
    const Complex lhs = f.dot(D * c);  // <D c, f>
    const Complex rhs = (C * f).dot(c);  // <c, C f>
    EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(DenseSynthesis, ZeroWindowGivesZeroColumns) {
  std::vector<Window> ws{{0, 4, windows::box(4)}, {4, 3, CVec(4, Complex(0.0))}};
  const DenseMatrix D = dense_synthesis(build_system(8, ws));
  EXPECT_EQ(D.rightCols(3).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(D.leftCols(4).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DenseSynthesis, LengthCap) {
  const NsgSystem s = lattice_example();
  EXPECT_THROW(dense_synthesis(s, 100), ParameterError);
}

TEST(DenseFrameOperator, BoxPair) {
  const DenseMatrix S = dense_frame_operator(box_pair());
  EXPECT_LT((S - 4.0 * DenseMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
  const DenseBounds b = optimal_bounds(S);
  EXPECT_NEAR(b.A, 4.0, 1e-12);
  EXPECT_NEAR(b.B, 4.0, 1e-12);
  EXPECT_LT((dense_inverse(S) - 0.25 * DenseMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseFrameOperator, LatticeHasThreeEntriesPerRow) {
  const DenseMatrix S = dense_frame_operator(lattice_example());
  for (Index l = 0; l < 210; ++l) {
    int nonzero = 0;
    for (Index k = 0; k < 210; ++k) {
      if (std::abs(S(l, k)) > 1e-14) {
        ++nonzero;
        const Index dist = std::min(wrap(l - k, 210), wrap(k - l, 210));
        EXPECT_TRUE(dist == 0 || dist == 10) << l << " " << k;
      }
    }
    EXPECT_LE(nonzero, 3);
  }
}

TEST(DenseFrameOperator, InverseResidual) {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix S = dense_frame_operator(random_structured(rng));
    const DenseMatrix I = DenseMatrix::Identity(S.rows(), S.cols());
    EXPECT_LT((S * dense_inverse(S) - I).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(DenseFrameOperator, SingularIsNotAFrame) {
  std::vector<Window> ws{{0, 4, windows::box(4)}, {4, 4, CVec(4, Complex(0.0))}};
  EXPECT_THROW(dense_inverse(dense_frame_operator(build_system(8, ws))), NotAFrameError);
}

TEST(DenseCanonicalDual, PainlessDividesByDiagonal) {
  Rng rng(4);
  const NsgSystem s = random_painless(rng, 64);
  const auto duals = dense_canonical_dual(s);
  const RVec diag = painless_diagonal(s);
  for (Index n = 0; n < s.size(); ++n) {
    for (Index m = 0; m < s.M(n); ++m) {
      CVec want = s.element(n, m);
      for (Index l = 0; l < s.L(); ++l) want[l] /= diag[l];
      EXPECT_LT(max_abs_diff(duals[n][m], want), 1e-12);
    }
  }
}

TEST(DenseCanonicalDual, LatticeSupportMatchesPrediction) {
  const NsgSystem s = lattice_example();
  const auto duals = dense_canonical_dual(s);
  for (Index n = 0; n < s.size(); ++n) {
    const IntervalSet pred = predicted_dual_support(s, n);
    for (Index l = 0; l < 210; ++l) {
      const double v = std::abs(duals[n][0][l]);
      if (pred.contains(l)) continue;
      EXPECT_LE(v, 1e-9) << n << " " << l;
    }
    // Every predicted piece is actually occupied.
    for (const auto& piece : pred.intervals()) {
      double peak = 0.0;
      for (Index i = 0; i < piece.length(); ++i) {
        peak = std::max(peak, std::abs(duals[n][0][wrap(piece.start() + i, 210)]));
      }
      EXPECT_GT(peak, 1e-6);
    }
  }
}

TEST(DenseCanonicalDual, UniformChannelsCommuteWithModulation) {
  const NsgSystem systems[] = {
      lattice_example(),
      gabor_system(windows::hann(13), -6, 7, 10, 70),
      gabor_system(windows::triangle(15), 3, 7, 14, 210),
  };
  for (const NsgSystem& s : systems) {
    const Index M = s.M(0);
    const Index L = s.L();
    ASSERT_EQ(L % M, 0);
    const auto duals = dense_canonical_dual(s);
    for (Index n = 0; n < s.size(); n += 3) {
      for (Index m = 1; m < M; ++m) {
        CVec want = duals[n][0];
        for (Index l = 0; l < L; ++l) {
          want[l] *= std::polar(1.0, 2.0 * M_PI * static_cast<double>(wrap(m * l, M)) / M);
        }
        EXPECT_LT(max_abs_diff(duals[n][m], want), 1e-12);
      }
    }
  }
}

TEST(Oracle, AgreesWithFastPaths) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const NsgSystem s = random_structured(rng);
    const Signal f = random_signal(rng, s.L());
    const DenseMatrix S = dense_frame_operator(s);
    EXPECT_LT(max_abs_diff(to_cvec(S * to_eigen(f)), frame_apply(s, s, f)), 1e-11);
    const FrameBounds fb = frame_bounds(s);
    const NeumannResult r = neumann_inverse(assemble(s, s), fb.A, fb.B);
    EXPECT_LT(max_abs_diff(to_cvec(dense_inverse(S) * to_eigen(f)), r.inverse.apply(f)), 1e-11);
  }
}

TEST(Oracle, ToDenseMatchesApply) {
  WalnutOperator W(6);
  W.band(0) = CVec{1, 2, 3, 4, 5, 6};
  W.band(2) = CVec{Complex(0, 1), 0, 0, 0, 0, 1};
  const DenseMatrix D = to_dense(W);
  Signal e(6, Complex(0.0));
  e[4] = 1.0;
  EXPECT_EQ(to_cvec(D * to_eigen(e)), W.apply(e));
  EXPECT_EQ(D(0, 4), Complex(0, 1));
}
