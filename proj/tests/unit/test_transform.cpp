#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace nsg;
using namespace nsg::testing;

namespace {

/// Inner products <f, g_{m,n}> straight from the element vectors.
Coefficients direct_analysis(const NsgSystem& s, const Signal& f) {
  Coefficients c = zero_coefficients(s);
  for (Index n = 0; n < s.size(); ++n) {
    for (Index m = 0; m < s.M(n); ++m) {
      const CVec g = s.element(n, m);
      Complex acc(0.0);
      for (Index l = 0; l < s.L(); ++l) acc += f[l] * std::conj(g[l]);
      c[n][m] = acc;
    }
  }
  return c;
}

double max_coeff_diff(const Coefficients& a, const Coefficients& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, max_abs_diff(a[n], b[n]));
  return m;
}

Complex inner(const CVec& a, const CVec& b) {
  Complex s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

Complex inner(const Coefficients& a, const Coefficients& b) {
  Complex s(0.0);
  for (std::size_t n = 0; n < a.size(); ++n) s += inner(a[n], b[n]);
  return s;
}

}  // namespace

TEST(Analyze, IndicatorOnBoxPair) {
  const NsgSystem s = box_pair();
  Signal f(8, Complex(0.0));
  for (Index l = 0; l < 4; ++l) f[l] = 1.0;
  const Coefficients c = analyze(s, f);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(std::abs(c[0][0] - Complex(4.0)), 0.0, 1e-15);
  for (Index m = 1; m < 4; ++m) EXPECT_LT(std::abs(c[0][m]), 1e-15);
  for (Index m = 0; m < 4; ++m) EXPECT_LT(std::abs(c[1][m]), 1e-15);
}

TEST(Analyze, ZeroSignal) {
  Rng rng(1);
  const NsgSystem s = random_mixed(rng, 128);
  for (const auto& row : analyze(s, Signal(s.L(), Complex(0.0)))) {
    for (const auto& z : row) EXPECT_EQ(z, Complex(0.0));
  }
}

TEST(Analyze, MatchesInnerProducts) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const NsgSystem s = random_mixed(rng, 256);
    const Signal f = random_signal(rng, s.L());
    EXPECT_LT(max_coeff_diff(analyze(s, f), direct_analysis(s, f)), 1e-12);
  }
}

TEST(Analyze, ElementAgainstDenseOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const NsgSystem s = random_mixed(rng, 128);
    const Index n0 = std::uniform_int_distribution<Index>(0, s.size() - 1)(rng);
    const Index m0 = std::uniform_int_distribution<Index>(0, s.M(n0) - 1)(rng);
    const Signal f = s.element(n0, m0);
    const Coefficients c = analyze(s, f);
    const Eigen::VectorXcd want = dense_analysis(s) * to_eigen(f);
    Index row = 0;
    double err = 0.0;
    for (Index n = 0; n < s.size(); ++n) {
      for (Index m = 0; m < s.M(n); ++m) err = std::max(err, std::abs(c[n][m] - want(row++)));
    }
    EXPECT_LT(err, 1e-12);
    EXPECT_NEAR(c[n0][m0].real(), norm2(f) * norm2(f), 1e-10);
  }
}

TEST(Analyze, LengthMismatch) {
  EXPECT_THROW(analyze(box_pair(), Signal(7)), DimensionError);
}

TEST(Synthesize, TightPainlessRoundTrip) {
  Rng rng(4);
  const NsgSystem s = box_pair();
  const Signal f = random_signal(rng, 8);
  Signal g = synthesize(s, analyze(s, f));
  for (auto& z : g) z /= 4.0;
  EXPECT_LT(max_abs_diff(g, f), 1e-14);
}

TEST(Synthesize, UnitCoefficientPlacesWindow) {
  Rng rng(5);
  const NsgSystem s = random_mixed(rng, 128);
  Coefficients c = zero_coefficients(s);
  c[0][0] = 1.0;
  EXPECT_LT(max_abs_diff(synthesize(s, c), s.dense_window(0)), 1e-15);
}

TEST(Synthesize, MatchesDenseOracle) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const NsgSystem s = random_mixed(rng, 256);
    const Coefficients c = random_coefficients(rng, s);
    Eigen::VectorXcd flat(s.total_channels());
    Index row = 0;
    for (const auto& r : c) {
      for (const auto& z : r) flat(row++) = z;
    }
    const CVec want = to_cvec(dense_synthesis(s) * flat);
    EXPECT_LT(max_abs_diff(synthesize(s, c), want), 1e-12);
  }
}

TEST(Synthesize, ShapeMismatch) {
  const NsgSystem s = box_pair();
  Coefficients c = zero_coefficients(s);
  c[1].pop_back();
  EXPECT_THROW(synthesize(s, c), DimensionError);
  c.pop_back();
  EXPECT_THROW(synthesize(s, c), DimensionError);
}

TEST(FrameApply, BoxPairScalesByFour) {
  Rng rng(7);
  const Signal f = random_signal(rng, 8);
  const Signal g = frame_apply(box_pair(), box_pair(), f);
  for (Index l = 0; l < 8; ++l) EXPECT_LT(std::abs(g[l] - 4.0 * f[l]), 1e-14);
  for (const auto& z : frame_apply(box_pair(), box_pair(), Signal(8, Complex(0.0)))) {
    EXPECT_EQ(z, Complex(0.0));
  }
}

TEST(FrameApply, MatchesWalnutForRandomPairs) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const NsgSystem G = random_mixed(rng, 200);
    std::vector<Window> hw = G.windows();
    for (auto& w : hw) {
      for (auto& z : w.samples) z *= Complex(0.5, -0.25);
      w.samples.back() = 0.7;
    }
    const NsgSystem H = build_system(G.L(), hw);
    const Signal f = random_signal(rng, G.L());
    EXPECT_LT(max_abs_diff(frame_apply(G, H, f), assemble(G, H).apply(f)), 1e-12);
  }
}

TEST(FrameApply, Pairing) {
  std::vector<Window> ws = box_pair().windows();
  ws[0].channels = 3;
  EXPECT_THROW(frame_apply(box_pair(), build_system(8, ws), Signal(8)), PairingError);
}

TEST(TransformProperties, Adjointness) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const NsgSystem s = random_mixed(rng, 256);
    const Signal f = random_signal(rng, s.L());
    const Coefficients c = random_coefficients(rng, s);
    const Complex lhs = inner(analyze(s, f), c);
    const Complex rhs = inner(f, synthesize(s, c));
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(TransformProperties, FrameInequality) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const NsgSystem s = trial % 2 ? random_painless(rng, 128) : random_structured(rng);
    const DenseBounds b = optimal_bounds(dense_frame_operator(s));
    for (int k = 0; k < 5; ++k) {
      const Signal f = random_signal(rng, s.L());
      double energy = 0.0;
      for (const auto& row : analyze(s, f)) energy += std::pow(norm2(row), 2);
      const double nf = std::pow(norm2(f), 2);
      EXPECT_GE(energy, b.A * nf * (1 - 1e-12));
      EXPECT_LE(energy, b.B * nf * (1 + 1e-12));
    }
  }
}

TEST(TransformProperties, FrameOperatorSelfAdjointPositive) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const NsgSystem s = random_mixed(rng, 256);
    const Signal f1 = random_signal(rng, s.L());
    const Signal f2 = random_signal(rng, s.L());
    const Signal s1 = frame_apply(s, s, f1);
    const Signal s2 = frame_apply(s, s, f2);
    const Complex q = inner(s1, f1);
    EXPECT_GE(q.real(), 0.0);
    EXPECT_LT(std::abs(q.imag()), 1e-12 * std::max(1.0, q.real()));
    const Complex a = inner(s1, f2);
    EXPECT_LT(std::abs(a - inner(f1, s2)), 1e-12 * std::max(1.0, std::abs(a)));
  }
}
