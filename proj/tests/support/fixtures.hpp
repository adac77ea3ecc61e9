#pragma once

#include <random>
#include <string>

#include "nsg/nsg.hpp"

namespace nsg::testing {

using Rng = std::mt19937_64;

Signal random_signal(Rng& rng, Index L);
Coefficients random_coefficients(Rng& rng, const NsgSystem& s);

/// Two boxes of length 4 on Z_8 with 4 channels each.
NsgSystem box_pair();

/// Triangle of length 13 at offsets 7n - 6, 10 channels, L = 210.
NsgSystem lattice_example();

/// Windows no longer than their channel counts; every sample covered.
NsgSystem random_painless(Rng& rng, Index L);

/// Arbitrary covering windows with complex samples and unconstrained channels.
NsgSystem random_mixed(Rng& rng, Index max_L);

struct StructuredOptions {
  Index min_gap = 4;
  Index max_gap = 9;
  Index max_L = 256;
  bool uniform_channels = false;
  bool complex_samples = true;
  bool cor43 = false;
};

/// Endpoint-vanishing windows with d_{n-1} <= c_{n+1} and margin >= 1;
/// with `cor43` the channel counts also satisfy M_n + M_{n-1} > d_n - c_{n-1}.
NsgSystem random_structured(Rng& rng, const StructuredOptions& opts = {});

/// Thirty hann windows of length 13 at offsets 7n with 10 channels, L = 210.
NsgSystem hann_lattice();

/// Hann lattice with samples zeroed so that one position admits no window.
struct Violation {
  NsgSystem system;
  std::string condition;  // "b.i", "b.ii" or "b.iii"
  Index position = 0;     // sample in [0, L) that admits no window
};

/// `run` zeroes a stretch of `window` and the tail of its predecessor instead
/// of single samples (condition "b.i" only).
Violation existence_violation(const std::string& condition, Index window, bool run = false);

double max_abs_diff(const CVec& a, const CVec& b);
double norm2(const CVec& a);

}  // namespace nsg::testing
