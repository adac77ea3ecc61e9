#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace nsg::testing {

namespace {

Index uniform(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

Complex random_sample(Rng& rng, bool complex_valued) {
  std::uniform_real_distribution<double> mag(0.3, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  return complex_valued ? std::polar(mag(rng), ph(rng)) : Complex(mag(rng));
}

/// Segment lengths in [lo, hi] summing to L exactly.
std::vector<Index> partition(Rng& rng, Index L, Index lo, Index hi) {
  std::vector<Index> seg;
  Index left = L;
  while (left > 0) {
    Index s = uniform(rng, lo, hi);
    if (left - s < lo) s = left;
    seg.push_back(s);
    left -= s;
  }
  return seg;
}

}  // namespace

Signal random_signal(Rng& rng, Index L) {
  std::normal_distribution<double> d;
  Signal f(L);
  for (auto& z : f) z = Complex(d(rng), d(rng));
  return f;
}

Coefficients random_coefficients(Rng& rng, const NsgSystem& s) {
  std::normal_distribution<double> d;
  Coefficients c = zero_coefficients(s);
  for (auto& row : c) {
    for (auto& z : row) z = Complex(d(rng), d(rng));
  }
  return c;
}

NsgSystem box_pair() {
  return build_system(8, {Window{0, 4, windows::box(4)}, Window{4, 4, windows::box(4)}});
}

NsgSystem lattice_example() { return gabor_system(windows::triangle(13), -6, 7, 10, 210); }

NsgSystem random_painless(Rng& rng, Index L) {
  const auto seg = partition(rng, L, 2, 12);
  std::vector<Window> ws;
  Index start = uniform(rng, 0, L - 1);
  Index prev = seg.back();
  for (const Index s : seg) {
    // Keep starts distinct: the left extension stays below the previous segment.
    const Index left = uniform(rng, 0, std::min<Index>(3, prev - 1));
    prev = s;
    const Index len = std::min(L, s + left);
    Window w;
    w.offset = start - left;
    w.channels = len + uniform(rng, 0, 3);
    for (Index j = 0; j < len; ++j) w.samples.push_back(random_sample(rng, true));
    ws.push_back(std::move(w));
    start += s;
  }
  return build_system(L, std::move(ws));
}

NsgSystem random_mixed(Rng& rng, Index max_L) {
  const Index L = uniform(rng, 16, max_L);
  const auto seg = partition(rng, L, 3, 16);
  std::vector<Window> ws;
  Index start = uniform(rng, 0, L - 1);
  Index prev = seg.back();
  for (const Index s : seg) {
    const Index left = uniform(rng, 0, std::min<Index>(6, prev - 1));
    prev = s;
    const Index right = uniform(rng, 0, 24);
    const Index len = std::min(L, s + left + right);
    Window w;
    w.offset = start - left;
    w.channels = uniform(rng, 2, 2 * len);
    for (Index j = 0; j < len; ++j) w.samples.push_back(random_sample(rng, true));
    ws.push_back(std::move(w));
    start += s;
  }
  return build_system(L, std::move(ws));
}

NsgSystem random_structured(Rng& rng, const StructuredOptions& o) {
  const Index target = uniform(rng, std::max<Index>(3 * o.max_gap, o.max_L / 3), o.max_L);
  std::vector<Index> gap;
  Index L = 0;
  while (L + o.max_gap <= target || gap.size() < 3) {
    gap.push_back(uniform(rng, o.min_gap, o.max_gap));
    L += gap.back();
  }
  const Index N = static_cast<Index>(gap.size());
  auto G = [&](Index n) { return gap[wrap(n, N)]; };

  std::vector<Index> c(N), len(N), M(N);
  const Index origin = uniform(rng, -L, L);
  for (Index n = 0, acc = origin; n < N; ++n) {
    c[n] = acc;
    acc += gap[n];
  }
  for (Index n = 0; n < N; ++n) len[n] = uniform(rng, G(n) + 2, G(n) + G(n + 1) + 1);
  auto Len = [&](Index n) { return len[wrap(n, N)]; };
  for (Index n = 0; n < N; ++n) {
    const Index rise = G(n - 1) + Len(n) - Len(n - 1);  // d_n - d_{n-1}
    M[n] = std::max({(Len(n) - 1 + 1) / 2, G(n), rise}) + uniform(rng, 1, 3);
  }
  if (o.cor43) {
    for (int pass = 0; pass < 4; ++pass) {
      for (Index n = 0; n < N; ++n) {
        // d_n - c_{n-1} = gap_{n-1} + len_n - 1
        const Index need = G(n - 1) + Len(n) - 1;
        while (M[n] + M[wrap(n - 1, N)] <= need) ++M[n];
      }
    }
  }
  if (o.uniform_channels) {
    const Index top = *std::max_element(M.begin(), M.end());
    std::fill(M.begin(), M.end(), top);
  }

  std::vector<Window> ws;
  for (Index n = 0; n < N; ++n) {
    Window w;
    w.offset = c[n];
    w.channels = M[n];
    w.samples.assign(len[n], Complex(0.0));
    for (Index j = 1; j + 1 < len[n]; ++j) w.samples[j] = random_sample(rng, o.complex_samples);
    ws.push_back(std::move(w));
  }
  return build_system(L, std::move(ws));
}

NsgSystem hann_lattice() { return gabor_system(windows::hann(13), 0, 7, 10, 210); }

Violation existence_violation(const std::string& condition, Index window, bool run) {
  const NsgSystem base = hann_lattice();
  std::vector<Window> ws = base.windows();
  auto zero = [&](Index n, Index j) { ws[wrap(n, 30)].samples[j] = 0.0; };
  Index local = 0;
  // Forced zeros of a window sit where its translate by +-10 is nonzero:
  // local 1..2 (b.ii) and 11 (b.iii) with these hann samples.
  if (condition == "b.i" && run) {
    for (Index j = 3; j <= 6; ++j) zero(window, j);
    for (Index j = 10; j <= 12; ++j) zero(window - 1, j);
    local = 3;
  } else if (condition == "b.i") {
    zero(window, 6);
    local = 6;
  } else if (condition == "b.ii") {
    zero(window - 1, 8);
    local = 1;
  } else if (condition == "b.iii") {
    zero(window + 1, 4);
    local = 11;
  } else {
    throw ParameterError("unknown existence condition " + condition);
  }
  return {build_system(210, std::move(ws)), condition, wrap(7 * window + local, 210)};
}

double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double norm2(const CVec& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace nsg::testing
