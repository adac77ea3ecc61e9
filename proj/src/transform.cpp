#include "nsg/transform.hpp"

#include <string>

#include "fft.hpp"
#include "nsg/error.hpp"

namespace nsg {

namespace {

void check_signal(const NsgSystem& s, const Signal& f) {
  if (static_cast<Index>(f.size()) != s.L()) {
    throw DimensionError("signal has length " + std::to_string(f.size()) + ", system expects " +
                         std::to_string(s.L()));
  }
}

void check_coefficients(const NsgSystem& s, const Coefficients& c) {
  if (static_cast<Index>(c.size()) != s.size()) {
    throw DimensionError("coefficients have " + std::to_string(c.size()) + " rows, system has " +
                         std::to_string(s.size()) + " windows");
  }
  for (Index n = 0; n < s.size(); ++n) {
    if (static_cast<Index>(c[n].size()) != s.M(n)) {
      throw DimensionError("coefficient row " + std::to_string(n) + " has length " +
                           std::to_string(c[n].size()) + ", expected " + std::to_string(s.M(n)));
    }
  }
}

}  // namespace

Coefficients zero_coefficients(const NsgSystem& s) {
  Coefficients c(s.size());
  for (Index n = 0; n < s.size(); ++n) c[n].assign(s.M(n), Complex(0.0));
  return c;
}

Coefficients analyze(const NsgSystem& s, const Signal& f) {
  check_signal(s, f);
  const Index L = s.L();
  Coefficients out = zero_coefficients(s);
  for (Index n = 0; n < s.size(); ++n) {
    const Window& w = s.window(n);
    const Index M = w.channels;
    CVec& buf = out[n];
    for (Index j = 0; j < w.length(); ++j) {
      const Index t = w.offset + j;
      buf[wrap(t, M)] += f[wrap(t, L)] * std::conj(w.samples[j]);
    }
    detail::dft_forward(buf.data(), buf.data(), M);
  }
  return out;
}

Signal synthesize(const NsgSystem& s, const Coefficients& c) {
  check_coefficients(s, c);
  const Index L = s.L();
  Signal out(L, Complex(0.0));
  CVec buf;
  for (Index n = 0; n < s.size(); ++n) {
    const Window& w = s.window(n);
    const Index M = w.channels;
    buf.resize(M);
    detail::dft_backward(c[n].data(), buf.data(), M);
    for (Index j = 0; j < w.length(); ++j) {
      const Index t = w.offset + j;
      out[wrap(t, L)] += w.samples[j] * buf[wrap(t, M)];
    }
  }
  return out;
}

Signal frame_apply(const NsgSystem& G, const NsgSystem& H, const Signal& f) {
  require_paired(G, H);
  return synthesize(H, analyze(G, f));
}

}  // namespace nsg
