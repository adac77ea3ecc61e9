#include "nsg/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nsg/error.hpp"

namespace nsg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Index ceil_half(Index v) { return floor_div(v + 1, 2); }

}  // namespace

bool Window::endpoint_vanishing() const {
  if (samples.empty()) return true;
  return samples.front() == Complex(0.0) && samples.back() == Complex(0.0);
}

Index NsgSystem::c(Index p) const {
  const Index N = size();
  return starts_[wrap(p, N)] + L_ * floor_div(p, N);
}

Index NsgSystem::anchor(Index p) const {
  const Index N = size();
  return window(p).offset + L_ * floor_div(p, N);
}

Complex NsgSystem::value(Index p, Index t) const {
  const Window& w = window(p);
  const Index j = t - c(p);
  if (j < 0 || j >= w.length()) return Complex(0.0);
  return w.samples[j];
}

Index NsgSystem::total_channels() const {
  Index s = 0;
  for (const auto& w : windows_) s += w.channels;
  return s;
}

bool NsgSystem::endpoint_vanishing() const {
  return std::all_of(windows_.begin(), windows_.end(),
                     [](const Window& w) { return w.endpoint_vanishing(); });
}

CVec NsgSystem::dense_window(Index n) const {
  CVec out(L_, Complex(0.0));
  const Window& w = window(n);
  for (Index j = 0; j < w.length(); ++j) out[wrap(w.offset + j, L_)] += w.samples[j];
  return out;
}

CVec NsgSystem::element(Index n, Index m) const {
  CVec out(L_, Complex(0.0));
  const Window& w = window(n);
  const Index M = w.channels;
  for (Index j = 0; j < w.length(); ++j) {
    const Index t = w.offset + j;
    const double phase = kTwoPi * static_cast<double>(wrap(m * wrap(t, M), M)) / M;
    out[wrap(t, L_)] += w.samples[j] * std::polar(1.0, phase);
  }
  return out;
}

NsgSystem build_system(Index L, std::vector<Window> windows, const BuildOptions& opts) {
  if (L < 1) throw ParameterError("signal length must be positive");
  if (windows.empty()) throw ParameterError("system needs at least one window");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Window& w = windows[i];
    std::ostringstream where;
    where << "window " << i << ": ";
    if (w.channels < 1) throw ParameterError(where.str() + "channel count must be positive");
    if (w.length() < 1) throw ParameterError(where.str() + "support must be nonempty");
    if (w.length() > L) throw ParameterError(where.str() + "support longer than L");
    for (const auto& s : w.samples) {
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw ParameterError(where.str() + "non-finite sample");
      }
    }
  }

  const Index N = static_cast<Index>(windows.size());
  std::vector<Index> starts(N);
  starts[0] = wrap(windows[0].offset, L);
  bool cyclic = true;
  for (Index n = 1; n < N; ++n) {
    starts[n] = starts[0] + wrap(windows[n].offset - windows[0].offset, L);
    if (starts[n] <= starts[n - 1]) cyclic = false;
  }
  if (!cyclic) {
    if (!opts.allow_reorder) {
      throw ParameterError("window starts are not cyclically increasing");
    }
    std::stable_sort(windows.begin(), windows.end(), [L](const Window& a, const Window& b) {
      return wrap(a.offset, L) < wrap(b.offset, L);
    });
    for (Index n = 0; n < N; ++n) {
      starts[n] = wrap(windows[n].offset, L);
      if (n > 0 && starts[n] == starts[n - 1]) {
        throw ParameterError("two windows share the start " + std::to_string(starts[n]));
      }
    }
  }

  if (opts.require_coverage) {
    std::vector<char> covered(L, 0);
    for (const auto& w : windows) {
      for (Index j = 0; j < w.length(); ++j) covered[wrap(w.offset + j, L)] = 1;
    }
    const auto it = std::find(covered.begin(), covered.end(), 0);
    if (it != covered.end()) {
      const Index gap = it - covered.begin();
      throw CompletenessError("sample " + std::to_string(gap) + " is not covered by any window",
                              gap);
    }
  }

  NsgSystem sys;
  sys.L_ = L;
  sys.windows_ = std::move(windows);
  sys.starts_ = std::move(starts);
  return sys;
}

bool same_parameters(const NsgSystem& a, const NsgSystem& b) {
  if (a.L() != b.L() || a.size() != b.size()) return false;
  for (Index n = 0; n < a.size(); ++n) {
    if (a.M(n) != b.M(n)) return false;
  }
  return true;
}

void require_paired(const NsgSystem& a, const NsgSystem& b) {
  if (a.L() != b.L()) {
    throw PairingError("systems have different lengths " + std::to_string(a.L()) + " and " +
                       std::to_string(b.L()));
  }
  if (!same_parameters(a, b)) throw PairingError("systems have different channel sequences");
}

RegimeReport classify(const NsgSystem& s) {
  RegimeReport r;
  const Index N = s.size();
  const Index L = s.L();

  r.painless = true;
  for (Index n = 0; n < N; ++n) r.painless = r.painless && s.M(n) >= s.len(n);

  bool structured = true;
  bool cor = true;
  r.epsilon = std::numeric_limits<Index>::max();
  r.C = std::numeric_limits<Index>::min();
  Index sum_m = 0;
  Index max_plus = 0;
  for (Index n = 0; n < N; ++n) {
    WindowRegime w;
    w.n = n;
    const Index width = s.d(n) - s.c(n);
    w.order_ok = s.d(n - 1) <= s.c(n + 1);
    w.half_ok = 2 * s.M(n) > width;
    w.cor43_ok = s.M(n) + s.M(n - 1) > s.d(n) - s.c(n - 1);
    w.epsilon = s.M(n) - std::max({ceil_half(width), s.c(n + 1) - s.c(n), s.d(n) - s.d(n - 1)});
    structured = structured && w.order_ok && w.half_ok;
    cor = cor && w.cor43_ok;
    r.epsilon = std::min(r.epsilon, w.epsilon);
    r.C = std::max(r.C, width - s.M(n));
    sum_m += s.M(n);
    max_plus = std::max(max_plus, std::max<Index>(0, width - s.M(n) + 1));
    if (s.c(n) == s.d(n - 2)) r.degenerate_touching = true;

    std::ostringstream msg;
    if (!w.order_ok) msg << "window " << n << ": d_{n-1} > c_{n+1}; ";
    if (!w.half_ok) msg << "window " << n << ": 2 M_n <= d_n - c_n; ";
    if (w.epsilon < 1) msg << "window " << n << ": margin " << w.epsilon << " < 1; ";
    if (!w.cor43_ok) msg << "window " << n << ": M_n + M_{n-1} <= d_n - c_{n-1}; ";
    if (!msg.str().empty()) r.violations.push_back(msg.str());
    r.windows.push_back(w);
  }
  r.thm41 = r.painless || (structured && r.epsilon >= 1);
  r.cor43 = r.thm41 && cor;
  r.circular_ok = sum_m >= L + max_plus;
  r.circular_equality = sum_m == L + max_plus;
  r.endpoint_vanishing = s.endpoint_vanishing();

  std::vector<Index> count(L, 0);
  for (const auto& w : s.windows()) {
    for (Index j = 0; j < w.length(); ++j) ++count[wrap(w.offset + j, L)];
  }
  r.max_overlap = *std::max_element(count.begin(), count.end());
  return r;
}

RVec painless_diagonal(const NsgSystem& s) {
  RVec out(s.L(), 0.0);
  for (const auto& w : s.windows()) {
    for (Index j = 0; j < w.length(); ++j) {
      out[wrap(w.offset + j, s.L())] += static_cast<double>(w.channels) * std::norm(w.samples[j]);
    }
  }
  return out;
}

BesselCheck necessary_bessel_check(const NsgSystem& s, double B) {
  if (!(B > 0.0)) throw ParameterError("Bessel bound must be positive");
  const RVec diag = painless_diagonal(s);
  const auto it = std::max_element(diag.begin(), diag.end());
  BesselCheck out;
  out.max_value = *it;
  out.witness = it - diag.begin();
  out.pass = out.max_value <= B + 1e-12;
  return out;
}

NsgSystem gabor_system(const CVec& g, Index c, Index a, Index M, Index L) {
  if (a < 1 || L < 1) throw ParameterError("translation step and length must be positive");
  if (L % a != 0) {
    throw LatticeError("translation step " + std::to_string(a) + " does not divide L = " +
                       std::to_string(L));
  }
  if (static_cast<Index>(g.size()) > L) throw ParameterError("window longer than L");
  std::vector<Window> ws;
  const Index N = L / a;
  ws.reserve(N);
  for (Index n = 0; n < N; ++n) ws.push_back(Window{c + n * a, M, g});
  return build_system(L, std::move(ws));
}

namespace windows {

CVec box(Index length) {
  if (length < 1) throw ParameterError("window length must be positive");
  return CVec(length, Complex(1.0));
}

CVec triangle(Index length) {
  if (length < 1) throw ParameterError("window length must be positive");
  if (length < 3) return box(length);
  CVec out(length);
  const double half = 0.5 * static_cast<double>(length - 1);
  for (Index j = 0; j < length; ++j) out[j] = 1.0 - std::abs(static_cast<double>(j) - half) / half;
  return out;
}

CVec hann(Index length) {
  if (length < 1) throw ParameterError("window length must be positive");
  if (length < 3) return box(length);
  CVec out(length);
  for (Index j = 0; j < length; ++j) {
    out[j] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(length - 1));
  }
  return out;
}

CVec generate(const std::string& name, Index length) {
  if (name == "box") return box(length);
  if (name == "triangle") return triangle(length);
  if (name == "hann") return hann(length);
  throw ParameterError("unknown window generator '" + name + "'");
}

}  // namespace windows

}  // namespace nsg
