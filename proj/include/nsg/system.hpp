#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsg/types.hpp"

namespace nsg {

/// One window g_n: samples over its support starting at `offset`, and the
/// number of frequency channels M_n.
///
/// `offset` is an unwrapped anchor: the support occupies offset, offset+1, ...
/// reduced mod L, and the modulation phase of element g_{m,n} at support
/// sample j is exp(2 pi i m (offset + j) / M_n). Anchors that differ by a
/// multiple of L select the same support but, when M_n does not divide L,
/// different elements.
struct Window {
  Index offset = 0;
  Index channels = 1;
  CVec samples;

  Index length() const { return static_cast<Index>(samples.size()); }
  bool endpoint_vanishing() const;
};

struct BuildOptions {
  /// Reject systems that leave a sample of Z_L uncovered.
  bool require_coverage = true;
  /// Sort windows by canonical start when the given order is not cyclic.
  bool allow_reorder = true;
};

/// Immutable NSG system on C^L.
///
/// Window n is addressed on the line through virtual indices p in Z: window
/// p mod N translated by L * floor(p / N). Virtual starts c(p) increase
/// strictly in p, which is the coordinate system all interval arithmetic
/// uses.
class NsgSystem {
 public:
  Index L() const { return L_; }
  Index size() const { return static_cast<Index>(windows_.size()); }
  const std::vector<Window>& windows() const { return windows_; }
  const Window& window(Index p) const { return windows_[wrap(p, size())]; }

  Index c(Index p) const;
  Index d(Index p) const { return c(p) + window(p).length() - 1; }
  Index M(Index p) const { return window(p).channels; }
  Index len(Index p) const { return window(p).length(); }

  /// Unwrapped anchor of virtual window p (phase origin).
  Index anchor(Index p) const;

  /// Sample of virtual window p at line position t; zero off the support.
  Complex value(Index p, Index t) const;

  Index total_channels() const;
  bool endpoint_vanishing() const;

  /// Window n as a length-L vector.
  CVec dense_window(Index n) const;
  /// Element g_{m,n} as a length-L vector.
  CVec element(Index n, Index m) const;

 private:
  friend NsgSystem build_system(Index, std::vector<Window>, const BuildOptions&);

  Index L_ = 0;
  std::vector<Window> windows_;
  std::vector<Index> starts_;  // c(0..N-1), strictly increasing, c(N-1) < c(0) + L
};

NsgSystem build_system(Index L, std::vector<Window> windows, const BuildOptions& opts = {});

/// True when both systems share L and, index by index, the channel counts.
bool same_parameters(const NsgSystem& a, const NsgSystem& b);
/// Throws PairingError unless same_parameters holds.
void require_paired(const NsgSystem& a, const NsgSystem& b);

struct WindowRegime {
  Index n = 0;
  bool order_ok = true;   // d(n-1) <= c(n+1)
  bool half_ok = true;    // 2 M_n > d_n - c_n
  bool cor43_ok = true;   // M_n + M_{n-1} > d_n - c_{n-1}
  Index epsilon = 0;      // M_n - max{ceil((d_n - c_n)/2), c_{n+1} - c_n, d_n - d_{n-1}}
};

struct RegimeReport {
  bool painless = false;
  bool thm41 = false;
  bool cor43 = false;
  bool circular_ok = false;
  bool circular_equality = false;
  bool endpoint_vanishing = false;
  bool degenerate_touching = false;
  Index epsilon = 0;
  Index C = 0;
  Index max_overlap = 0;  // largest number of supports covering one sample
  std::vector<WindowRegime> windows;
  std::vector<std::string> violations;
};

RegimeReport classify(const NsgSystem& system);

/// l -> sum_n M_n |g_n[l]|^2.
RVec painless_diagonal(const NsgSystem& system);

struct BesselCheck {
  bool pass = false;
  double max_value = 0.0;
  Index witness = -1;  // position of the maximum
};

BesselCheck necessary_bessel_check(const NsgSystem& system, double B);

/// Regular Gabor system: N = L / a translates of g starting at `c`, each with
/// M channels.
NsgSystem gabor_system(const CVec& g, Index c, Index a, Index M, Index L);

namespace windows {
CVec box(Index length);
/// Linear ramp, zero at both endpoints, peak 1 at the centre.
CVec triangle(Index length);
CVec hann(Index length);
/// Named generator: "box", "triangle" or "hann".
CVec generate(const std::string& name, Index length);
}  // namespace windows

}  // namespace nsg
