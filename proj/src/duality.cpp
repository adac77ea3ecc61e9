#include "nsg/duality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsg/interval_calculus.hpp"

namespace nsg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::size_t kMaxZeroWitnesses = 16;

Complex unit_phase(Index numer, Index M) {
  return std::polar(1.0, kTwoPi * static_cast<double>(wrap(numer, M)) / static_cast<double>(M));
}

DualityReport report_from_bands(const WalnutOperator& W) {
  const Index L = W.L();
  DualityReport rep;
  rep.offset0_residual.assign(L, Complex(-1.0));
  if (const CVec* w0 = W.find(0)) {
    for (Index l = 0; l < L; ++l) rep.offset0_residual[l] += (*w0)[l];
  }
  auto track = [&](Index x, const CVec& v) {
    double m = 0.0;
    for (Index l = 0; l < L; ++l) {
      const double a = std::abs(v[l]);
      if (a > m) m = a;
      if (a > rep.max_defect) {
        rep.max_defect = a;
        rep.worst_offset = x;
        rep.worst_position = l;
      }
    }
    rep.offset_max[x] = m;
  };
  track(0, rep.offset0_residual);
  for (const auto& [x, w] : W.bands()) {
    if (x == 0) continue;
    rep.residuals[x] = w;
    track(x, w);
  }
  return rep;
}

struct PointInfo {
  Index owner = 0;
  std::vector<Index> eligible;  // virtual window indices
  std::vector<double> value;    // sqrt(M)|g| per eligible window
  bool forced_minus = false;
  bool forced_plus = false;
  Index forced_minus_window = 0;
  Index forced_plus_window = 0;
  double best = 0.0;
};

/// Admissible windows at line position t, with forced zeros removed.
PointInfo inspect(const NsgSystem& s, Index owner, Index t) {
  PointInfo p;
  p.owner = owner;
  for (Index q = owner; q > owner - s.size(); --q) {
    if (s.d(q) < t) continue;
    const Complex g = s.value(q, t);
    const Index M = s.M(q);
    const bool fm = s.value(q, t + M) != Complex(0.0);
    const bool fp = s.value(q, t - M) != Complex(0.0);
    if (fm && !p.forced_minus) {
      p.forced_minus = true;
      p.forced_minus_window = q;
    }
    if (fp && !p.forced_plus) {
      p.forced_plus = true;
      p.forced_plus_window = q;
    }
    if (fm || fp || g == Complex(0.0)) continue;
    const double v = std::sqrt(static_cast<double>(M)) * std::abs(g);
    p.eligible.push_back(q);
    p.value.push_back(v);
    p.best = std::max(p.best, v);
  }
  return p;
}

template <typename F>
void for_each_point(const NsgSystem& s, F&& f) {
  Index owner = 0;
  for (Index t = s.c(0); t < s.c(0) + s.L(); ++t) {
    while (s.c(owner + 1) <= t) ++owner;
    f(owner, t);
  }
}

}  // namespace

DualityReport duality_defect(const NsgSystem& G, const NsgSystem& H) {
  return report_from_bands(assemble(G, H));
}

DualityReport gabor_duality_defect(const Prototype& g, const Prototype& h, Index a, Index M, Index L) {
  if (a < 1 || M < 1 || L < 1) throw ParameterError("a, M and L must be positive");
  if (L % a != 0) {
    throw LatticeError("translation step " + std::to_string(a) + " does not divide L = " +
                       std::to_string(L));
  }
  const Index lg = static_cast<Index>(g.samples.size());
  const Index lh = static_cast<Index>(h.samples.size());
  if (lg > L || lh > L) throw ParameterError("window longer than L");
  WalnutOperator W(L);
  const Index N = L / a;
  // kM = t - t' ranges over [h.offset - g.offset - lg + 1, h.offset - g.offset + lh - 1].
  const Index kmin = -floor_div(-(h.offset - g.offset - lg + 1), M);
  const Index kmax = floor_div(h.offset - g.offset + lh - 1, M);
  for (Index k = kmin; k <= kmax; ++k) {
    for (Index n = 0; n < N; ++n) {
      for (Index jh = 0; jh < lh; ++jh) {
        const Index t = h.offset + n * a + jh;
        const Index jg = t - k * M - (g.offset + n * a);
        if (jg < 0 || jg >= lg) continue;
        const Complex v = static_cast<double>(M) * h.samples[jh] * std::conj(g.samples[jg]);
        if (v == Complex(0.0)) continue;
        W.band(k * M)[wrap(t, L)] += v;
      }
    }
  }
  W.prune(0.0);
  return report_from_bands(W);
}

ExistenceReport short_support_existence(const NsgSystem& s) {
  ExistenceReport rep;
  ExistenceWitness worst_i{"b.i"}, worst_ii{"b.ii"}, worst_iii{"b.iii"};
  std::vector<ExistenceWitness> zeros;
  for_each_point(s, [&](Index owner, Index t) {
    const PointInfo p = inspect(s, owner, t);
    const Index l = wrap(t, s.L());
    auto note = [&](double& A, ExistenceWitness& w, Index window) {
      if (p.best < A) {
        A = p.best;
        w.position = l;
        w.window = wrap(window, s.size());
        w.value = p.best;
      }
    };
    if (p.forced_minus) note(rep.A_bii, worst_ii, p.forced_minus_window);
    if (p.forced_plus) note(rep.A_biii, worst_iii, p.forced_plus_window);
    if (!p.forced_minus && !p.forced_plus) note(rep.A_bi, worst_i, owner);
    if (p.best == 0.0 && zeros.size() < kMaxZeroWitnesses) {
      const std::string cond = p.forced_minus ? "b.ii" : p.forced_plus ? "b.iii" : "b.i";
      const Index win = p.forced_minus ? p.forced_minus_window
                        : p.forced_plus ? p.forced_plus_window
                                        : owner;
      zeros.push_back({cond, l, wrap(win, s.size()), 0.0});
    }
  });
  rep.A = std::min({rep.A_bi, rep.A_bii, rep.A_biii});
  if (std::isfinite(rep.A_bi)) rep.witnesses.push_back(worst_i);
  if (std::isfinite(rep.A_bii)) rep.witnesses.push_back(worst_ii);
  if (std::isfinite(rep.A_biii)) rep.witnesses.push_back(worst_iii);
  rep.witnesses.insert(rep.witnesses.end(), zeros.begin(), zeros.end());
  return rep;
}

ShortSupportDual construct_short_support_dual(const NsgSystem& s, FreeRegionRule rule) {
  const RegimeReport regime = classify(s);
  if (!regime.cor43) {
    std::string msg = "short-support duals need M_n + M_{n-1} > d_n - c_{n-1} in the structured regime:";
    for (const auto& v : regime.violations) msg += " " + v;
    throw RegimeError(msg);
  }
  ExistenceReport ex = short_support_existence(s);
  if (!ex.feasible()) {
    std::ostringstream msg;
    msg << "no dual with the same supports exists";
    for (const auto& w : ex.witnesses) {
      if (w.value == 0.0) {
        msg << ": condition " << w.condition << " fails at sample " << w.position << " (window "
            << w.window << ")";
        break;
      }
    }
    throw ExistenceError(msg.str(), ex);
  }
  const double A = ex.A;

  std::vector<Window> hw;
  hw.reserve(s.size());
  for (const auto& w : s.windows()) hw.push_back(Window{w.offset, w.channels, CVec(w.samples.size())});

  for_each_point(s, [&](Index owner, Index t) {
    const PointInfo p = inspect(s, owner, t);
    std::size_t pick = p.value.size();
    // Eligible windows are listed from the owner downwards.
    if (rule == FreeRegionRule::owner) {
      for (std::size_t i = 0; i < p.value.size() && pick == p.value.size(); ++i) {
        if (p.value[i] >= A) pick = i;
      }
    } else {
      for (std::size_t i = p.value.size(); i-- > 0 && pick == p.value.size();) {
        if (p.value[i] >= A) pick = i;
      }
    }
    if (pick == p.value.size()) {
      pick = static_cast<std::size_t>(std::max_element(p.value.begin(), p.value.end()) - p.value.begin());
    }
    const Index q = p.eligible[pick];
    const Complex g = s.value(q, t);
    hw[wrap(q, s.size())].samples[t - s.c(q)] = 1.0 / (static_cast<double>(s.M(q)) * std::conj(g));
  });

  BuildOptions opts;
  opts.require_coverage = false;
  opts.allow_reorder = false;
  ShortSupportDual out{build_system(s.L(), std::move(hw), opts), ex, {}, 0.0, 0.0, 0.0, true};
  out.defect = duality_defect(s, out.dual);
  out.a_i = out.defect.offset_max.at(0);

  for (Index n = 0; n < s.size(); ++n) {
    const Index M = s.M(n);
    const double cap = 2.0 / (A * std::sqrt(static_cast<double>(M))) + 1e-12;
    for (Index t = s.c(n); t <= s.d(n); ++t) {
      const Complex h = out.dual.value(n, t);
      if (std::abs(h) > cap) out.sup_ok = false;
      out.a_ii = std::max(out.a_ii, std::abs(h * std::conj(s.value(n, t + M))));
      out.a_iii = std::max(out.a_iii, std::abs(h * std::conj(s.value(n, t - M))));
    }
  }
  return out;
}

GaborShortSupportDual gabor_short_support_dual(const CVec& g, Index c, Index a, Index M, Index L) {
  if (a < 1 || M < 1 || L < 1) throw ParameterError("a, M and L must be positive");
  if (L % a != 0) {
    throw LatticeError("translation step " + std::to_string(a) + " does not divide L = " +
                       std::to_string(L));
  }
  const Index len = static_cast<Index>(g.size());
  if (!(2 * M > (len - 1) + a)) {
    throw RegimeError("short-support Gabor duals need 2M > (d - c) + a");
  }
  const NsgSystem sys = gabor_system(g, c, a, M, L);
  GaborShortSupportDual out{construct_short_support_dual(sys), {}, true, false, true, 0.0};
  out.h = out.result.dual.window(0).samples;
  for (Index n = 1; n < out.result.dual.size(); ++n) {
    const CVec& hn = out.result.dual.window(n).samples;
    for (Index j = 0; j < len; ++j) {
      if (std::abs(hn[j] - out.h[j]) > 1e-14) out.periodic = false;
    }
  }
  out.region_applicable = len >= 3;
  for (Index j = 0; j < len; ++j) {
    if (g[j].imag() != 0.0) out.region_applicable = false;
    if (j > 0 && j < len - 1 && !(g[j].real() > 0.0)) out.region_applicable = false;
  }
  if (out.region_applicable) {
    // supp h must lie in [d - M, c + M], i.e. sample indices [len - 1 - M, M].
    for (Index j = 0; j < len; ++j) {
      if (j < len - 1 - M || j > M) {
        out.region_max_outside = std::max(out.region_max_outside, std::abs(out.h[j]));
      }
    }
    out.region_ok = out.region_max_outside <= 1e-12;
  }
  return out;
}

CanonicalDualWindows canonical_dual_windows(const NsgSystem& s, const WalnutOperator& Sinv,
                                            double tol) {
  CanonicalDualWindows out;
  for (Index n = 0; n < s.size(); ++n) out.base.push_back(Sinv.apply(s.dense_window(n)));
  const RegimeReport regime = classify(s);
  out.asserted = regime.thm41 && regime.endpoint_vanishing;
  if (!out.asserted) return out;
  bool ok = true;
  for (Index n = 0; n < s.size(); ++n) {
    out.predicted.push_back(predicted_dual_support(s, n));
    double m = 0.0;
    for (Index l = 0; l < s.L(); ++l) {
      if (!out.predicted.back().contains(l)) m = std::max(m, std::abs(out.base[n][l]));
    }
    out.max_outside.push_back(m);
    ok = ok && m <= tol;
  }
  out.verdict = ok ? Verdict::yes : Verdict::no;
  return out;
}

Signal modulated_dual(const NsgSystem& s, Index n, Index m, const CVec& base) {
  const Index L = s.L();
  if (static_cast<Index>(base.size()) != L) throw DimensionError("base dual has wrong length");
  if (!s.endpoint_vanishing()) {
    throw RegimeError("the phase formula needs windows that vanish at both support endpoints");
  }
  const std::vector<DualPiece> pieces = predicted_dual_pieces(s, n);
  std::vector<CircularInterval> circ;
  for (const auto& p : pieces) circ.push_back(CircularInterval::from_line(L, p.region));
  for (std::size_t i = 0; i < circ.size(); ++i) {
    for (std::size_t j = i + 1; j < circ.size(); ++j) {
      const IntervalSet a(L, {circ[i]});
      const IntervalSet b(L, {circ[j]});
      if (!a.intersect(b).empty()) {
        std::ostringstream msg;
        msg << "restriction pieces " << circ[i] << " and " << circ[j] << " overlap";
        throw DisjointnessError(msg.str(), static_cast<Index>(i), static_cast<Index>(j));
      }
    }
  }

  const Index M = s.M(n);
  const Index to_phase = s.anchor(n) - s.c(n);
  Signal out(L, Complex(0.0));
  for (const auto& p : pieces) {
    Index shift = 0;
    if (p.side == Sign::minus) shift = cumulative_shift(s, n - p.k, p.k, Sign::plus);
    if (p.side == Sign::plus) shift = -cumulative_shift(s, n + p.k, p.k, Sign::minus);
    for (Index t = p.region.lo; t <= p.region.hi; ++t) {
      const Index l = wrap(t, L);
      out[l] = base[l] * unit_phase(m * wrap(t + to_phase + shift, M), M);
    }
  }
  return out;
}

NsgSystem canonical_dual_system(const NsgSystem& s, const CanonicalDualWindows& duals) {
  const Index L = s.L();
  if (static_cast<Index>(duals.base.size()) != s.size()) {
    throw DimensionError("dual window count does not match the system");
  }
  const bool structured = classify(s).thm41;
  std::vector<Window> ws;
  for (Index n = 0; n < s.size(); ++n) {
    LineInterval hull{s.c(n), s.c(n) + L - 1};
    if (structured) {
      hull = {s.c(n), s.d(n)};
      for (const auto& p : predicted_dual_pieces(s, n)) {
        hull.lo = std::min(hull.lo, p.region.lo);
        hull.hi = std::max(hull.hi, p.region.hi);
      }
      hull.hi = std::min(hull.hi, hull.lo + L - 1);
    }
    Window w;
    w.offset = hull.lo + (s.anchor(n) - s.c(n));
    w.channels = s.M(n);
    for (Index t = hull.lo; t <= hull.hi; ++t) w.samples.push_back(duals.base[n][wrap(t, L)]);
    ws.push_back(std::move(w));
  }
  BuildOptions opts;
  opts.require_coverage = false;
  opts.allow_reorder = false;
  return build_system(L, std::move(ws), opts);
}

}  // namespace nsg
