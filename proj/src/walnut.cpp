#include "nsg/walnut.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "nsg/error.hpp"
#include "nsg/interval_calculus.hpp"
#include "nsg/oracle.hpp"

namespace nsg {

namespace {

constexpr std::size_t kMaxWitnesses = 16;

double sup_abs(const CVec& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

WalnutOperator::WalnutOperator(Index L) : L_(L) {
  if (L < 1) throw ParameterError("operator length must be positive");
}

WalnutOperator WalnutOperator::identity(Index L, Complex scale) { return shift(L, 0, scale); }

WalnutOperator WalnutOperator::shift(Index L, Index x, Complex scale) {
  WalnutOperator W(L);
  W.band(x).assign(L, scale);
  return W;
}

std::vector<Index> WalnutOperator::offsets() const {
  std::vector<Index> out;
  out.reserve(bands_.size());
  for (const auto& [x, w] : bands_) out.push_back(x);
  return out;
}

CVec& WalnutOperator::band(Index x) {
  auto [it, inserted] = bands_.try_emplace(wrap(x, L_));
  if (inserted) it->second.assign(L_, Complex(0.0));
  return it->second;
}

const CVec* WalnutOperator::find(Index x) const {
  const auto it = bands_.find(wrap(x, L_));
  return it == bands_.end() ? nullptr : &it->second;
}

void WalnutOperator::prune(double tol) {
  for (auto it = bands_.begin(); it != bands_.end();) {
    bool any = false;
    for (auto& z : it->second) {
      if (std::abs(z) < tol || z == Complex(0.0)) {
        z = Complex(0.0);
      } else {
        any = true;
      }
    }
    it = any ? std::next(it) : bands_.erase(it);
  }
}

double WalnutOperator::band_norm_sum() const {
  double s = 0.0;
  for (const auto& [x, w] : bands_) s += sup_abs(w);
  return s;
}

Signal WalnutOperator::apply(const Signal& f) const {
  if (static_cast<Index>(f.size()) != L_) {
    throw DimensionError("signal has length " + std::to_string(f.size()) + ", operator expects " +
                         std::to_string(L_));
  }
  Signal out(L_, Complex(0.0));
  for (const auto& [x, w] : bands_) {
    // l - x wraps once at most since 0 <= x < L.
    for (Index l = 0; l < L_; ++l) {
      const Index src = l >= x ? l - x : l - x + L_;
      out[l] += w[l] * f[src];
    }
  }
  return out;
}

WalnutOperator& WalnutOperator::operator+=(const WalnutOperator& o) {
  if (o.L_ != L_) throw DimensionError("operator lengths differ");
  for (const auto& [x, w] : o.bands_) {
    CVec& dst = band(x);
    for (Index l = 0; l < L_; ++l) dst[l] += w[l];
  }
  return *this;
}

WalnutOperator& WalnutOperator::operator*=(Complex s) {
  for (auto& [x, w] : bands_) {
    for (auto& z : w) z *= s;
  }
  return *this;
}

WalnutOperator assemble(const NsgSystem& G, const NsgSystem& H) {
  require_paired(G, H);
  const Index L = G.L();
  WalnutOperator W(L);
  for (Index n = 0; n < G.size(); ++n) {
    const Window& wg = G.window(n);
    const Window& wh = H.window(n);
    const Index M = wg.channels;
    const double scale = static_cast<double>(M);
    // Pairs (t, t') of line positions with t = t' mod M contribute to offset t - t'.
    for (Index jh = 0; jh < wh.length(); ++jh) {
      const Complex hv = wh.samples[jh];
      if (hv == Complex(0.0)) continue;
      const Index t = wh.offset + jh;
      const Index l = wrap(t, L);
      for (Index jg = wrap(t - wg.offset, M); jg < wg.length(); jg += M) {
        const Complex gv = wg.samples[jg];
        if (gv == Complex(0.0)) continue;
        W.band(t - (wg.offset + jg))[l] += scale * hv * std::conj(gv);
      }
    }
  }
  W.prune(0.0);
  return W;
}

Signal apply(const WalnutOperator& W, const Signal& f) { return W.apply(f); }

WalnutOperator compose(const WalnutOperator& a, const WalnutOperator& b, double prune_tol) {
  if (a.L() != b.L()) throw DimensionError("operator lengths differ");
  const Index L = a.L();
  WalnutOperator out(L);
  for (const auto& [xa, wa] : a.bands()) {
    for (const auto& [xb, wb] : b.bands()) {
      CVec& dst = out.band(xa + xb);
      for (Index l = 0; l < L; ++l) {
        const Index src = l >= xa ? l - xa : l - xa + L;
        dst[l] += wa[l] * wb[src];
      }
    }
  }
  out.prune(prune_tol);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    case Verdict::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

Verdict StructureReport::overall() const {
  const Verdict parts[] = {support, weight_bound, operator_norm};
  if (std::any_of(std::begin(parts), std::end(parts), [](Verdict v) { return v == Verdict::no; })) {
    return Verdict::no;
  }
  if (std::all_of(std::begin(parts), std::end(parts), [](Verdict v) { return v == Verdict::yes; })) {
    return Verdict::yes;
  }
  return Verdict::not_applicable;
}

NeumannResult neumann_inverse(const WalnutOperator& S, double A, double B,
                              const NeumannOptions& opts) {
  if (!(A > 0.0) || !(B >= A)) throw ParameterError("frame bounds need 0 < A <= B");
  if (!(opts.tol > 0.0) || opts.max_terms < 1) {
    throw ParameterError("Neumann tolerance and term limit must be positive");
  }
  const Index L = S.L();
  const double alpha = 2.0 / (A + B);

  WalnutOperator N = WalnutOperator::identity(L);
  {
    WalnutOperator scaled = S;
    scaled *= -alpha;
    N += scaled;
  }
  N.prune(opts.prune_tol);

  NeumannReport rep;
  rep.A = A;
  rep.B = B;
  rep.contraction = (B - A) / (B + A);

  // Equal bounds force N = 0; anything else means the bounds are wrong.
  if (A == B && N.band_norm_sum() > opts.tol) {
    const double nn = N.band_norm_sum();
    std::ostringstream msg;
    msg << "equal frame bounds require S = " << A << " I, but |I - S/A| has band norm " << nn;
    throw ConvergenceError(msg.str(), nn);
  }

  WalnutOperator sum = WalnutOperator::identity(L);
  WalnutOperator term = WalnutOperator::identity(L);
  double norm = term.band_norm_sum();
  Index j = 0;
  while (norm > opts.tol) {
    if (j >= opts.max_terms || !std::isfinite(norm) || norm > 1e100) {
      std::ostringstream msg;
      msg << "Neumann series did not reach tolerance " << opts.tol << " after " << j
          << " terms (last term norm " << norm << ")";
      throw ConvergenceError(msg.str(), norm);
    }
    term = compose(term, N, opts.prune_tol);
    sum += term;
    norm = term.band_norm_sum();
    ++j;
  }
  sum.prune(opts.prune_tol);
  sum *= alpha;

  rep.iterations = j;
  rep.last_term_norm = norm;
  const double C = rep.contraction;
  rep.tail_bound = C < 1.0 ? std::pow(C, static_cast<double>(j + 1)) / (1.0 - C) : INFINITY;
  for (const auto& [x, w] : sum.bands()) rep.band_sup[x] = sup_abs(w);
  return {std::move(sum), std::move(rep)};
}

namespace {

double norm2(const CVec& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Largest eigenvalue of a Hermitian PSD operator by power iteration.
double power_top(const std::function<Signal(const Signal&)>& op, Index L, Index& iterations) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> dist;
  Signal v(L);
  for (auto& z : v) z = Complex(dist(rng), dist(rng));
  double nv = norm2(v);
  for (auto& z : v) z /= nv;
  double lambda = 0.0;
  const Index max_iter = 1000000;
  for (Index it = 1; it <= max_iter; ++it) {
    Signal w = op(v);
    Complex rq(0.0);
    for (Index l = 0; l < L; ++l) rq += std::conj(v[l]) * w[l];
    lambda = rq.real();
    double res = 0.0;
    for (Index l = 0; l < L; ++l) res += std::norm(w[l] - lambda * v[l]);
    res = std::sqrt(res);
    iterations = it;
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    if (res <= 1e-10 * std::abs(lambda)) return lambda;
    for (Index l = 0; l < L; ++l) v[l] = w[l] / nw;
  }
  return lambda;
}

}  // namespace

FrameBounds frame_bounds(const NsgSystem& s, BoundsMethod method) {
  if (method == BoundsMethod::automatic) {
    method = s.L() <= 1024 ? BoundsMethod::oracle : BoundsMethod::power_iteration;
  }
  FrameBounds fb;
  fb.method = method;
  if (method == BoundsMethod::oracle) {
    const auto ob = optimal_bounds(dense_frame_operator(s));
    fb.A = ob.A;
    fb.B = ob.B;
  } else {
    const WalnutOperator S = assemble(s, s);
    Index it_b = 0, it_a = 0;
    fb.B = power_top([&](const Signal& v) { return S.apply(v); }, s.L(), it_b);
    const double top = fb.B;
    const double mu = power_top(
        [&](const Signal& v) {
          Signal w = S.apply(v);
          for (std::size_t l = 0; l < w.size(); ++l) w[l] = top * v[l] - w[l];
          return w;
        },
        s.L(), it_a);
    fb.A = top - mu;
    fb.iterations = it_a + it_b;
  }
  if (!(fb.B > 0.0) || fb.A <= 1e-10 * fb.B) {
    std::ostringstream msg;
    msg << "system is not a frame: lower bound " << fb.A << " (upper " << fb.B << ")";
    throw NotAFrameError(msg.str(), fb.A);
  }
  return fb;
}

StructureReport structure_report(const WalnutOperator& Sinv, const NsgSystem& s, double A, double B,
                                 double tol) {
  require_thm41(s);
  if (!s.endpoint_vanishing()) {
    throw RegimeError("structure checks need windows that vanish at both support endpoints");
  }
  if (Sinv.L() != s.L()) throw DimensionError("operator and system lengths differ");
  if (!(A > 0.0) || !(B >= A)) throw ParameterError("frame bounds need 0 < A <= B");

  const Index L = s.L();
  const RegimeReport regime = classify(s);
  const double C = (B - A) / (B + A);
  const double scale = (A + B) / 2.0;

  StructureReport rep;
  rep.degenerate_touching = regime.degenerate_touching;
  rep.k_max = *vanishing_index(s, 0).uniform_bound;

  for (Index n = 0; n < s.size(); ++n) {
    for (Index k = 1; k <= rep.k_max; ++k) {
      const double bound = std::pow(C, static_cast<double>(k)) / (1.0 - C);
      const LineInterval lm = support_line(s, n, k, Sign::minus);
      const LineInterval lp = support_line(s, n, k, Sign::plus);
      if (!lm.empty()) {
        rep.entries.push_back({n, k, wrap(-cumulative_shift(s, n, k, Sign::plus), L),
                               CircularInterval::from_line(L, lm), 0.0, bound, true});
      }
      if (!lp.empty()) {
        rep.entries.push_back({n, -k, wrap(cumulative_shift(s, n, k, Sign::minus), L),
                               CircularInterval::from_line(L, lp), 0.0, bound, true});
      }
    }
  }

  // Per (offset, position): combined allowance from every family covering it.
  std::map<Index, RVec> allowance;
  std::map<Index, std::vector<char>> attributed;
  auto ensure = [&](Index x) {
    if (!allowance.count(x)) {
      allowance[x].assign(L, 0.0);
      attributed[x].assign(L, 0);
    }
  };
  ensure(0);
  std::fill(allowance[0].begin(), allowance[0].end(), 1.0 / (1.0 - C));
  std::fill(attributed[0].begin(), attributed[0].end(), 1);
  for (const auto& e : rep.entries) {
    ensure(e.offset);
    for (Index i = 0; i < e.support.length(); ++i) {
      const Index l = wrap(e.support.start() + i, L);
      allowance[e.offset][l] += e.bound;
      attributed[e.offset][l] = 1;
    }
  }

  bool support_ok = true;
  bool bound_ok = true;
  bool opnorm_ok = true;
  auto witness = [&](Index x, Index l, double mag, const std::string& why) {
    if (rep.witnesses.size() < kMaxWitnesses) rep.witnesses.push_back({x, l, mag, why});
  };
  for (const auto& [x, w] : Sinv.bands()) {
    const bool known = attributed.count(x) > 0;
    for (Index l = 0; l < L; ++l) {
      const double mag = std::abs(w[l]);
      if (mag > 1.0 / A + 1e-10) {
        opnorm_ok = false;
        witness(x, l, mag, "entry exceeds 1/A");
      }
      if (!known || !attributed[x][l]) {
        rep.max_off_structure = std::max(rep.max_off_structure, mag);
        if (mag > tol) {
          support_ok = false;
          witness(x, l, mag, "weight outside predicted support");
        }
        continue;
      }
      if (mag * scale > allowance[x][l] + 1e-10) {
        bound_ok = false;
        witness(x, l, mag * scale, "weight exceeds geometric bound");
      }
    }
  }
  for (auto& e : rep.entries) {
    const CVec* w = Sinv.find(e.offset);
    if (w == nullptr) continue;
    for (Index i = 0; i < e.support.length(); ++i) {
      const Index l = wrap(e.support.start() + i, L);
      const double v = std::abs((*w)[l]) * scale;
      e.sup_norm = std::max(e.sup_norm, v);
      if (v > allowance[e.offset][l] + 1e-10) e.within_bound = false;
    }
  }
  rep.support = support_ok ? Verdict::yes : Verdict::no;
  rep.weight_bound = bound_ok ? Verdict::yes : Verdict::no;
  rep.operator_norm = opnorm_ok ? Verdict::yes : Verdict::no;
  return rep;
}

}  // namespace nsg
