#include "nsg/interval_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsg/error.hpp"

namespace nsg {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw ParameterError("non-finite input");
  const double tol = 1e-12 * std::max(1.0, std::abs(x));
  long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double y = x;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(y);
    if (std::abs(fa) > 1e12) break;
    const auto a = static_cast<long long>(fa);
    const long long h = a * h1 + h2;
    const long long k = a * k1 + k2;
    if (k > 1000000) break;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return Rational(h, k);
    const double frac = y - fa;
    if (frac == 0.0) break;
    y = 1.0 / frac;
  }
  std::ostringstream msg;
  msg << "cannot represent " << x << " as a rational with denominator <= 1e6";
  throw ParameterError(msg.str());
}

void add_witness(LemmaClause& cl, LemmaWitness w) {
  cl.pass = false;
  if (cl.witnesses.size() < kMaxWitnesses) cl.witnesses.push_back(std::move(w));
}

std::string show(const LineInterval& a, const LineInterval& b) {
  std::ostringstream os;
  os << a << " vs " << b;
  return os.str();
}

}  // namespace

Index cumulative_shift(const NsgSystem& s, Index n, Index k, Sign sign) {
  if (k < 0) throw ParameterError("cumulative shift needs k >= 0");
  if (sign == Sign::zero) return 0;
  const Index step = sign == Sign::plus ? 1 : -1;
  Index total = 0;
  for (Index j = 0; j < k; ++j) total += s.M(n + step * j);
  return total;
}

LineInterval support_line(const NsgSystem& s, Index n, Index k, Sign sign) {
  if (sign == Sign::zero) return {s.c(n), s.d(n)};
  if (k < 1) throw ParameterError("support intervals I^+- need k >= 1");
  if (sign == Sign::plus) {
    return {s.c(n - k + 1) + cumulative_shift(s, n, k, Sign::minus), s.d(n)};
  }
  return {s.c(n), s.d(n + k - 1) - cumulative_shift(s, n, k, Sign::plus)};
}

CircularInterval support_interval(const NsgSystem& s, Index n, Index k, Sign sign) {
  return CircularInterval::from_line(s.L(), support_line(s, n, k, sign));
}

Index gabor_K(Rational c, Rational d, Rational a, Rational b) {
  if (!(d > c)) throw ParameterError("gabor_K needs d > c");
  const Rational width = d - c;
  if (!(width / 2 <= a && a < width)) throw ParameterError("gabor_K needs (d-c)/2 <= a < d-c");
  if (!(b > 0 && a * b < 1)) throw ParameterError("gabor_K needs 0 < b < 1/a");
  const Rational q = (width - a) * b / (1 - a * b);
  return floor_div(q.numerator(), q.denominator());
}

Index gabor_K(double c, double d, double a, double b) {
  const Rational rc = to_rational(c), rd = to_rational(d), ra = to_rational(a), rb = to_rational(b);
  const Index K = gabor_K(rc, rd, ra, rb);
  const Rational q = (rd - rc - ra) * rb / (1 - ra * rb);
  const double v = (d - c - a) * b / (1.0 - a * b);
  if (q.denominator() != 1 && std::abs(v - std::round(v)) < 1e-9) {
    std::ostringstream msg;
    msg << "gabor_K input " << v << " lies within 1e-9 of a floor discontinuity";
    throw ParameterError(msg.str());
  }
  return K;
}

void require_thm41(const NsgSystem& s) {
  const RegimeReport r = classify(s);
  if (r.thm41) return;
  std::string msg = "system is outside the structured regime:";
  for (const auto& v : r.violations) msg += " " + v;
  throw RegimeError(msg);
}

namespace {

Index uniform_bound_of(const RegimeReport& r) {
  if (r.painless || r.C < 0) return 1;
  return r.C / r.epsilon + 2;
}

}  // namespace

VanishingIndex vanishing_index(const NsgSystem& s, Index n) {
  require_thm41(s);
  const RegimeReport r = classify(s);
  VanishingIndex out;
  out.uniform_bound = uniform_bound_of(r);
  if (r.painless) {
    out.k_n = 1;
    return out;
  }
  Index last = 0;
  for (Index k = 1; k <= *out.uniform_bound + 1; ++k) {
    if (!support_line(s, n, k, Sign::plus).empty() || !support_line(s, n, k, Sign::minus).empty()) {
      last = k;
    }
  }
  out.k_n = last + 1;
  return out;
}

std::vector<DualPiece> predicted_dual_pieces(const NsgSystem& s, Index n) {
  require_thm41(s);
  const RegimeReport r = classify(s);
  std::vector<DualPiece> out;
  out.push_back({support_line(s, n, 0, Sign::zero), 0, Sign::zero});
  if (r.painless) return out;
  const Index kmax = uniform_bound_of(r);
  for (Index k = 1; k <= kmax; ++k) {
    const LineInterval minus = support_line(s, n - k, k, Sign::minus);
    const LineInterval plus = support_line(s, n + k, k, Sign::plus);
    if (!minus.empty()) out.push_back({minus, k, Sign::minus});
    if (!plus.empty()) out.push_back({plus, k, Sign::plus});
  }
  return out;
}

IntervalSet predicted_dual_support(const NsgSystem& s, Index n) {
  IntervalSet out(s.L());
  for (const auto& p : predicted_dual_pieces(s, n)) out.add(p.region);
  return out;
}

bool LemmaReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const LemmaClause& c) { return c.pass; });
}

const LemmaClause& LemmaReport::clause(char id) const {
  for (const auto& c : clauses) {
    if (c.id == id) return c;
  }
  throw ParameterError(std::string("no lemma clause ") + id);
}

LemmaReport verify_interval_lemma(const NsgSystem& s) {
  const RegimeReport r = classify(s);
  LemmaReport rep;
  rep.regime_ok = r.thm41;
  const Index N = s.size();
  rep.k_max = (r.thm41 && !r.painless) ? uniform_bound_of(r) + 1 : 3;
  const Index K = rep.k_max;
  for (char id = 'a'; id <= 'f'; ++id) rep.clauses.push_back(LemmaClause{id, true, 0, {}});
  LemmaClause& ca = rep.clauses[0];
  LemmaClause& cb = rep.clauses[1];
  LemmaClause& cc = rep.clauses[2];
  LemmaClause& cd = rep.clauses[3];
  LemmaClause& ce = rep.clauses[4];
  LemmaClause& cf = rep.clauses[5];

  // Cache of I^+_{n,k} and I^-_{n,k} over every line index the checks touch.
  const Index lo = -2 * N - 4;
  const Index hi = 3 * N + 4;
  const Index width = hi - lo + 1;
  std::vector<LineInterval> plus(width * (K + 2)), minus(width * (K + 2));
  for (Index n = lo; n <= hi; ++n) {
    for (Index k = 1; k <= K + 1; ++k) {
      plus[(n - lo) * (K + 2) + k] = support_line(s, n, k, Sign::plus);
      minus[(n - lo) * (K + 2) + k] = support_line(s, n, k, Sign::minus);
    }
  }
  auto Ip = [&](Index n, Index k) { return plus[(n - lo) * (K + 2) + k]; };
  auto Im = [&](Index n, Index k) { return minus[(n - lo) * (K + 2) + k]; };
  auto hull = [](LineInterval a, const LineInterval& b) {
    if (b.empty()) return a;
    if (a.empty()) return b;
    return LineInterval{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  };
  // Everything window n contributes to (c)-(e), and everything window m does.
  std::vector<LineInterval> reach_n(width), reach_m(width);
  for (Index n = lo; n <= hi; ++n) {
    LineInterval a, b;
    for (Index k = 1; k <= K; ++k) {
      a = hull(hull(hull(a, Ip(n, k)), Im(n, k)), Im(n, k).shifted(s.M(n)));
      b = hull(hull(hull(b, Ip(n, k)), Im(n, k)), Ip(n, k).shifted(-s.M(n)));
    }
    reach_n[n - lo] = a;
    reach_m[n - lo] = b;
  }

  for (Index n = 0; n < N; ++n) {
    // (a) recursion and strict size decrease; (b) strict nesting.
    for (Index k = 1; k <= K; ++k) {
      const LineInterval lhs_m = Im(n, k + 1);
      const LineInterval rhs_m = Im(n, 1).intersect(Im(n + 1, k).shifted(-s.M(n)));
      const LineInterval lhs_p = Ip(n, k + 1);
      const LineInterval rhs_p = Ip(n, 1).intersect(Ip(n - 1, k).shifted(s.M(n)));
      ca.checks += 2;
      if (!(lhs_m == rhs_m)) add_witness(ca, {n, n + 1, k, 0, "minus recursion " + show(lhs_m, rhs_m)});
      if (!(lhs_p == rhs_p)) add_witness(ca, {n, n - 1, k, 0, "plus recursion " + show(lhs_p, rhs_p)});
      const Index min_m = std::min(Im(n, k).size(), Im(n + 1, k).size());
      const Index min_p = std::min(Ip(n, k).size(), Ip(n - 1, k).size());
      if (min_m > 0 ? !(lhs_m.size() < min_m) : !lhs_m.empty()) {
        add_witness(ca, {n, n + 1, k, 0, "minus size does not decrease"});
      }
      if (min_p > 0 ? !(lhs_p.size() < min_p) : !lhs_p.empty()) {
        add_witness(ca, {n, n - 1, k, 0, "plus size does not decrease"});
      }

      for (const Sign sg : {Sign::minus, Sign::plus}) {
        const LineInterval outer = support_line(s, n, k, sg);
        const LineInterval inner = support_line(s, n, k + 1, sg);
        ++cb.checks;
        const bool ok = outer.empty() ? inner.empty()
                                      : inner.subset_of(outer) && inner.size() < outer.size();
        if (!ok) {
          add_witness(cb, {n, n, k, k + 1,
                           std::string(sg == Sign::plus ? "plus " : "minus ") + show(inner, outer)});
        }
      }
    }

    // (c)-(e) over all line windows m that can reach window n.
    for (Index m = n - 2 * N - 2; m <= n + 2 * N + 2; ++m) {
      if (reach_n[n - lo].intersect(reach_m[m - lo]).empty()) {
        const Index pairs = K * K;
        if (m != n) {
          cc.checks += 2 * pairs;
          ce.checks += 2 * pairs;
        }
        cd.checks += pairs;
        continue;
      }
      for (Index k = 1; k <= K; ++k) {
        for (Index j = 1; j <= K; ++j) {
          if (m != n) {
            cc.checks += 2;
            const LineInterval pp = Ip(n, k).intersect(Ip(m, j));
            const LineInterval mm = Im(n, k).intersect(Im(m, j));
            if (!pp.empty()) add_witness(cc, {n, m, k, j, "plus sets meet " + show(Ip(n, k), Ip(m, j))});
            if (!mm.empty()) add_witness(cc, {n, m, k, j, "minus sets meet " + show(Im(n, k), Im(m, j))});

            ce.checks += 2;
            if (!Im(n, k).shifted(s.M(n)).intersect(Ip(m, j)).empty()) {
              add_witness(ce, {n, m, k, j, "I^-_{n,k} + M_n meets I^+_{m,j}"});
            }
            if (!Im(n, k).intersect(Ip(m, j).shifted(-s.M(m))).empty()) {
              add_witness(ce, {n, m, k, j, "I^-_{n,k} meets I^+_{m,j} - M_m"});
            }
          }
          ++cd.checks;
          if (!Im(n, k).intersect(Ip(m, j)).empty()) {
            if (m != n - 1 && m != n - 2) {
              add_witness(cd, {n, m, k, j, "cross-sign overlap " + show(Im(n, k), Ip(m, j))});
            } else if (m == n - 2 && s.c(n) != s.d(n - 2)) {
              add_witness(cd, {n, m, k, j, "overlap with n-2 without c_n = d_{n-2}"});
            }
          }
        }
      }
    }

    // (f) with k = 1: (i) and (ii) coincide with I^+_{n-2,1} meeting I^-_{n,1}.
    ++cf.checks;
    const bool touch = s.c(n) == s.d(n - 2);
    const bool fi = !Im(n - 2, 1).shifted(s.M(n - 2)).intersect(Im(n, 1)).empty();
    const bool fii = !Ip(n - 2, 1).intersect(Ip(n, 1).shifted(-s.M(n))).empty();
    const bool sets_present = !Ip(n - 2, 1).empty() && !Im(n, 1).empty();
    if (fi != fii || (fi && !touch) || (touch && sets_present && !fi)) {
      std::ostringstream os;
      os << "(i)=" << fi << " (ii)=" << fii << " c_n=d_{n-2}:" << touch;
      add_witness(cf, {n, n - 2, 1, 1, os.str()});
    }
  }
  return rep;
}

}  // namespace nsg
