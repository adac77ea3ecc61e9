#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "nsg/interval.hpp"
#include "nsg/system.hpp"

namespace nsg {

using Rational = boost::rational<long long>;

/// B^+_{n,k} = sum_{j<k} M_{n+j} (sign plus) or B^-_{n,k} = sum_{j<k} M_{n-j}
/// (sign minus), window indices taken cyclically. Sign::zero returns 0.
Index cumulative_shift(const NsgSystem& s, Index n, Index k, Sign sign);

/// I_{n,0}, I^+_{n,k} or I^-_{n,k} on the line of virtual positions.
LineInterval support_line(const NsgSystem& s, Index n, Index k, Sign sign);

/// Same set reduced mod L.
CircularInterval support_interval(const NsgSystem& s, Index n, Index k, Sign sign);

/// floor((d - c - a) b / (1 - a b)) in exact rational arithmetic.
Index gabor_K(Rational c, Rational d, Rational a, Rational b);
/// Floating-point inputs are converted to nearby rationals (tolerance 1e-12);
/// values within 1e-9 of a jump of the floor are rejected.
Index gabor_K(double c, double d, double a, double b);

/// Line pieces I_{n,0}, I^-_{n-k,k}, I^+_{n+k,k} (k >= 1, nonempty only).
struct DualPiece {
  LineInterval region;
  Index k = 0;           // 0 for the central piece
  Sign side = Sign::zero;  // minus: I^-_{n-k,k}, plus: I^+_{n+k,k}
};

std::vector<DualPiece> predicted_dual_pieces(const NsgSystem& s, Index n);
IntervalSet predicted_dual_support(const NsgSystem& s, Index n);

struct VanishingIndex {
  Index k_n = 1;
  std::optional<Index> uniform_bound;
};

/// Smallest k with I^+_{n,k'} and I^-_{n,k'} empty for every k' >= k. The
/// uniform bound is floor(C / eps) + 2, or 1 for painless systems.
VanishingIndex vanishing_index(const NsgSystem& s, Index n);

struct LemmaWitness {
  Index n = 0;
  Index m = 0;
  Index k = 0;
  Index j = 0;
  std::string detail;
};

struct LemmaClause {
  char id = 'a';
  bool pass = true;
  Index checks = 0;
  std::vector<LemmaWitness> witnesses;  // capped
};

struct LemmaReport {
  bool regime_ok = false;
  Index k_max = 0;
  std::vector<LemmaClause> clauses;  // a..f

  bool all_pass() const;
  const LemmaClause& clause(char id) const;
};

/// Checks the interval relations (a)-(f) on the periodized line system for
/// 0 <= n < N, all relevant m and 1 <= k, j <= k_max. Failures are reported,
/// never thrown.
LemmaReport verify_interval_lemma(const NsgSystem& s);

/// Throws RegimeError listing the violated conditions unless classify(s).thm41.
void require_thm41(const NsgSystem& s);

}  // namespace nsg
