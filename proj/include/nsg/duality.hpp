#pragma once

#include <map>
#include <string>
#include <vector>

#include "nsg/error.hpp"
#include "nsg/interval.hpp"
#include "nsg/system.hpp"
#include "nsg/walnut.hpp"

namespace nsg {

/// Residuals of the Walnut weights of synthesize(H, analyze(G, .)) against the
/// identity: offset 0 carries w_0 - 1, every other realized offset carries w_x.
struct DualityReport {
  CVec offset0_residual;
  std::map<Index, CVec> residuals;      // nonzero offsets
  std::map<Index, double> offset_max;   // per offset, including 0
  double max_defect = 0.0;
  Index worst_offset = 0;
  Index worst_position = 0;
};

DualityReport duality_defect(const NsgSystem& G, const NsgSystem& H);

/// Window samples placed at an unwrapped start position.
struct Prototype {
  Index offset = 0;
  CVec samples;
};

/// Regular Gabor sums M sum_n T_{na} h conj(T_{kM + na} g), over every k for
/// which the translates overlap.
DualityReport gabor_duality_defect(const Prototype& g, const Prototype& h, Index a, Index M, Index L);

struct ExistenceWitness {
  std::string condition;  // "b.i", "b.ii" or "b.iii"
  Index position = 0;     // sample in [0, L)
  Index window = 0;
  double value = 0.0;     // best available sqrt(M)|g| at the position
};

struct ExistenceReport {
  /// Largest A for which b.i-b.iii hold; 0 means no short-support dual exists.
  double A = 0.0;
  double A_bi = INFINITY;
  double A_bii = INFINITY;
  double A_biii = INFINITY;
  std::vector<ExistenceWitness> witnesses;  // worst point per condition, plus zero points

  bool feasible() const { return A > 0.0; }
};

class ExistenceError : public Error {
 public:
  ExistenceError(const std::string& what, ExistenceReport report)
      : Error(what), report_(std::move(report)) {}
  const ExistenceReport& report() const { return report_; }

 private:
  ExistenceReport report_;
};

/// Raised by modulated_dual when restriction pieces overlap mod L.
class DisjointnessError : public RegimeError {
 public:
  DisjointnessError(const std::string& what, Index first, Index second)
      : RegimeError(what), first_(first), second_(second) {}
  Index first() const { return first_; }
  Index second() const { return second_; }

 private:
  Index first_;
  Index second_;
};

/// Which covering window carries the dual where two are admissible.
enum class FreeRegionRule { owner, predecessor };

struct ShortSupportDual {
  NsgSystem dual;
  ExistenceReport existence;
  DualityReport defect;
  double a_i = 0.0;    // max |sum_n M_n h_n conj(g_n) - 1|
  double a_ii = 0.0;   // max |h_n T_{-M_n} conj(g_n)|
  double a_iii = 0.0;  // max |h_n T_{M_n} conj(g_n)|
  bool sup_ok = true;  // |h_n| <= 2 / (A sqrt(M_n)) + 1e-12 for all n
};

/// Dual windows with supp(h_n) inside [c_n, d_n]. Needs the cor43 regime;
/// throws ExistenceError when some sample admits no window.
ShortSupportDual construct_short_support_dual(const NsgSystem& s,
                                              FreeRegionRule rule = FreeRegionRule::owner);

/// Existence diagnostics alone (no regime requirement beyond coverage).
ExistenceReport short_support_existence(const NsgSystem& s);

struct GaborShortSupportDual {
  ShortSupportDual result;
  CVec h;  // prototype dual over the support of g
  bool periodic = true;
  bool region_applicable = false;  // g real and positive on the open support
  bool region_ok = true;           // h vanishes outside [d - M, c + M]
  double region_max_outside = 0.0;
};

GaborShortSupportDual gabor_short_support_dual(const CVec& g, Index c, Index a, Index M, Index L);

struct CanonicalDualWindows {
  std::vector<CVec> base;            // S^{-1} g_{0,n}, length L each
  std::vector<IntervalSet> predicted;  // empty when not asserted
  std::vector<double> max_outside;
  bool asserted = false;             // regime allows the support claim
  Verdict verdict = Verdict::not_applicable;
};

CanonicalDualWindows canonical_dual_windows(const NsgSystem& s, const WalnutOperator& Sinv,
                                            double tol = 1e-9);

/// S^{-1} g_{m,n} from the base dual by restriction and phase factors.
Signal modulated_dual(const NsgSystem& s, Index n, Index m, const CVec& base);

/// Canonical duals as an NSG system with the parameters of `s`: window n is
/// the base dual over the hull of its predicted pieces.
NsgSystem canonical_dual_system(const NsgSystem& s, const CanonicalDualWindows& duals);

}  // namespace nsg
