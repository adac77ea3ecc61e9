#pragma once

#include <map>
#include <string>
#include <vector>

#include "nsg/interval.hpp"
#include "nsg/system.hpp"

namespace nsg {

/// Linear operator on C^L stored by translation offset:
/// (W f)[l] = sum_x w_x[l] f[(l - x) mod L]. Offsets are kept in [0, L).
class WalnutOperator {
 public:
  explicit WalnutOperator(Index L = 1);

  static WalnutOperator identity(Index L, Complex scale = 1.0);
  static WalnutOperator shift(Index L, Index x, Complex scale = 1.0);

  Index L() const { return L_; }
  const std::map<Index, CVec>& bands() const { return bands_; }
  std::vector<Index> offsets() const;
  bool empty() const { return bands_.empty(); }

  /// Band at offset x mod L, created as zeros if absent.
  CVec& band(Index x);
  /// Band at offset x mod L or nullptr.
  const CVec* find(Index x) const;

  /// Zeroes entries with magnitude below tol and drops bands left all zero.
  void prune(double tol);

  /// sum_x max_l |w_x[l]|.
  double band_norm_sum() const;

  Signal apply(const Signal& f) const;

  WalnutOperator& operator+=(const WalnutOperator& o);
  WalnutOperator& operator*=(Complex s);

 private:
  Index L_;
  std::map<Index, CVec> bands_;
};

/// Walnut form of synthesize(H, analyze(G, .)).
WalnutOperator assemble(const NsgSystem& G, const NsgSystem& H);

Signal apply(const WalnutOperator& W, const Signal& f);

/// Product a * b (apply b first). Entries below prune_tol are dropped.
WalnutOperator compose(const WalnutOperator& a, const WalnutOperator& b, double prune_tol = 0.0);

enum class Verdict { yes, no, not_applicable };
std::string to_string(Verdict v);

/// Weight family omega_{n,k} of the inverse: offset -B^+_{n,k} with support in
/// I^-_{n,k} for k > 0, offset +B^-_{n,|k|} with support in I^+_{n,|k|} for k < 0.
struct StructureEntry {
  Index n = 0;
  Index k = 0;
  Index offset = 0;
  CircularInterval support;
  double sup_norm = 0.0;  // of the unscaled Neumann sum on `support`
  double bound = 0.0;     // C^{|k|} / (1 - C)
  bool within_bound = true;
};

struct StructureWitness {
  Index offset = 0;
  Index position = 0;
  double magnitude = 0.0;
  std::string reason;
};

struct StructureReport {
  Verdict support = Verdict::not_applicable;
  Verdict weight_bound = Verdict::not_applicable;
  Verdict operator_norm = Verdict::not_applicable;
  double max_off_structure = 0.0;
  bool degenerate_touching = false;
  Index k_max = 0;
  std::vector<StructureEntry> entries;
  std::vector<StructureWitness> witnesses;  // capped

  Verdict overall() const;
};

struct NeumannOptions {
  double tol = 1e-12;
  Index max_terms = 100000;
  /// Applied to the dimensionless powers of N = I - 2S/(A+B).
  double prune_tol = 1e-14;
};

struct NeumannReport {
  Index iterations = 0;
  double A = 0.0;
  double B = 0.0;
  double contraction = 0.0;  // C = (B - A) / (B + A)
  double last_term_norm = 0.0;
  double tail_bound = 0.0;  // C^{j+1} / (1 - C) after j terms
  std::map<Index, double> band_sup;  // of the returned inverse
  StructureReport structure;
};

struct NeumannResult {
  WalnutOperator inverse;
  NeumannReport report;
};

/// (2/(A+B)) sum_j N^j, truncated once the newest term has band norm sum <= tol.
NeumannResult neumann_inverse(const WalnutOperator& S, double A, double B,
                              const NeumannOptions& opts = {});

enum class BoundsMethod { automatic, oracle, power_iteration };

struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  BoundsMethod method = BoundsMethod::oracle;
  Index iterations = 0;
};

/// Optimal frame bounds. `automatic` uses the oracle for L <= 1024.
FrameBounds frame_bounds(const NsgSystem& s, BoundsMethod method = BoundsMethod::automatic);

/// Checks the inverse against the predicted band structure. Requires the
/// structured regime and endpoint-vanishing windows (RegimeError otherwise).
StructureReport structure_report(const WalnutOperator& Sinv, const NsgSystem& s, double A, double B,
                                 double tol = 1e-10);

}  // namespace nsg
