#pragma once

#include <ostream>
#include <vector>

#include "nsg/types.hpp"

namespace nsg {

/// Closed integer interval [lo, hi] on the unwrapped line; empty when hi < lo.
struct LineInterval {
  Index lo = 0;
  Index hi = -1;

  bool empty() const { return hi < lo; }
  Index size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(Index t) const { return lo <= t && t <= hi; }
  LineInterval shifted(Index s) const { return empty() ? *this : LineInterval{lo + s, hi + s}; }
  LineInterval intersect(const LineInterval& o) const;
  bool subset_of(const LineInterval& o) const;

  friend bool operator==(const LineInterval& a, const LineInterval& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.lo == b.lo && a.hi == b.hi;
  }
};

std::ostream& operator<<(std::ostream& os, const LineInterval& iv);

/// Interval on Z_L given by a canonical start in [0, L) and a sample count.
class CircularInterval {
 public:
  CircularInterval() = default;
  CircularInterval(Index ring, Index start, Index length);

  /// Reduces a line interval mod L; lengths above L saturate to the full ring.
  static CircularInterval from_line(Index ring, const LineInterval& iv);

  Index ring() const { return ring_; }
  Index start() const { return start_; }
  Index length() const { return length_; }
  bool empty() const { return length_ == 0; }
  bool contains(Index l) const;

  friend bool operator==(const CircularInterval& a, const CircularInterval& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.ring_ == b.ring_ && a.start_ == b.start_ && a.length_ == b.length_;
  }

 private:
  Index ring_ = 1;
  Index start_ = 0;
  Index length_ = 0;
};

std::ostream& operator<<(std::ostream& os, const CircularInterval& iv);

/// Finite union of circular intervals, kept normalized: pieces do not wrap
/// past L, are sorted by start and are pairwise disjoint and non-adjacent.
class IntervalSet {
 public:
  explicit IntervalSet(Index ring = 1) : ring_(ring) {}
  IntervalSet(Index ring, const std::vector<CircularInterval>& pieces);

  Index ring() const { return ring_; }
  const std::vector<CircularInterval>& intervals() const { return pieces_; }

  void add(const CircularInterval& iv);
  void add(const LineInterval& iv) { add(CircularInterval::from_line(ring_, iv)); }

  bool empty() const { return pieces_.empty(); }
  Index measure() const;
  bool contains(Index l) const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet shifted(Index s) const;
  bool subset_of(const IntervalSet& o) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.ring_ == b.ring_ && a.pieces_ == b.pieces_;
  }

 private:
  void normalize();

  Index ring_;
  std::vector<CircularInterval> pieces_;
};

std::ostream& operator<<(std::ostream& os, const IntervalSet& set);

}  // namespace nsg
