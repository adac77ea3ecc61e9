#include "nsg/interval.hpp"

#include <algorithm>

#include "nsg/error.hpp"

namespace nsg {

LineInterval LineInterval::intersect(const LineInterval& o) const {
  if (empty() || o.empty()) return {};
  return {std::max(lo, o.lo), std::min(hi, o.hi)};
}

bool LineInterval::subset_of(const LineInterval& o) const {
  if (empty()) return true;
  return !o.empty() && o.lo <= lo && hi <= o.hi;
}

std::ostream& operator<<(std::ostream& os, const LineInterval& iv) {
  if (iv.empty()) return os << "{}";
  return os << '[' << iv.lo << ", " << iv.hi << ']';
}

CircularInterval::CircularInterval(Index ring, Index start, Index length)
    : ring_(ring), start_(0), length_(length) {
  if (ring < 1) throw ParameterError("circular interval needs a positive ring size");
  if (length < 0 || length > ring) {
    throw ParameterError("circular interval length must lie in [0, L]");
  }
  start_ = length == 0 ? 0 : wrap(start, ring);
}

CircularInterval CircularInterval::from_line(Index ring, const LineInterval& iv) {
  if (iv.empty()) return CircularInterval(ring, 0, 0);
  return CircularInterval(ring, iv.lo, std::min(iv.size(), ring));
}

bool CircularInterval::contains(Index l) const {
  if (empty()) return false;
  return wrap(l - start_, ring_) < length_;
}

std::ostream& operator<<(std::ostream& os, const CircularInterval& iv) {
  if (iv.empty()) return os << "{}";
  return os << '[' << iv.start() << ", " << iv.start() + iv.length() - 1 << "] mod "
            << iv.ring();
}

IntervalSet::IntervalSet(Index ring, const std::vector<CircularInterval>& pieces)
    : ring_(ring), pieces_(pieces) {
  for (const auto& p : pieces_) {
    if (!p.empty() && p.ring() != ring_) throw ParameterError("interval ring mismatch");
  }
  normalize();
}

void IntervalSet::add(const CircularInterval& iv) {
  if (iv.empty()) return;
  if (iv.ring() != ring_) throw ParameterError("interval ring mismatch");
  pieces_.push_back(iv);
  normalize();
}

void IntervalSet::normalize() {
  // Split wrapping pieces at 0 and merge in half-open [s, e) form.
  std::vector<std::pair<Index, Index>> spans;
  spans.reserve(pieces_.size() + 2);
  for (const auto& p : pieces_) {
    if (p.empty()) continue;
    const Index s = p.start();
    const Index e = s + p.length();
    if (e <= ring_) {
      spans.emplace_back(s, e);
    } else {
      spans.emplace_back(s, ring_);
      spans.emplace_back(0, e - ring_);
    }
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<Index, Index>> merged;
  for (const auto& sp : spans) {
    if (!merged.empty() && sp.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, sp.second);
    } else {
      merged.push_back(sp);
    }
  }
  pieces_.clear();
  for (const auto& [s, e] : merged) pieces_.emplace_back(ring_, s, e - s);
}

Index IntervalSet::measure() const {
  Index m = 0;
  for (const auto& p : pieces_) m += p.length();
  return m;
}

bool IntervalSet::contains(Index l) const {
  const Index r = wrap(l, ring_);
  for (const auto& p : pieces_) {
    if (r >= p.start() && r < p.start() + p.length()) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  if (o.ring_ != ring_) throw ParameterError("interval ring mismatch");
  std::vector<CircularInterval> all = pieces_;
  all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
  return IntervalSet(ring_, all);
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  if (o.ring_ != ring_) throw ParameterError("interval ring mismatch");
  std::vector<CircularInterval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pieces_.size() && j < o.pieces_.size()) {
    const Index s1 = pieces_[i].start(), e1 = s1 + pieces_[i].length();
    const Index s2 = o.pieces_[j].start(), e2 = s2 + o.pieces_[j].length();
    const Index s = std::max(s1, s2), e = std::min(e1, e2);
    if (s < e) out.emplace_back(ring_, s, e - s);
    if (e1 < e2) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(ring_, out);
}

IntervalSet IntervalSet::shifted(Index s) const {
  std::vector<CircularInterval> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.emplace_back(ring_, p.start() + s, p.length());
  return IntervalSet(ring_, out);
}

bool IntervalSet::subset_of(const IntervalSet& o) const { return intersect(o) == *this; }

std::ostream& operator<<(std::ostream& os, const IntervalSet& set) {
  if (set.empty()) return os << "{}";
  bool first = true;
  for (const auto& p : set.intervals()) {
    if (!first) os << " u ";
    os << '[' << p.start() << ", " << p.start() + p.length() - 1 << ']';
    first = false;
  }
  return os << " mod " << set.ring();
}

}  // namespace nsg
