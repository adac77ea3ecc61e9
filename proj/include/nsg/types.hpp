#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace nsg {

using Index = std::int64_t;
using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

/// Signal on Z_L.
using Signal = CVec;

/// Representative of i in [0, m).
constexpr Index wrap(Index i, Index m) {
  const Index r = i % m;
  return r < 0 ? r + m : r;
}

/// Floor division for possibly negative numerators.
constexpr Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Side of the cumulative shifts B^± and intervals I^±; `zero` selects I_{n,0}.
enum class Sign { minus = -1, zero = 0, plus = 1 };

}  // namespace nsg
