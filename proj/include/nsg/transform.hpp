#pragma once

#include <vector>

#include "nsg/system.hpp"

namespace nsg {

/// c[n][m] = <f, g_{m,n}>, one row of length M_n per window.
using Coefficients = std::vector<CVec>;

/// Zero coefficients shaped for `s`.
Coefficients zero_coefficients(const NsgSystem& s);

/// Inner products with every element: window, fold onto Z_{M_n}, one DFT.
Coefficients analyze(const NsgSystem& s, const Signal& f);

/// sum_{n,m} c[n][m] g_{m,n}: inverse DFT per window, overlap-add in window order.
Signal synthesize(const NsgSystem& s, const Coefficients& c);

/// synthesize(H, analyze(G, f)). G and H must share L and the channel sequence.
Signal frame_apply(const NsgSystem& G, const NsgSystem& H, const Signal& f);

}  // namespace nsg
