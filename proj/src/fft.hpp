#pragma once

#include "nsg/types.hpp"

namespace nsg::detail {

/// out[m] = sum_r in[r] exp(-2 pi i m r / n). `in` and `out` may alias.
void dft_forward(const Complex* in, Complex* out, Index n);
/// out[r] = sum_m in[m] exp(+2 pi i m r / n), no 1/n factor.
void dft_backward(const Complex* in, Complex* out, Index n);

}  // namespace nsg::detail
