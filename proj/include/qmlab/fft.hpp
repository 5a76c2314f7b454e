#pragma once

#include <complex>
#include <vector>

#include "qmlab/grid.hpp"

namespace qmlab {

using cdouble = std::complex<double>;

/// In-place unnormalized DFT over all axes of a grid-shaped array.
/// sign = -1 forward, +1 backward. A forward/backward round trip multiplies
/// by grid.size(); callers that need a round trip use fft_backward_normalized.
void fft_forward(const GridSpec& grid, std::vector<cdouble>& data);
void fft_backward(const GridSpec& grid, std::vector<cdouble>& data);

/// Backward transform including the 1/size factor, so
/// fft_backward_normalized(fft_forward(x)) == x.
void fft_backward_normalized(const GridSpec& grid, std::vector<cdouble>& data);

}  // namespace qmlab
