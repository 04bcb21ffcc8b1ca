#pragma once

#include "thz/channel.hpp"

namespace thz {

// Uniform mid-point quantizer with N_q = 2^bits levels, thresholds
// u_i = (-N_q/2 + i) step and levels at mid-points; inputs outside the range
// clamp to the extreme levels. bits == 0 encodes infinite resolution (identity).
double quantize_scalar(double y, int bits, double step);

// Applied elementwise to real and imaginary parts.
CVec quantize_uniform(const CVec& y, int bits, double step);

}  // namespace thz
