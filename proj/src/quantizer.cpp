#include "thz/quantizer.hpp"

#include <cmath>

#include "thz/errors.hpp"

namespace thz {

double quantize_scalar(double y, int bits, double step) {
  if (bits == 0) return y;  // infinite resolution
  if (bits < 0 || bits > 30) throw ConfigError("quantizer: bits must be in [1, 30]");
  if (!(step > 0.0)) throw ConfigError("quantizer: step must be > 0");

  const double n_q = std::ldexp(1.0, bits);  // 2^bits levels
  // bin index i in [1, N_q] such that y in (u_{i-1}, u_i], u_i = (-N_q/2 + i) step
  double i = std::ceil(y / step + n_q / 2.0);
  if (i < 1.0) i = 1.0;
  if (i > n_q) i = n_q;
  return (i - 0.5 - n_q / 2.0) * step;  // mid-point level (u_{i-1} + u_i)/2
}

CVec quantize_uniform(const CVec& y, int bits, double step) {
  if (bits == 0) return y;
  CVec out(y.size());
  for (Eigen::Index k = 0; k < y.size(); ++k)
    out(k) = {quantize_scalar(y(k).real(), bits, step),
              quantize_scalar(y(k).imag(), bits, step)};
  return out;
}

}  // namespace thz
