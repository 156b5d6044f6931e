#include "pdn/init.hpp"

#include <cmath>
#include <stdexcept>

namespace pdn {

Tensor glorot_init(std::vector<int> dims, Rng& rng) {
  Tensor t(std::move(dims));
  int fan_in, fan_out;
  if (t.rank() == 2) {
    fan_out = t.dims[0];
    fan_in = t.dims[1];
  } else if (t.rank() == 1) {
    fan_in = fan_out = t.dims[0];
  } else {
    throw std::invalid_argument("glorot_init: rank must be 1 or 2, got " + dims_to_string(t.dims));
  }
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& x : t.v) x = snap_f32(rng.uniform(-bound, bound));
  return t;
}

Tensor zeros_init(std::vector<int> dims) { return Tensor::zeros(std::move(dims)); }

}  // namespace pdn
