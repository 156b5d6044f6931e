#pragma once

#include "pdn/rng.hpp"
#include "pdn/tensor.hpp"

namespace pdn {

/// Glorot uniform: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)). For a
/// rank-2 tensor [out, in], fan_in = in and fan_out = out; for rank-1, both
/// are the length. Values are snapped to the float grid so checkpoints
/// round-trip losslessly.
Tensor glorot_init(std::vector<int> dims, Rng& rng);

Tensor zeros_init(std::vector<int> dims);

}  // namespace pdn
