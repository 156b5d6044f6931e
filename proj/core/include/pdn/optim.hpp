#pragma once

#include <vector>

#include "pdn/params.hpp"

namespace pdn {

/// Adam with bias correction. Moments are kept at 64-bit; updated parameter
/// values are snapped to the float grid so any reachable parameter state
/// survives the float32 checkpoint format bit-exactly.
struct AdamState {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;

  std::vector<Tensor> m;
  std::vector<Tensor> v;

  /// Allocate zero moments matching the store's parameters.
  void attach(const ParamStore& params);
};

/// One Adam update over every parameter in the store, consuming Param::grad.
/// Gradients are left untouched; callers zero them per batch.
void adam_step(ParamStore& params, AdamState& state);

}  // namespace pdn
