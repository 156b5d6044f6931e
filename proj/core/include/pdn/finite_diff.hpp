#pragma once

#include <functional>

#include "pdn/tensor.hpp"

namespace pdn {

/// Central-difference gradient oracle: (f(x + h*e_i) - f(x - h*e_i)) / 2h per
/// element. f must be deterministic (dropout disabled). Independent of the
/// tape machinery on purpose: it is the second route every backward pass is
/// checked against.
Tensor finite_difference_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h);

/// Relative error |a-b| / max(1, |a|, |b|) used by all gradient comparisons.
double rel_error(double a, double b);

/// Worst elementwise rel_error between two same-shaped tensors.
double max_rel_error(const Tensor& a, const Tensor& b);

}  // namespace pdn
