#pragma once

#include <deque>
#include <string>

#include "pdn/tensor.hpp"

namespace pdn {

/// A named trainable tensor with a persistent gradient buffer. Gradients
/// accumulate across backward passes until zero_grads() is called, which is
/// how batch gradients are summed example by example.
struct Param {
  std::string name;
  Tensor value;
  Tensor grad;

  Param(std::string n, Tensor t) : name(std::move(n)), value(std::move(t)), grad(Tensor::zeros(value.dims)) {}
};

/// Ordered registry of parameters. Registration order is the iteration order
/// everywhere (optimizer, checkpoints, gradient checks), which keeps training
/// deterministic. Backed by a deque so references stay valid as it grows.
class ParamStore {
 public:
  Param& add(const std::string& name, Tensor init);
  Param& get(const std::string& name);
  const Param& get(const std::string& name) const;
  bool has(const std::string& name) const;

  std::size_t count() const { return items_.size(); }
  long long total_values() const;

  void zero_grads();

  auto begin() { return items_.begin(); }
  auto end() { return items_.end(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::deque<Param> items_;
};

}  // namespace pdn
