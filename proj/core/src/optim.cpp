#include "pdn/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace pdn {

void AdamState::attach(const ParamStore& params) {
  m.clear();
  v.clear();
  step_count = 0;
  for (const Param& p : params) {
    m.push_back(Tensor::zeros(p.value.dims));
    v.push_back(Tensor::zeros(p.value.dims));
  }
}

void adam_step(ParamStore& params, AdamState& state) {
  if (state.m.size() != params.count() || state.v.size() != params.count())
    throw std::invalid_argument("adam_step: state not attached to this parameter store");
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
  std::size_t k = 0;
  for (Param& p : params) {
    Tensor& m = state.m[k];
    Tensor& v = state.v[k];
    ++k;
    if (!m.same_dims(p.value) || !p.grad.same_dims(p.value))
      throw std::invalid_argument("adam_step: shape mismatch for '" + p.name + "'");
    for (int i = 0; i < p.value.size(); ++i) {
      const double g = p.grad.v[i];
      m.v[i] = state.beta1 * m.v[i] + (1.0 - state.beta1) * g;
      v.v[i] = state.beta2 * v.v[i] + (1.0 - state.beta2) * g * g;
      const double m_hat = m.v[i] / bc1;
      const double v_hat = v.v[i] / bc2;
      p.value.v[i] = snap_f32(p.value.v[i] - state.lr * m_hat / (std::sqrt(v_hat) + state.eps));
    }
  }
}

}  // namespace pdn
