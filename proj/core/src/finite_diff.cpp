#include "pdn/finite_diff.hpp"

#include <cmath>
#include <stdexcept>

namespace pdn {

Tensor finite_difference_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h) {
  if (h <= 0.0) throw std::invalid_argument("finite_difference_grad: h must be positive");
  Tensor g = Tensor::zeros(x.dims);
  Tensor probe = x;
  for (int i = 0; i < x.size(); ++i) {
    const double saved = probe.v[i];
    probe.v[i] = saved + h;
    const double up = f(probe);
    probe.v[i] = saved - h;
    const double down = f(probe);
    probe.v[i] = saved;
    g.v[i] = (up - down) / (2.0 * h);
  }
  return g;
}

double rel_error(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double max_rel_error(const Tensor& a, const Tensor& b) {
  check_same_dims(a, b, "max_rel_error");
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i) worst = std::max(worst, rel_error(a.v[i], b.v[i]));
  return worst;
}

}  // namespace pdn
