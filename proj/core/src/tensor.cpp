#include "pdn/tensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pdn {

namespace {
int checked_product(const std::vector<int>& dims) {
  long long n = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("tensor: non-positive extent in " + dims_to_string(dims));
    n *= d;
  }
  if (n > (1LL << 31)) throw std::invalid_argument("tensor: too large " + dims_to_string(dims));
  return static_cast<int>(n);
}
}  // namespace

Tensor::Tensor(std::vector<int> d) : dims(std::move(d)), v(checked_product(dims), 0.0) {}

Tensor::Tensor(std::vector<int> d, std::vector<double> values) : dims(std::move(d)), v(std::move(values)) {
  if (checked_product(dims) != static_cast<int>(v.size()))
    throw std::invalid_argument("tensor: " + std::to_string(v.size()) + " values for shape " + dims_to_string(dims));
}

int Tensor::rows() const {
  if (rank() != 2) throw std::logic_error("tensor: rows() on rank-" + std::to_string(rank()));
  return dims[0];
}

int Tensor::cols() const {
  if (rank() != 2) throw std::logic_error("tensor: cols() on rank-" + std::to_string(rank()));
  return dims[1];
}

double* Tensor::row(int r) { return v.data() + static_cast<size_t>(r) * cols(); }
const double* Tensor::row(int r) const { return v.data() + static_cast<size_t>(r) * cols(); }

bool Tensor::all_finite() const {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void Tensor::fill(double x) {
  for (double& e : v) e = x;
}

std::string dims_to_string(const std::vector<int>& dims) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < dims.size(); ++i) os << (i ? "x" : "") << dims[i];
  os << "]";
  return os.str();
}

void check_same_dims(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_dims(b))
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " + dims_to_string(a.dims) + " vs " +
                                dims_to_string(b.dims));
}

void snap_f32_inplace(Tensor& t) {
  for (double& x : t.v) x = snap_f32(x);
}

}  // namespace pdn
