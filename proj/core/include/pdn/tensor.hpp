#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdn {

/// Dense row-major tensor of doubles. Computation runs at 64-bit precision
/// throughout; parameters are kept on the 32-bit float grid (see snap_f32)
/// so the float32 checkpoint format is lossless.
struct Tensor {
  std::vector<int> dims;
  std::vector<double> v;

  Tensor() = default;
  explicit Tensor(std::vector<int> d);
  Tensor(std::vector<int> d, std::vector<double> values);

  static Tensor zeros(std::vector<int> d) { return Tensor(std::move(d)); }
  static Tensor scalar(double x) { return Tensor({1}, {x}); }

  int size() const { return static_cast<int>(v.size()); }
  int rank() const { return static_cast<int>(dims.size()); }
  int rows() const;
  int cols() const;

  double* row(int r);
  const double* row(int r) const;

  bool same_dims(const Tensor& o) const { return dims == o.dims; }
  bool all_finite() const;

  void fill(double x);
};

std::string dims_to_string(const std::vector<int>& dims);

/// Throws if a and b differ in shape; `what` names the operation for the message.
void check_same_dims(const Tensor& a, const Tensor& b, const char* what);

/// Round to the nearest value representable as a 32-bit float.
inline double snap_f32(double x) { return static_cast<double>(static_cast<float>(x)); }

/// Snap every element of t to the float grid in place.
void snap_f32_inplace(Tensor& t);

}  // namespace pdn
