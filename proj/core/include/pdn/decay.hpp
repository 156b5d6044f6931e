#pragma once

#include <string>

namespace pdn {

enum class DecayKind { kInverse, kExponential, kTangent };

/// Distance-based decay weighting: a fixed, parameter-less function of a
/// token's distance from the aspect span. lambda is a hyperparameter, never
/// learned, and no gradient flows through the decay value.
struct DecaySpec {
  DecayKind kind = DecayKind::kInverse;
  double lambda = 1.1333;

  /// Throws if lambda < 0, or lambda == 0 for the inverse kind.
  void validate() const;
};

/// d(x) for a positive distance x:
///   inverse:      lambda / x
///   exponential:  e^(-lambda * x)
///   tangent:      1 - tanh(lambda * x)
/// Inverse with x == 0 fails ("singular decay input").
double decay(const DecaySpec& spec, double x);

DecayKind decay_kind_from_string(const std::string& name);
std::string decay_kind_to_string(DecayKind kind);

}  // namespace pdn
