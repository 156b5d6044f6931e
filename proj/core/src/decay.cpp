#include "pdn/decay.hpp"

#include <cmath>
#include <stdexcept>

namespace pdn {

void DecaySpec::validate() const {
  if (lambda < 0.0) throw std::invalid_argument("decay: lambda must be nonnegative");
  if (kind == DecayKind::kInverse && lambda == 0.0)
    throw std::invalid_argument("decay: inverse kind requires lambda > 0");
}

double decay(const DecaySpec& spec, double x) {
  switch (spec.kind) {
    case DecayKind::kInverse:
      if (x == 0.0) throw std::domain_error("decay: singular decay input");
      return spec.lambda / x;
    case DecayKind::kExponential:
      return std::exp(-spec.lambda * x);
    case DecayKind::kTangent:
      // 1 - tanh(y) written as 2/(e^{2y}+1): same function, but it keeps a
      // positive, strictly decreasing value long after tanh saturates to 1.
      return 2.0 / (std::exp(2.0 * spec.lambda * x) + 1.0);
  }
  throw std::logic_error("decay: unknown kind");
}

DecayKind decay_kind_from_string(const std::string& name) {
  if (name == "inverse") return DecayKind::kInverse;
  if (name == "expo" || name == "exponential") return DecayKind::kExponential;
  if (name == "tangent") return DecayKind::kTangent;
  throw std::invalid_argument("decay: unknown kind '" + name + "' (expected inverse|expo|tangent)");
}

std::string decay_kind_to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::kInverse: return "inverse";
    case DecayKind::kExponential: return "expo";
    case DecayKind::kTangent: return "tangent";
  }
  return "?";
}

}  // namespace pdn
