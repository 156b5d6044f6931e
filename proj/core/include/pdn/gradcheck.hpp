#pragma once

#include <string>
#include <vector>

#include "pdn/model.hpp"

namespace pdn {

struct GradCheckEntry {
  std::string name;
  double max_rel_err = 0.0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double worst = 0.0;
  bool passed(double tol = 1e-4) const { return worst < tol; }
};

/// Compare the tape gradient of the model's loss on one example against
/// central finite differences, parameter tensor by parameter tensor.
/// Deterministic: dropout is disabled for both routes.
GradCheckReport gradcheck_model(SentimentModel& model, const EncodedExample& ex, double h = 1e-5);

/// Small random model + example for the full-model check: vocab 12, word dim
/// 8, position dim 4, 6 LSTM units, sentence length n. Lambda is drawn from
/// (0.2, 1.5] unless given.
GradCheckReport run_model_gradcheck(ModelKind kind, DecayKind decay_kind, std::uint64_t seed, int n,
                                    bool break_decay_gradient = false, double lambda = -1.0);

}  // namespace pdn
