#include "pdn/gradcheck.hpp"

#include <algorithm>

#include "pdn/finite_diff.hpp"
#include "pdn/position.hpp"

namespace pdn {

GradCheckReport gradcheck_model(SentimentModel& model, const EncodedExample& ex, double h) {
  Rng unused(0);

  auto loss_value = [&]() {
    Tape tape;
    const Var loss = model.forward_loss(tape, ex, /*training=*/false, unused);
    return tape.value(loss).v[0];
  };

  // analytic route
  model.params().zero_grads();
  {
    Tape tape;
    const Var loss = model.forward_loss(tape, ex, /*training=*/false, unused);
    tape.backward(loss);
  }
  std::vector<Tensor> analytic;
  for (const Param& p : model.params()) analytic.push_back(p.grad);

  // finite-difference route, swapping each tensor's values in place
  GradCheckReport report;
  std::size_t k = 0;
  for (Param& p : model.params()) {
    auto f = [&](const Tensor& candidate) {
      Tensor saved = std::move(p.value);
      p.value = candidate;
      const double out = loss_value();
      p.value = std::move(saved);
      return out;
    };
    const Tensor numeric = finite_difference_grad(f, p.value, h);
    GradCheckEntry entry{p.name, max_rel_error(analytic[k], numeric)};
    report.worst = std::max(report.worst, entry.max_rel_err);
    report.entries.push_back(std::move(entry));
    ++k;
  }
  return report;
}

GradCheckReport run_model_gradcheck(ModelKind kind, DecayKind decay_kind, std::uint64_t seed, int n,
                                    bool break_decay_gradient, double lambda) {
  Rng rng(derive_seed(seed, 0x6c));
  DecaySpec spec;
  spec.kind = decay_kind;
  spec.lambda = lambda > 0.0 ? lambda : 0.2 + 1.3 * rng.uniform();

  ModelDims dims;
  dims.vocab = 12;
  dims.word_dim = 8;
  dims.pos_dim = 4;
  dims.hidden = 6;
  dims.pan_hidden = 5;
  dims.attn_hidden = 7;
  dims.penultimate = 9;
  dims.classes = 3;
  dims.max_len = std::max(n, 2);

  SentimentModel model(kind, dims, spec, /*dropout_p=*/0.5);
  model.break_decay_gradient = break_decay_gradient;
  model.init_params(rng);

  EncodedExample ex;
  const int len = std::max(2, n);
  const int span_start = rng.uniform_int(1, len);
  const int span_end = std::min(len, span_start + rng.uniform_int(0, 1));
  for (int i = 0; i < len; ++i) ex.ids.push_back(rng.uniform_int(2, dims.vocab - 1));
  ex.positions = encode_positions(len, span_start, span_end);
  for (int& p : ex.positions) p = std::min(p, dims.max_len);
  ex.label = rng.uniform_int(0, dims.classes - 1);
  return gradcheck_model(model, ex);
}

}  // namespace pdn
