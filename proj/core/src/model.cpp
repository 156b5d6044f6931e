#include "pdn/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pdn/init.hpp"

namespace pdn {

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "pdn") return ModelKind::kPdn;
  if (s == "nbow") return ModelKind::kNbow;
  if (s == "lstm") return ModelKind::kLstm;
  throw std::invalid_argument("unknown model kind '" + s + "' (expected pdn|nbow|lstm)");
}

std::string model_kind_to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kPdn: return "pdn";
    case ModelKind::kNbow: return "nbow";
    case ModelKind::kLstm: return "lstm";
  }
  return "?";
}

int argmax_lowest(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("argmax of empty vector");
  return static_cast<int>(std::max_element(xs.begin(), xs.end()) - xs.begin());
}

// ---- building blocks ----

std::vector<Var> lstm_unroll(Tape& tape, const std::vector<Var>& inputs, Var input_w, Var recur_w, Var bias) {
  const int hidden = tape.value(recur_w).cols();
  std::vector<Var> states;
  states.reserve(inputs.size());
  Var h = tape.constant(Tensor::zeros({hidden}));
  Var c = tape.constant(Tensor::zeros({hidden}));
  for (Var x : inputs) {
    const Var pre = tape.add(tape.affine(input_w, x, bias), tape.matvec(recur_w, h));
    const Var in_gate = tape.sigmoid(tape.slice(pre, 0, hidden));
    const Var forget_gate = tape.sigmoid(tape.slice(pre, hidden, hidden));
    const Var candidate = tape.tanh_act(tape.slice(pre, 2 * hidden, hidden));
    const Var out_gate = tape.sigmoid(tape.slice(pre, 3 * hidden, hidden));
    c = tape.add(tape.mul(forget_gate, c), tape.mul(in_gate, candidate));
    h = tape.mul(out_gate, tape.tanh_act(c));
    states.push_back(h);
  }
  return states;
}

Var pan_attention(Tape& tape, const std::vector<Var>& states, const std::vector<Var>& pos_embeds, Var pos_w,
                  Var pos_b, Var state_w, Var state_b, Var joint_w, Var joint_b, Var score_v,
                  const std::vector<std::uint8_t>& mask) {
  if (states.size() != pos_embeds.size()) throw std::invalid_argument("pan_attention: length mismatch");
  std::vector<Var> scores;
  scores.reserve(states.size());
  for (std::size_t t = 0; t < states.size(); ++t) {
    const Var pos_proj = tape.selu(tape.affine(pos_w, pos_embeds[t], pos_b));
    const Var state_proj = tape.selu(tape.affine(state_w, states[t], state_b));
    const Var joint = tape.relu(tape.affine(joint_w, tape.concat(state_proj, pos_proj), joint_b));
    scores.push_back(tape.tanh_act(tape.dot(score_v, joint)));
  }
  return tape.masked_softmax(tape.stack_scalars(scores), mask);
}

Var dwn_combine(Tape& tape, const std::vector<Var>& states, Var alpha, const std::vector<int>& positions,
                const DecaySpec& spec, bool break_decay_gradient) {
  if (states.size() != positions.size()) throw std::invalid_argument("dwn_combine: length mismatch");
  std::vector<double> weights(states.size());
  for (std::size_t t = 0; t < states.size(); ++t) weights[t] = decay(spec, positions[t]);
  return tape.decay_weighted_sum(states, alpha, weights, break_decay_gradient);
}

Var classifier_head(Tape& tape, Var pooled, Var hidden_w, Var hidden_b, Var out_w, Var out_b, double dropout_p,
                    bool training, Rng& rng, Var* penult_out) {
  const Var penult = tape.affine(hidden_w, pooled, hidden_b);
  if (penult_out) *penult_out = penult;
  const Var dropped = tape.dropout(penult, dropout_p, training, rng);
  return tape.softmax(tape.affine(out_w, dropped, out_b));
}

// ---- model ----

SentimentModel::SentimentModel(ModelKind kind, ModelDims dims, DecaySpec decay, double dropout_p)
    : kind_(kind), dims_(dims), decay_(decay), dropout_p_(dropout_p) {
  decay_.validate();
  if (dims_.vocab < 2) throw std::invalid_argument("model: vocab must include pad and unk");
  const int head_in = kind_ == ModelKind::kNbow ? dims_.word_dim : dims_.hidden;
  params_.add("embed.words", Tensor::zeros({dims_.vocab, dims_.word_dim}));
  if (kind_ == ModelKind::kPdn) params_.add("embed.positions", Tensor::zeros({dims_.max_len, dims_.pos_dim}));
  if (kind_ != ModelKind::kNbow) {
    params_.add("lstm.input_w", Tensor::zeros({4 * dims_.hidden, dims_.word_dim}));
    params_.add("lstm.recur_w", Tensor::zeros({4 * dims_.hidden, dims_.hidden}));
    params_.add("lstm.bias", Tensor::zeros({4 * dims_.hidden}));
  }
  if (kind_ == ModelKind::kPdn) {
    params_.add("pan.pos_w", Tensor::zeros({dims_.pan_hidden, dims_.pos_dim}));
    params_.add("pan.pos_b", Tensor::zeros({dims_.pan_hidden}));
    params_.add("pan.state_w", Tensor::zeros({dims_.pan_hidden, dims_.hidden}));
    params_.add("pan.state_b", Tensor::zeros({dims_.pan_hidden}));
    params_.add("pan.joint_w", Tensor::zeros({dims_.attn_hidden, 2 * dims_.pan_hidden}));
    params_.add("pan.joint_b", Tensor::zeros({dims_.attn_hidden}));
    params_.add("pan.score_v", Tensor::zeros({dims_.attn_hidden}));
  }
  params_.add("head.hidden_w", Tensor::zeros({dims_.penultimate, head_in}));
  params_.add("head.hidden_b", Tensor::zeros({dims_.penultimate}));
  params_.add("head.out_w", Tensor::zeros({dims_.classes, dims_.penultimate}));
  params_.add("head.out_b", Tensor::zeros({dims_.classes}));
}

void SentimentModel::init_params(Rng& rng) {
  for (Param& p : params_) {
    if (p.value.rank() == 2 && p.name != "embed.words") {
      p.value = glorot_init(p.value.dims, rng);
    } else if (p.name == "pan.score_v") {
      p.value = glorot_init(p.value.dims, rng);
    } else if (p.name == "embed.words") {
      p.value = glorot_init(p.value.dims, rng);
      // pad (0) and unk (1) rows start zero; pretrained tables overwrite this
      for (int r = 0; r < 2 && r < dims_.vocab; ++r)
        for (int i = 0; i < dims_.word_dim; ++i) p.value.row(r)[i] = 0.0;
    } else {
      p.value.fill(0.0);
    }
  }
  if (params_.has("lstm.bias")) {
    Tensor& b = params_.get("lstm.bias").value;
    for (int i = dims_.hidden; i < 2 * dims_.hidden; ++i) b.v[i] = 1.0;  // forget gate
  }
}

void SentimentModel::load_word_embeddings(const Tensor& table) {
  Param& words = params_.get("embed.words");
  if (!table.same_dims(words.value))
    throw std::invalid_argument("load_word_embeddings: table " + dims_to_string(table.dims) + " does not match " +
                                dims_to_string(words.value.dims));
  words.value = table;
}

void SentimentModel::copy_params_from(const SentimentModel& other) {
  if (other.params_.count() != params_.count()) throw std::invalid_argument("copy_params_from: layout mismatch");
  auto it = params_.begin();
  for (const Param& src : other.params_) {
    if (it->name != src.name || !it->value.same_dims(src.value))
      throw std::invalid_argument("copy_params_from: mismatch at '" + src.name + "'");
    it->value = src.value;
    ++it;
  }
}

void SentimentModel::check_example(const EncodedExample& ex) const {
  if (ex.ids.empty()) throw std::invalid_argument("model: empty example");
  if (ex.ids.size() != ex.positions.size()) throw std::invalid_argument("model: ids/positions length mismatch");
  if (static_cast<int>(ex.ids.size()) > dims_.max_len)
    throw std::invalid_argument("model: example longer than max_len");
  for (int id : ex.ids)
    if (id < 0 || id >= dims_.vocab) throw std::out_of_range("model: token id out of vocab");
  for (int p : ex.positions)
    if (p < 1 || p > dims_.max_len) throw std::out_of_range("model: position id out of [1, max_len]");
  if (ex.label < 0 || ex.label >= dims_.classes) throw std::out_of_range("model: label out of range");
}

std::vector<Var> SentimentModel::embed_tokens(Tape& tape, const std::vector<int>& ids) {
  Param& words = params_.get("embed.words");
  std::vector<Var> out;
  out.reserve(ids.size());
  for (int id : ids) {
    if (freeze_embeddings) {
      Tensor row({dims_.word_dim});
      std::copy_n(words.value.row(id), dims_.word_dim, row.v.begin());
      out.push_back(tape.constant(std::move(row)));
    } else {
      out.push_back(tape.lookup_row(words, id));
    }
  }
  return out;
}

Var SentimentModel::forward_loss(Tape& tape, const EncodedExample& ex, bool training, Rng& dropout_rng,
                                 Var* probs_out, ForwardTrace* trace) {
  check_example(ex);
  Var probs;
  switch (kind_) {
    case ModelKind::kPdn: probs = forward_pdn(tape, ex, training, dropout_rng, trace); break;
    case ModelKind::kNbow: probs = forward_nbow(tape, ex, training, dropout_rng, trace); break;
    case ModelKind::kLstm: probs = forward_lstm(tape, ex, training, dropout_rng, trace); break;
  }
  if (probs_out) *probs_out = probs;
  if (trace) {
    trace->probs = tape.value(probs).v;
    trace->predicted = argmax_lowest(trace->probs);
  }
  return tape.cross_entropy(probs, ex.label);
}

Var SentimentModel::forward_pdn(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace) {
  const int len = static_cast<int>(ex.ids.size());
  Param& positions = params_.get("embed.positions");

  const std::vector<Var> inputs = embed_tokens(tape, ex.ids);
  const std::vector<Var> states = lstm_unroll(tape, inputs, tape.param(params_.get("lstm.input_w")),
                                              tape.param(params_.get("lstm.recur_w")),
                                              tape.param(params_.get("lstm.bias")));
  std::vector<Var> pos_embeds;
  pos_embeds.reserve(len);
  for (int p : ex.positions) pos_embeds.push_back(tape.lookup_row(positions, p - 1));

  // Only real tokens reach the tape, so the attention support is the whole
  // sequence here; padded positions are masked out upstream in batching.
  const Var alpha = pan_attention(tape, states, pos_embeds, tape.param(params_.get("pan.pos_w")),
                                  tape.param(params_.get("pan.pos_b")), tape.param(params_.get("pan.state_w")),
                                  tape.param(params_.get("pan.state_b")), tape.param(params_.get("pan.joint_w")),
                                  tape.param(params_.get("pan.joint_b")), tape.param(params_.get("pan.score_v")),
                                  std::vector<std::uint8_t>(len, 1));
  const Var pooled = dwn_combine(tape, states, alpha, ex.positions, decay_, break_decay_gradient);

  Var penult;
  const Var probs = classifier_head(tape, pooled, tape.param(params_.get("head.hidden_w")),
                                    tape.param(params_.get("head.hidden_b")), tape.param(params_.get("head.out_w")),
                                    tape.param(params_.get("head.out_b")), dropout_p_, training, rng, &penult);
  if (trace) {
    trace->positions = ex.positions;
    trace->alpha = tape.value(alpha).v;
    trace->decay_weights.resize(len);
    trace->hidden = Tensor({len, dims_.hidden});
    trace->decayed = Tensor({len, dims_.hidden});
    for (int t = 0; t < len; ++t) {
      trace->decay_weights[t] = decay(decay_, ex.positions[t]);
      const Tensor& h = tape.value(states[t]);
      for (int i = 0; i < dims_.hidden; ++i) {
        trace->hidden.row(t)[i] = h.v[i];
        trace->decayed.row(t)[i] = h.v[i] * trace->decay_weights[t];
      }
    }
    trace->pooled = tape.value(pooled);
    trace->penult = tape.value(penult);
  }
  return probs;
}

Var SentimentModel::forward_nbow(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace) {
  // Canonical bag: counts per ascending token id, so token order can never
  // change the sum, not even in the last bit.
  std::map<int, int> counts;
  for (int id : ex.ids) counts[id] += 1;
  std::vector<int> ids, reps;
  for (auto& [id, c] : counts) {
    ids.push_back(id);
    reps.push_back(c);
  }
  Param& words = params_.get("embed.words");
  Var bag;
  if (freeze_embeddings) {
    Tensor sum({dims_.word_dim});
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const double* row = words.value.row(ids[k]);
      for (int i = 0; i < dims_.word_dim; ++i) sum.v[i] += reps[k] * row[i];
    }
    bag = tape.constant(std::move(sum));
  } else {
    bag = tape.lookup_bag(words, ids, reps);
  }
  Var penult;
  const Var probs = classifier_head(tape, bag, tape.param(params_.get("head.hidden_w")),
                                    tape.param(params_.get("head.hidden_b")), tape.param(params_.get("head.out_w")),
                                    tape.param(params_.get("head.out_b")), dropout_p_, training, rng, &penult);
  if (trace) {
    trace->pooled = tape.value(bag);
    trace->penult = tape.value(penult);
  }
  return probs;
}

Var SentimentModel::forward_lstm(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace) {
  const std::vector<Var> inputs = embed_tokens(tape, ex.ids);
  const std::vector<Var> states = lstm_unroll(tape, inputs, tape.param(params_.get("lstm.input_w")),
                                              tape.param(params_.get("lstm.recur_w")),
                                              tape.param(params_.get("lstm.bias")));
  const Var last = states.back();  // final valid hidden state; no padding here
  Var penult;
  const Var probs = classifier_head(tape, last, tape.param(params_.get("head.hidden_w")),
                                    tape.param(params_.get("head.hidden_b")), tape.param(params_.get("head.out_w")),
                                    tape.param(params_.get("head.out_b")), dropout_p_, training, rng, &penult);
  if (trace) {
    trace->pooled = tape.value(last);
    trace->penult = tape.value(penult);
  }
  return probs;
}

std::vector<double> SentimentModel::predict_probs(const EncodedExample& ex, ForwardTrace* trace) {
  Tape tape;
  Rng unused(0);  // dropout is off at inference, never drawn from
  Var probs;
  forward_loss(tape, ex, /*training=*/false, unused, &probs, trace);
  return tape.value(probs).v;
}

int SentimentModel::predict(const EncodedExample& ex, ForwardTrace* trace) {
  return argmax_lowest(predict_probs(ex, trace));
}

}  // namespace pdn
