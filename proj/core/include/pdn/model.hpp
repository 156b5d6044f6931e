#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdn/autograd.hpp"
#include "pdn/decay.hpp"
#include "pdn/params.hpp"
#include "pdn/rng.hpp"

namespace pdn {

enum class ModelKind {
  kPdn,   // position-aware decay weighted network
  kNbow,  // bag of word embeddings, aspect- and order-blind
  kLstm,  // final LSTM state, aspect-blind
};

ModelKind model_kind_from_string(const std::string& s);
std::string model_kind_to_string(ModelKind k);

struct ModelDims {
  int vocab = 0;
  int word_dim = 300;
  int pos_dim = 25;
  int hidden = 100;       // LSTM units
  int pan_hidden = 50;    // each of the two projection layers
  int attn_hidden = 50;   // joint layer feeding the score vector
  int penultimate = 64;
  int classes = 3;
  int max_len = 80;
};

/// One encoded instance: token ids, clamped position encodings (1-based
/// distances), real length = ids.size(). Padding never appears here; batches
/// carry it, the model does not see it.
struct EncodedExample {
  std::vector<int> ids;
  std::vector<int> positions;
  int label = 0;
};

struct ForwardTrace {
  std::vector<int> positions;
  std::vector<double> decay_weights;  // d(p(t))
  std::vector<double> alpha;
  Tensor hidden;   // [len, hidden]
  Tensor decayed;  // [len, hidden], h_t * d(p(t))
  Tensor pooled;   // attention-weighted sum of decayed states
  Tensor penult;   // pre-dropout penultimate activations
  std::vector<double> probs;
  int predicted = -1;
};

// ---- tape-level building blocks ----

/// Standard LSTM unroll; gate order in the stacked preactivation is
/// [input, forget, candidate, output]. h_0 = c_0 = 0.
std::vector<Var> lstm_unroll(Tape& tape, const std::vector<Var>& inputs, Var input_w, Var recur_w, Var bias);

/// Attention over per-token states and position embeddings:
/// selu projections of both, relu joint layer on [state'; position'],
/// tanh-squashed scalar scores, masked softmax.
Var pan_attention(Tape& tape, const std::vector<Var>& states, const std::vector<Var>& pos_embeds, Var pos_w,
                  Var pos_b, Var state_w, Var state_b, Var joint_w, Var joint_b, Var score_v,
                  const std::vector<std::uint8_t>& mask);

/// Parameter-less pooling: sum_t alpha_t * d(p(t)) * h_t. The decay factors
/// are constants; gradients flow only through alpha and the states.
Var dwn_combine(Tape& tape, const std::vector<Var>& states, Var alpha, const std::vector<int>& positions,
                const DecaySpec& spec, bool break_decay_gradient = false);

/// Linear penultimate layer, dropout on it, softmax output.
Var classifier_head(Tape& tape, Var pooled, Var hidden_w, Var hidden_b, Var out_w, Var out_b, double dropout_p,
                    bool training, Rng& rng, Var* penult_out = nullptr);

/// A trainable sentiment classifier over encoded examples. Parameters are
/// registered in a fixed order per kind; the DWN stage adds none.
class SentimentModel {
 public:
  SentimentModel(ModelKind kind, ModelDims dims, DecaySpec decay, double dropout_p);

  /// Glorot matrices, zero biases (LSTM forget-gate block at 1.0), zero
  /// pad/unk embedding rows.
  void init_params(Rng& rng);

  /// Replace the word table, e.g. with pretrained vectors aligned to a vocab.
  void load_word_embeddings(const Tensor& table);

  /// Copy parameter values from another model with identical layout.
  void copy_params_from(const SentimentModel& other);

  /// Records the forward pass for one example and returns the loss node.
  Var forward_loss(Tape& tape, const EncodedExample& ex, bool training, Rng& dropout_rng, Var* probs_out = nullptr,
                   ForwardTrace* trace = nullptr);

  std::vector<double> predict_probs(const EncodedExample& ex, ForwardTrace* trace = nullptr);
  /// Argmax class; ties break toward the lowest class index.
  int predict(const EncodedExample& ex, ForwardTrace* trace = nullptr);

  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }

  ModelKind kind() const { return kind_; }
  const ModelDims& dims() const { return dims_; }
  const DecaySpec& decay_spec() const { return decay_; }
  double dropout_prob() const { return dropout_p_; }

  bool freeze_embeddings = false;
  /// Negative control for the gradient checker; see dwn_combine.
  bool break_decay_gradient = false;

 private:
  Var forward_pdn(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace);
  Var forward_nbow(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace);
  Var forward_lstm(Tape& tape, const EncodedExample& ex, bool training, Rng& rng, ForwardTrace* trace);
  std::vector<Var> embed_tokens(Tape& tape, const std::vector<int>& ids);
  void check_example(const EncodedExample& ex) const;

  ModelKind kind_;
  ModelDims dims_;
  DecaySpec decay_;
  double dropout_p_;
  ParamStore params_;
};

int argmax_lowest(const std::vector<double>& xs);

}  // namespace pdn
