#include "pdn/config.hpp"

#include <stdexcept>

namespace pdn {

void TrainConfig::validate() const {
  auto positive = [](int x, const char* what) {
    if (x <= 0) throw std::invalid_argument(std::string("config: ") + what + " must be positive");
  };
  positive(word_dim, "word_dim");
  positive(pos_dim, "pos_dim");
  positive(hidden, "hidden");
  positive(pan_hidden, "pan_hidden");
  positive(attn_hidden, "attn_hidden");
  positive(penultimate, "penultimate");
  positive(batch_size, "batch_size");
  positive(epochs, "epochs");
  positive(max_len, "max_len");
  if (dropout < 0.0 || dropout >= 1.0) throw std::invalid_argument("config: dropout must be in [0,1)");
  if (lr < 0.0) throw std::invalid_argument("config: lr must be nonnegative");
  decay.validate();
}

ModelDims TrainConfig::dims_for_vocab(int vocab_size) const {
  ModelDims d;
  d.vocab = vocab_size;
  d.word_dim = word_dim;
  d.pos_dim = pos_dim;
  d.hidden = hidden;
  d.pan_hidden = pan_hidden;
  d.attn_hidden = attn_hidden;
  d.penultimate = penultimate;
  d.classes = 3;
  d.max_len = max_len;
  return d;
}

}  // namespace pdn
