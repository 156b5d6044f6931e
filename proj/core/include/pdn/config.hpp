#pragma once

#include <cstdint>

#include "pdn/decay.hpp"
#include "pdn/model.hpp"

namespace pdn {

/// Training hyperparameters. Defaults: 300-d word vectors, 25-d position
/// embeddings, 100 LSTM units, 50+50 projection layers, 64-unit penultimate
/// layer with dropout 0.5, batches of 20, 30 epochs, Adam at 0.001.
struct TrainConfig {
  ModelKind model = ModelKind::kPdn;
  int word_dim = 300;
  int pos_dim = 25;
  int hidden = 100;
  int pan_hidden = 50;
  int attn_hidden = 50;
  int penultimate = 64;
  double dropout = 0.5;
  int batch_size = 20;
  int epochs = 30;
  double lr = 0.001;
  int max_len = 80;
  std::uint64_t seed = 42;
  DecaySpec decay{};
  bool freeze_embeddings = false;

  void validate() const;
  ModelDims dims_for_vocab(int vocab_size) const;
};

}  // namespace pdn
