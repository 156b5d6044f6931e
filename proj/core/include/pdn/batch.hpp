#pragma once

#include <cstdint>
#include <vector>

#include "pdn/dataset.hpp"
#include "pdn/model.hpp"
#include "pdn/rng.hpp"
#include "pdn/vocab.hpp"

namespace pdn {

/// Window the tokens down to at most n, keeping the full aspect span and
/// centering it as much as the sentence allows. Fails if the span itself is
/// longer than n.
Example truncate_to_window(const Example& ex, int n);

/// Truncate, map tokens to ids, encode positions (distances clamp to n).
EncodedExample encode_example(const Example& ex, const Vocab& vocab, int n);

/// Padded batch matrices, all rows x n. mask is 1 on real tokens; position
/// ids at padding are n (clamped, never read under the mask).
struct Batch {
  int rows = 0;
  int width = 0;
  std::vector<int> token_ids;
  std::vector<int> position_ids;
  std::vector<std::uint8_t> mask;
  std::vector<int> labels;
  std::vector<int> lengths;

  EncodedExample example(int row) const;
};

/// Seeded shuffle (when asked), span-preserving truncation, last partial
/// batch kept. Never drops or duplicates an example.
std::vector<Batch> make_batches(const std::vector<Example>& examples, const Vocab& vocab, int n, int batch_size,
                                Rng& rng, bool shuffle);

}  // namespace pdn
