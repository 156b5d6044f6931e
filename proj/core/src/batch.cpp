#include "pdn/batch.hpp"

#include <algorithm>
#include <stdexcept>

#include "pdn/errors.hpp"
#include "pdn/position.hpp"

namespace pdn {

Example truncate_to_window(const Example& ex, int n) {
  const int len = static_cast<int>(ex.tokens.size());
  if (len <= n) return ex;
  const int span_len = ex.span_end - ex.span_start + 1;
  if (span_len > n)
    throw DataError("aspect span of length " + std::to_string(span_len) + " cannot fit in window of " +
                    std::to_string(n));
  // 1-based window start, centered on the span, clamped to keep it inside.
  const int lo = std::max(1, ex.span_end - n + 1);
  const int hi = std::min(ex.span_start, len - n + 1);
  int start = ex.span_start - (n - span_len) / 2;
  start = std::clamp(start, lo, hi);
  Example out;
  out.tokens.assign(ex.tokens.begin() + (start - 1), ex.tokens.begin() + (start - 1) + n);
  out.span_start = ex.span_start - start + 1;
  out.span_end = ex.span_end - start + 1;
  out.label = ex.label;
  return out;
}

EncodedExample encode_example(const Example& ex, const Vocab& vocab, int n) {
  const Example t = truncate_to_window(ex, n);
  EncodedExample enc;
  enc.label = static_cast<int>(t.label);
  enc.ids.reserve(t.tokens.size());
  for (const std::string& tok : t.tokens) enc.ids.push_back(vocab.id(tok));
  enc.positions = encode_positions(static_cast<int>(t.tokens.size()), t.span_start, t.span_end);
  for (int& p : enc.positions) p = std::min(p, n);
  return enc;
}

EncodedExample Batch::example(int row) const {
  EncodedExample enc;
  enc.label = labels[row];
  const int len = lengths[row];
  const int base = row * width;
  enc.ids.assign(token_ids.begin() + base, token_ids.begin() + base + len);
  enc.positions.assign(position_ids.begin() + base, position_ids.begin() + base + len);
  return enc;
}

std::vector<Batch> make_batches(const std::vector<Example>& examples, const Vocab& vocab, int n, int batch_size,
                                Rng& rng, bool shuffle) {
  if (examples.empty()) throw std::invalid_argument("make_batches: empty example list");
  if (batch_size <= 0) throw std::invalid_argument("make_batches: batch_size must be positive");
  std::vector<int> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  if (shuffle) {
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_int(0, i)]);
  }
  std::vector<Batch> out;
  for (std::size_t at = 0; at < order.size(); at += batch_size) {
    const int rows = static_cast<int>(std::min<std::size_t>(batch_size, order.size() - at));
    Batch b;
    b.rows = rows;
    b.width = n;
    b.token_ids.assign(static_cast<std::size_t>(rows) * n, Vocab::kPadId);
    b.position_ids.assign(static_cast<std::size_t>(rows) * n, n);
    b.mask.assign(static_cast<std::size_t>(rows) * n, 0);
    for (int r = 0; r < rows; ++r) {
      const EncodedExample enc = encode_example(examples[order[at + r]], vocab, n);
      const int len = static_cast<int>(enc.ids.size());
      b.labels.push_back(enc.label);
      b.lengths.push_back(len);
      for (int t = 0; t < len; ++t) {
        b.token_ids[r * n + t] = enc.ids[t];
        b.position_ids[r * n + t] = enc.positions[t];
        b.mask[r * n + t] = 1;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace pdn
