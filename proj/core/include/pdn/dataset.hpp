#pragma once

#include <string>
#include <vector>

#include "pdn/tensor.hpp"
#include "pdn/vocab.hpp"

namespace pdn {

/// Class order is fixed: negative=0, neutral=1, positive=2. Argmax ties are
/// broken toward the lowest index.
enum class Polarity { kNegative = 0, kNeutral = 1, kPositive = 2 };

Polarity polarity_from_string(const std::string& s);
std::string polarity_to_string(Polarity p);

/// One labeled instance: tokens, 1-based inclusive aspect span, sentiment.
struct Example {
  std::vector<std::string> tokens;
  int span_start = 1;
  int span_end = 1;
  Polarity label = Polarity::kNeutral;
};

/// SemEval-2014 Task 4 XML: one Example per (sentence, aspectTerm) pair,
/// spans resolved through the from/to character offsets, conflict-polarity
/// terms dropped. Malformed XML fails with the line number; offsets that do
/// not line up with token boundaries widen to the covering tokens (warning
/// counted in parse_warnings()).
std::vector<Example> parse_semeval_xml(const std::string& path);

/// Lines of `sentence<TAB>aspect<TAB>from<TAB>to<TAB>label`; from/to of -1
/// selects the first token-level occurrence of the aspect phrase.
std::vector<Example> parse_tsv(const std::string& path);

/// Number of span-widening warnings emitted by the last parse on this thread.
int parse_warnings();

struct EmbeddingLoad {
  Tensor table;  // [V, dim]; rows for tokens absent from the file stay zero
  int dim = 0;
  int loaded = 0;
  int oov = 0;         // vocab tokens (beyond pad/unk) missing from the file
  int duplicates = 0;  // repeated tokens in the file; first entry wins
};

/// Text embeddings, one `token v1 v2 ... v_d` line each. Fails if lines
/// disagree on dimension, or if expected_dim >= 0 and the file differs.
EmbeddingLoad load_embeddings(const std::string& path, const Vocab& vocab, int expected_dim = -1);

}  // namespace pdn
