#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdn/dataset.hpp"
#include "pdn/rng.hpp"

namespace pdn {

/// Geometry of the generated sentences. The near cue sits at distance
/// [near_min, near_max] from the aspect token, the far cue at least
/// min_margin further out, at most far_max.
struct DistanceProfile {
  int near_min = 1;
  int near_max = 3;
  int min_margin = 2;
  int far_max = 8;
  int max_extra_filler = 3;  // random filler padding on each end
};

inline constexpr const char* kAspectToken = "asp";
inline constexpr const char* kPositiveCue = "goodtok";
inline constexpr const char* kNegativeCue = "badtok";

/// Position-sensitive sentences no aspect-blind model can label: each one
/// contains one positive and one negative cue plus two surface-identical
/// aspect occurrences, and the span selects which occurrence is meant. The
/// label is the polarity of the cue nearer to the span (near range); the
/// opposite cue sits at far range. Geometry and polarity draws are
/// independent of the span choice, so the tokens alone say nothing about the
/// label; the span resolves it completely.
std::vector<Example> synth_generate(int count, Rng& rng, const DistanceProfile& profile = {});

/// Variants of ex with the aspect span moved onto the aspect occurrence
/// nearest the positive cue / nearest the negative cue (tokens unchanged).
/// Empty when the occurrences cannot be told apart by cue proximity.
struct FlipPair {
  Example near_positive;
  Example near_negative;
};
std::optional<FlipPair> make_flip_pair(const Example& ex);

/// Write examples to the TSV interchange format with explicit character
/// offsets for the span.
void write_tsv(const std::vector<Example>& examples, const std::string& path);

std::string detokenize(const std::vector<std::string>& tokens);

}  // namespace pdn
