#include "pdn/synth.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "pdn/errors.hpp"

namespace pdn {

namespace {
constexpr int kFillerWords = 40;

std::string filler(int i) {
  std::string s = "w";
  if (i < 10) s += '0';
  s += std::to_string(i);
  return s;
}
}  // namespace

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Layout is a chain `cue ..g1.. asp ..g2.. asp ..g3.. cue` inside filler
// noise, mirrored at random. The aspect span picks one of the two identical
// aspect occurrences; its nearer cue (gap g1 or g3, in the near range) sets
// the label, the opposite cue sits at far range (>= near + min_margin).
// Every draw below is independent of which occurrence the span picks, so the
// token sequence alone carries no label information: without the span, the
// Bayes-optimal accuracy is exactly one half.
std::vector<Example> synth_generate(int count, Rng& rng, const DistanceProfile& profile) {
  if (count <= 0) throw std::invalid_argument("synth_generate: count must be positive");
  if (profile.near_min < 1 || profile.near_max < profile.near_min || profile.min_margin < 1 ||
      profile.far_max < 2 * profile.near_max - profile.near_min + profile.min_margin)
    throw std::invalid_argument("synth_generate: inconsistent distance profile");

  std::vector<Example> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const int g1 = rng.uniform_int(profile.near_min, profile.near_max);
    const int g3 = rng.uniform_int(profile.near_min, profile.near_max);
    // both cross distances (g2+g3 and g2+g1) must land in far range
    const int g2 = rng.uniform_int(profile.min_margin + std::abs(g1 - g3), profile.far_max - std::max(g1, g3));
    const int extra_left = rng.uniform_int(0, profile.max_extra_filler);
    const int extra_right = rng.uniform_int(0, profile.max_extra_filler);
    const bool first_cue_positive = rng.bernoulli(0.5);
    const bool span_on_first = rng.bernoulli(0.5);
    const bool mirrored = rng.bernoulli(0.5);

    const int first_cue = extra_left + 1;  // 1-based
    const int first_asp = first_cue + g1;
    const int second_asp = first_asp + g2;
    const int second_cue = second_asp + g3;
    const int len = second_cue + extra_right;

    Example ex;
    ex.tokens.resize(len);
    for (int i = 0; i < len; ++i) ex.tokens[i] = filler(rng.uniform_int(1, kFillerWords));
    ex.tokens[first_cue - 1] = first_cue_positive ? kPositiveCue : kNegativeCue;
    ex.tokens[second_cue - 1] = first_cue_positive ? kNegativeCue : kPositiveCue;
    ex.tokens[first_asp - 1] = kAspectToken;
    ex.tokens[second_asp - 1] = kAspectToken;

    int span = span_on_first ? first_asp : second_asp;
    if (mirrored) {
      std::reverse(ex.tokens.begin(), ex.tokens.end());
      span = len - span + 1;
    }
    ex.span_start = ex.span_end = span;
    ex.label = (span_on_first == first_cue_positive) ? Polarity::kPositive : Polarity::kNegative;
    out.push_back(std::move(ex));
  }
  return out;
}

namespace {
int find_token(const std::vector<std::string>& tokens, const char* t) {
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i] == t) return static_cast<int>(i) + 1;  // 1-based
  return -1;
}

// The aspect occurrence closest to `cue_at`; it must be strictly closer to
// that cue than to the other one. 0 when no occurrence qualifies.
int occurrence_near(const std::vector<std::string>& tokens, int cue_at, int other_cue_at) {
  int best = 0, best_dist = 1 << 20;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != kAspectToken) continue;
    const int at = static_cast<int>(i) + 1;
    const int dist = std::abs(at - cue_at);
    if (dist < best_dist) {
      best = at;
      best_dist = dist;
    }
  }
  if (best == 0 || best_dist >= std::abs(best - other_cue_at)) return 0;
  return best;
}
}  // namespace

std::optional<FlipPair> make_flip_pair(const Example& ex) {
  const int pos_at = find_token(ex.tokens, kPositiveCue);
  const int neg_at = find_token(ex.tokens, kNegativeCue);
  if (pos_at < 0 || neg_at < 0) return std::nullopt;
  const int near_pos = occurrence_near(ex.tokens, pos_at, neg_at);
  const int near_neg = occurrence_near(ex.tokens, neg_at, pos_at);
  if (near_pos == 0 || near_neg == 0 || near_pos == near_neg) return std::nullopt;
  FlipPair pair{ex, ex};
  pair.near_positive.span_start = pair.near_positive.span_end = near_pos;
  pair.near_positive.label = Polarity::kPositive;
  pair.near_negative.span_start = pair.near_negative.span_end = near_neg;
  pair.near_negative.label = Polarity::kNegative;
  return pair;
}

void write_tsv(const std::vector<Example>& examples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  for (const Example& ex : examples) {
    const std::string sentence = detokenize(ex.tokens);
    // character offsets of the span in the detokenized sentence
    int from = 0;
    for (int i = 0; i < ex.span_start - 1; ++i) from += static_cast<int>(ex.tokens[i].size()) + 1;
    int to = from;
    for (int i = ex.span_start - 1; i < ex.span_end; ++i)
      to += static_cast<int>(ex.tokens[i].size()) + (i == ex.span_end - 1 ? 0 : 1);
    std::string aspect;
    for (int i = ex.span_start - 1; i < ex.span_end; ++i) {
      if (i > ex.span_start - 1) aspect += ' ';
      aspect += ex.tokens[i];
    }
    out << sentence << '\t' << aspect << '\t' << from << '\t' << to << '\t' << polarity_to_string(ex.label) << '\n';
  }
  if (!out) throw DataError("failed while writing '" + path + "'");
}

}  // namespace pdn
