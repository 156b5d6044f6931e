#include "pdn/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "pdn/errors.hpp"
#include "pdn/tokenize.hpp"

namespace pdn {

namespace {

thread_local int g_parse_warnings = 0;

std::string lower(std::string s) {
  for (char& c : s)
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

int parse_warnings() { return g_parse_warnings; }

void reset_parse_warnings() { g_parse_warnings = 0; }

Polarity polarity_from_string(const std::string& s) {
  const std::string l = lower(s);
  if (l == "positive") return Polarity::kPositive;
  if (l == "negative") return Polarity::kNegative;
  if (l == "neutral") return Polarity::kNeutral;
  throw DataError("unknown polarity '" + s + "'");
}

std::string polarity_to_string(Polarity p) {
  switch (p) {
    case Polarity::kNegative: return "negative";
    case Polarity::kNeutral: return "neutral";
    case Polarity::kPositive: return "positive";
  }
  return "?";
}

// Map a [from, to) character range onto the covering token span (1-based,
// inclusive). Boundaries that fall inside tokens widen to the whole token and
// count a warning.
std::pair<int, int> span_from_char_range(const std::vector<Token>& tokens, long from, long to,
                                         const std::string& where) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    const Token& t = tokens[i];
    if (t.end <= from || t.begin >= to) continue;
    if (first < 0) first = i;
    last = i;
  }
  if (first < 0) throw DataError(where + ": character range [" + std::to_string(from) + "," + std::to_string(to) +
                                 ") covers no token");
  if (tokens[first].begin != from || tokens[last].end != to) {
    ++g_parse_warnings;
    std::cerr << "warning: " << where << ": span [" << from << "," << to << ") widened to token boundaries\n";
  }
  return {first + 1, last + 1};
}

// First token-level occurrence of the aspect phrase; -1 if absent.
int find_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return -1;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < phrase.size(); ++j)
      if (tokens[i + j] != phrase[j]) {
        hit = false;
        break;
      }
    if (hit) return static_cast<int>(i);
  }
  return -1;
}

Example make_example(const std::string& text, const std::string& aspect, long from, long to,
                     const std::string& polarity, const std::string& where) {
  const std::vector<Token> toks = tokenize_with_offsets(text);
  if (toks.empty()) throw DataError(where + ": empty sentence");
  Example ex;
  for (const Token& t : toks) ex.tokens.push_back(t.text);
  ex.label = polarity_from_string(polarity);
  if (from >= 0 && to > from) {
    auto [s, e] = span_from_char_range(toks, from, to, where);
    ex.span_start = s;
    ex.span_end = e;
  } else {
    const std::vector<std::string> phrase = tokenize(aspect);
    const int at = find_phrase(ex.tokens, phrase);
    if (at < 0) throw DataError(where + ": aspect '" + aspect + "' not found in sentence");
    ex.span_start = at + 1;
    ex.span_end = at + static_cast<int>(phrase.size());
  }
  return ex;
}

std::vector<Example> parse_tsv(const std::string& path) {
  g_parse_warnings = 0;
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<Example> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    const std::string where = path + ":" + std::to_string(line_no);
    if (cols.size() != 5) throw DataError(where + ": expected 5 tab-separated columns, got " + std::to_string(cols.size()));
    char* end = nullptr;
    const long from = std::strtol(cols[2].c_str(), &end, 10);
    if (end == cols[2].c_str() || *end) throw DataError(where + ": bad 'from' offset '" + cols[2] + "'");
    const long to = std::strtol(cols[3].c_str(), &end, 10);
    if (end == cols[3].c_str() || *end) throw DataError(where + ": bad 'to' offset '" + cols[3] + "'");
    out.push_back(make_example(cols[0], cols[1], from, to, cols[4], where));
  }
  return out;
}

EmbeddingLoad load_embeddings(const std::string& path, const Vocab& vocab, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings '" + path + "'");
  EmbeddingLoad result;
  std::vector<bool> seen(vocab.size(), false);
  std::string line;
  int line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected 'token v1 v2 ...'");
    const std::string token = line.substr(0, sp);
    values.clear();
    const char* p = line.c_str() + sp;
    while (*p) {
      char* end = nullptr;
      const double x = std::strtod(p, &end);
      if (end == p) break;
      values.push_back(x);
      p = end;
    }
    if (values.empty()) throw DataError(path + ":" + std::to_string(line_no) + ": no values");
    if (result.dim == 0) {
      result.dim = static_cast<int>(values.size());
      if (expected_dim >= 0 && result.dim != expected_dim)
        throw DataError(path + ": embedding dimension " + std::to_string(result.dim) + " does not match configured " +
                        std::to_string(expected_dim));
      result.table = Tensor({vocab.size(), result.dim});
    } else if (static_cast<int>(values.size()) != result.dim) {
      throw DataError(path + ":" + std::to_string(line_no) + ": dimension " + std::to_string(values.size()) +
                      " differs from first line's " + std::to_string(result.dim));
    }
    const int id = vocab.id(token);
    if (id == Vocab::kUnkId && token != vocab.token(Vocab::kUnkId)) continue;  // not in vocab
    if (id < 2) continue;  // pad and unk rows stay zero even if the file names them
    if (seen[id]) {
      ++result.duplicates;
      std::cerr << "warning: " << path << ":" << line_no << ": duplicate embedding for '" << token
                << "', first entry kept\n";
      continue;
    }
    seen[id] = true;
    ++result.loaded;
    double* row = result.table.row(id);
    for (int i = 0; i < result.dim; ++i) row[i] = snap_f32(values[i]);
  }
  if (result.dim == 0) throw DataError(path + ": no embedding entries");
  for (int id = 2; id < vocab.size(); ++id)
    if (!seen[id]) ++result.oov;
  return result;
}

}  // namespace pdn
