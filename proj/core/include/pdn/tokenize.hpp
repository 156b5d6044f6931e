#pragma once

#include <string>
#include <vector>

namespace pdn {

/// A token plus its [begin, end) byte range in the original text.
struct Token {
  std::string text;
  int begin = 0;
  int end = 0;
};

/// Lowercases (ASCII), splits on whitespace, and breaks ASCII punctuation
/// characters out as single-character tokens. Multi-byte UTF-8 sequences pass
/// through untouched as word characters. Offsets refer to the original bytes,
/// so spans given as character ranges can be mapped onto tokens.
std::vector<Token> tokenize_with_offsets(const std::string& text);

std::vector<std::string> tokenize(const std::string& text);

}  // namespace pdn
