#include "pdn/tokenize.hpp"

#include <cctype>

namespace pdn {

namespace {
bool is_ascii_space(unsigned char c) { return c < 0x80 && std::isspace(c); }
bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
char lower_ascii(unsigned char c) { return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c); }
}  // namespace

std::vector<Token> tokenize_with_offsets(const std::string& text) {
  std::vector<Token> out;
  Token cur;
  auto flush = [&](int end) {
    if (!cur.text.empty()) {
      cur.end = end;
      out.push_back(cur);
      cur.text.clear();
    }
  };
  for (int i = 0; i < static_cast<int>(text.size()); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_ascii_space(c)) {
      flush(i);
    } else if (is_ascii_punct(c)) {
      flush(i);
      out.push_back(Token{std::string(1, static_cast<char>(c)), i, i + 1});
    } else {
      if (cur.text.empty()) cur.begin = i;
      cur.text.push_back(lower_ascii(c));
    }
  }
  flush(static_cast<int>(text.size()));
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  for (Token& t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace pdn
