#include "pdn/vocab.hpp"

#include <sstream>
#include <stdexcept>

#include "pdn/dataset.hpp"

namespace pdn {

Vocab::Vocab() {
  // Angle brackets cannot survive the tokenizer, so these sentinels never
  // collide with a real token.
  add("<pad>");
  add("<unk>");
}

int Vocab::add(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  ids_.emplace(token, id);
  tokens_.push_back(token);
  return id;
}

int Vocab::id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocab::token(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("vocab: id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

Vocab Vocab::build(const std::vector<Example>& examples) {
  Vocab v;
  for (const Example& ex : examples)
    for (const std::string& t : ex.tokens) v.add(t);
  return v;
}

std::string Vocab::to_lines() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\n';
  }
  return out;
}

Vocab Vocab::from_lines(const std::string& blob) {
  Vocab v;
  std::istringstream in(blob);
  std::string line;
  int idx = 0;
  while (std::getline(in, line)) {
    if (idx == 0 || idx == 1) {
      if (line != v.token(idx)) throw std::invalid_argument("vocab: blob missing pad/unk sentinels");
    } else if (!line.empty()) {
      v.add(line);
    }
    ++idx;
  }
  return v;
}

}  // namespace pdn
