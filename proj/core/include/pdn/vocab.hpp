#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace pdn {

struct Example;

/// Token table with id 0 reserved for padding and id 1 for unknowns. Ids are
/// assigned in first-seen order, so the same corpus order yields the same
/// table.
class Vocab {
 public:
  static constexpr int kPadId = 0;
  static constexpr int kUnkId = 1;

  Vocab();

  /// Id for token, inserting it if new.
  int add(const std::string& token);
  /// Id for token, kUnkId if absent.
  int id(const std::string& token) const;
  const std::string& token(int id) const;
  int size() const { return static_cast<int>(tokens_.size()); }

  static Vocab build(const std::vector<Example>& examples);

  /// One token per line, id order, for the checkpoint vocab blob.
  std::string to_lines() const;
  static Vocab from_lines(const std::string& blob);

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> tokens_;
};

}  // namespace pdn
