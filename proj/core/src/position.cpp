#include "pdn/position.hpp"

#include <stdexcept>
#include <string>

namespace pdn {

std::vector<int> encode_positions(int len, int span_start, int span_end) {
  if (len <= 0 || span_start < 1 || span_end < span_start || span_end > len)
    throw std::invalid_argument("encode_positions: bad span [" + std::to_string(span_start) + "," +
                                std::to_string(span_end) + "] for length " + std::to_string(len));
  std::vector<int> p(len);
  for (int i = 1; i <= len; ++i) {
    if (i < span_start)
      p[i - 1] = span_start - i + 1;
    else if (i > span_end)
      p[i - 1] = i - span_end + 1;
    else
      p[i - 1] = 1;
  }
  return p;
}

}  // namespace pdn
