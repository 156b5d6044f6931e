#pragma once

#include <vector>

namespace pdn {

/// 1-based relative distance of each token to the nearest aspect token:
///   p(i) = k_s - i + 1   for i < k_s
///   p(i) = 1             for k_s <= i <= k_e
///   p(i) = i - k_e + 1   for i > k_e
/// Indices are 1-based; result[i-1] holds p(i). Fails on an empty or
/// out-of-range span.
std::vector<int> encode_positions(int len, int span_start, int span_end);

}  // namespace pdn
