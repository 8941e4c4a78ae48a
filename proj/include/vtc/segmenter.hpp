#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vtc/tokenizer.hpp"

namespace vtc {

/// One reasoning segment. Concatenating segment texts in index order
/// reconstructs the original trace byte-exact.
struct Segment {
  size_t index = 1;  // 1-based ordinal
  std::string text;
  size_t token_count = 0;
};

/// Greedy fill under the token threshold `eta`, preferring paragraph
/// boundaries, then sentences, then a hard token split. Lossless; every
/// segment respects the budget; segments other than the last are filled past
/// eta/2 (anti-fragmentation guard, artifact policy). An empty trace yields
/// one empty segment. Throws UsageError when eta == 0.
std::vector<Segment> segment_trace(std::string_view trace, size_t eta, const Tokenizer& tok);

}  // namespace vtc
