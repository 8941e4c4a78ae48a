#pragma once

#include <span>
#include <string>
#include <vector>

#include "vtc/page_image.hpp"

namespace vtc {

/// Patch-grid vision token model: a page of W x H pixels costs
/// ceil(W / (patch * merge)) * ceil(H / (patch * merge)) tokens. Defaults
/// match common VLM patchification (14 px patches, 2x2 spatial merge).
struct VisionTokenModel {
  int patch_px = 14;
  int merge = 2;

  int effective_px() const { return patch_px * merge; }
  size_t tokens_for(int width_px, int height_px) const;
};

size_t count_vision_tokens(std::span<const PageImage> pages, const VisionTokenModel& model);

/// Eq. ratio = text_tokens / vision_tokens. Throws UsageError when
/// vision_tokens is zero (no rendered content).
double compression_ratio(size_t text_tokens, size_t vision_tokens);

/// One line-delimited accounting record ({text_tokens, vision_tokens, ratio}).
struct TokenStatsRecord {
  std::string item;
  size_t text_tokens = 0;
  size_t vision_tokens = 0;
};

std::string to_json_line(const TokenStatsRecord& rec);

}  // namespace vtc
