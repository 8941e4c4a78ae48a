#include "vtc/vision_tokens.hpp"

#include <nlohmann/json.hpp>

#include "vtc/errors.hpp"

namespace vtc {

size_t VisionTokenModel::tokens_for(int width_px, int height_px) const {
  if (width_px <= 0 || height_px <= 0) throw UsageError("vision tokens: empty page");
  size_t eff = static_cast<size_t>(effective_px());
  size_t cols = (static_cast<size_t>(width_px) + eff - 1) / eff;
  size_t rows = (static_cast<size_t>(height_px) + eff - 1) / eff;
  return cols * rows;
}

size_t count_vision_tokens(std::span<const PageImage> pages, const VisionTokenModel& model) {
  size_t total = 0;
  for (const PageImage& p : pages) total += model.tokens_for(p.width_px, p.height_px);
  return total;
}

double compression_ratio(size_t text_tokens, size_t vision_tokens) {
  if (vision_tokens == 0)
    throw UsageError("compression ratio undefined: no rendered content (zero vision tokens)");
  return static_cast<double>(text_tokens) / static_cast<double>(vision_tokens);
}

std::string to_json_line(const TokenStatsRecord& rec) {
  nlohmann::json j;
  j["item"] = rec.item;
  j["text_tokens"] = rec.text_tokens;
  j["vision_tokens"] = rec.vision_tokens;
  if (rec.vision_tokens > 0)
    j["ratio"] = compression_ratio(rec.text_tokens, rec.vision_tokens);
  else
    j["ratio"] = nullptr;
  return j.dump();
}

}  // namespace vtc
