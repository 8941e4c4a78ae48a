#include "vtc/prompts.hpp"

namespace vtc {

std::string_view extract_think_content(std::string_view text) {
  const std::string_view open = kThinkOpen;
  const std::string_view close = kThinkClose;
  size_t begin = text.find(open);
  if (begin == std::string_view::npos) return text;
  size_t end = text.rfind(close);
  if (end == std::string_view::npos || end < begin + open.size()) return text;
  return text.substr(begin + open.size(), end - begin - open.size());
}

std::string_view strip_continuation_prefix(std::string_view text) {
  const std::string_view prefix = kContinuationPrefix;
  if (text.substr(0, prefix.size()) == prefix) return text.substr(prefix.size());
  return text;
}

std::string_view extract_reasoning(std::string_view output_text) {
  return strip_continuation_prefix(extract_think_content(output_text));
}

}  // namespace vtc
