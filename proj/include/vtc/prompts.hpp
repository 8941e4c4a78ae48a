#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace vtc {

/// System prompt used by the iterative image-memory mode.
inline constexpr const char* kVtcSystemPrompt =
    "These images record your previous reasoning process.\n"
    "Based on this reasoning, continue and complete the final answer.\n"
    "Do not restart the reasoning.\n"
    "\n"
    "If no images are provided, start the reasoning from scratch.";

/// System prompt used by the one-pass baseline mode.
inline constexpr const char* kBaselineSystemPrompt = "You are a helpful assistant.";

inline constexpr const char* kContinuationPrefix = "Got it, let's continue. ";

inline constexpr const char* kThinkOpen = "<think>";
inline constexpr const char* kThinkClose = "</think>";
inline constexpr const char* kAnswerOpen = "<answer>";
inline constexpr const char* kAnswerClose = "</answer>";

/// Content of the outermost <think>...</think> pair, or the whole text when
/// unmarked. Does not trim.
std::string_view extract_think_content(std::string_view text);

/// Drops the leading continuation prefix when present.
std::string_view strip_continuation_prefix(std::string_view text);

/// Reasoning text of a model output: think content with the continuation
/// prefix removed. This is the text that gets rendered.
std::string_view extract_reasoning(std::string_view output_text);

}  // namespace vtc
