#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtc/page_image.hpp"

namespace vtc {

struct SamplingParams {
  double temperature = 0.6;
  double top_p = 0.95;
  size_t max_new_tokens = 8192;
};

/// One generation request: system prompt, question, and the rendered pages of
/// all prior reasoning segments, in segment order. The image span must stay
/// alive for the duration of the call.
struct Prompt {
  std::string system_prompt;
  std::string question;
  std::span<const PageImage> images;
  SamplingParams sampling;
};

enum class FinishReason { kStop, kLength, kError };

std::string to_string(FinishReason r);
FinishReason finish_reason_from_string(std::string_view s);

struct BackendOutput {
  std::string text;
  size_t completion_tokens = 0;
  FinishReason finish_reason = FinishReason::kStop;
};

/// Generation backend. Implementations must tolerate concurrent complete()
/// calls up to the caller's in-flight cap.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendOutput complete(const Prompt& prompt) = 0;

  /// Provenance hook: the engine reports every (segment text, rendered pages)
  /// pair it produces. Backends that model visual decoding (the mock) index
  /// them; the wire client ignores them.
  virtual void register_rendered(std::string_view segment_text,
                                 std::span<const PageImage> pages) {
    (void)segment_text;
    (void)pages;
  }
};

/// Chat-completions request body for a prompt: system message plus one user
/// message whose content lists the question text first, then one image part
/// per page (base64 data URL), in order. Keys are serialized sorted, so the
/// mapping is canonical: byte-equal bodies iff equal prompts (up to image
/// byte equality).
std::string canonical_request_body(const Prompt& prompt, const std::string& model);

}  // namespace vtc
