#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>

#include "vtc/backend.hpp"
#include "vtc/segmenter.hpp"

namespace vtc {

inline constexpr const char* kUnknownImage = "<unknown image>";

/// Deterministic scripted backend with a lossless image-to-text registry.
///
/// register_rendered() maps every page's content hash back to its source
/// segment text, so the mock acts as a perfect-OCR stand-in: the response to
/// call k depends only on (question, k, decoded prior text). k itself is
/// derived from the prompt - the number of decoded prior segments plus one -
/// which keeps the mock stateless across parallel requests. Prompts whose
/// images are not all registered fall back to a per-question call counter.
class MockBackend : public Backend {
 public:
  /// Ordered responses for one question; call k returns responses[k-1].
  void add_script(const std::string& question, std::vector<std::string> responses);

  /// Lossless-fixture verification: before answering call k, assert that the
  /// decoded prior text equals segments[0..k-2] concatenated.
  void expect_segments(const std::string& question, std::vector<std::string> segments);

  BackendOutput complete(const Prompt& prompt) override;
  void register_rendered(std::string_view segment_text,
                         std::span<const PageImage> pages) override;

  /// Registry lookup; kUnknownImage when the page was never registered.
  std::string decode_page(const PageImage& page) const;

  size_t registry_size() const;

 private:
  std::vector<std::string> decode_groups(std::span<const PageImage> images, bool* all_known) const;

  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::string>> scripts_;
  std::map<std::string, std::vector<std::string>> expected_;
  std::map<std::string, size_t> counters_;
  std::unordered_map<uint64_t, std::string> registry_;
};

/// Script material for one synthetic trace: the iterative per-step responses
/// (think-wrapped segments, continuation prefix from step 2 on, answer span
/// on the last) and the equivalent one-pass response.
struct LosslessFixture {
  std::string question;
  std::string trace;
  std::string answer;
  std::vector<std::string> segments;
  std::vector<std::string> iterative_responses;
  std::string one_pass_response;
};

LosslessFixture make_lossless_fixture(const std::string& question, const std::string& trace,
                                      const std::string& answer, size_t eta, const Tokenizer& tok);

/// Installs the fixture's script and expected segments on a mock.
void install_fixture(MockBackend& mock, const LosslessFixture& fixture);

}  // namespace vtc
