#include "vtc/backend_mock.hpp"

#include "vtc/errors.hpp"
#include "vtc/prompts.hpp"
#include "vtc/util.hpp"

namespace vtc {

void MockBackend::add_script(const std::string& question, std::vector<std::string> responses) {
  std::lock_guard<std::mutex> lock(mu_);
  scripts_[question] = std::move(responses);
}

void MockBackend::expect_segments(const std::string& question,
                                  std::vector<std::string> segments) {
  std::lock_guard<std::mutex> lock(mu_);
  expected_[question] = std::move(segments);
}

void MockBackend::register_rendered(std::string_view segment_text,
                                    std::span<const PageImage> pages) {
  std::lock_guard<std::mutex> lock(mu_);
  for (const PageImage& page : pages) {
    uint64_t h = fnv1a64(std::span<const uint8_t>(page.png_bytes.data(), page.png_bytes.size()));
    auto it = registry_.find(h);
    if (it != registry_.end()) {
      if (it->second != segment_text)
        throw BackendError("mock registry: hash collision between different segment texts");
      continue;  // idempotent
    }
    registry_.emplace(h, std::string(segment_text));
  }
}

std::string MockBackend::decode_page(const PageImage& page) const {
  std::lock_guard<std::mutex> lock(mu_);
  uint64_t h = fnv1a64(std::span<const uint8_t>(page.png_bytes.data(), page.png_bytes.size()));
  auto it = registry_.find(h);
  return it == registry_.end() ? kUnknownImage : it->second;
}

size_t MockBackend::registry_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return registry_.size();
}

std::vector<std::string> MockBackend::decode_groups(std::span<const PageImage> images,
                                                    bool* all_known) const {
  std::vector<std::string> groups;
  *all_known = true;
  std::lock_guard<std::mutex> lock(mu_);
  for (const PageImage& page : images) {
    uint64_t h = fnv1a64(std::span<const uint8_t>(page.png_bytes.data(), page.png_bytes.size()));
    auto it = registry_.find(h);
    if (it == registry_.end()) {
      *all_known = false;
      groups.push_back(kUnknownImage);
      continue;
    }
    if (groups.empty() || groups.back() != it->second) groups.push_back(it->second);
  }
  return groups;
}

BackendOutput MockBackend::complete(const Prompt& prompt) {
  bool all_known = false;
  std::vector<std::string> prior = decode_groups(prompt.images, &all_known);

  size_t call_index;  // 1-based
  if (prompt.images.empty()) {
    call_index = 1;
  } else if (all_known) {
    call_index = prior.size() + 1;
  } else {
    std::lock_guard<std::mutex> lock(mu_);
    call_index = ++counters_[prompt.question];
  }

  std::vector<std::string> expected;
  std::vector<std::string> responses;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = scripts_.find(prompt.question);
    if (it == scripts_.end())
      throw BackendError("mock: no script for question: " + prompt.question);
    responses = it->second;
    auto ex = expected_.find(prompt.question);
    if (ex != expected_.end()) expected = ex->second;
  }

  if (!expected.empty()) {
    std::string want;
    for (size_t i = 0; i + 1 < call_index && i < expected.size(); ++i) want += expected[i];
    std::string got;
    for (const std::string& g : prior) got += g;
    if (got != want)
      throw BackendError("mock: decoded prior text mismatch at call " +
                         std::to_string(call_index));
  }

  if (call_index > responses.size())
    throw BackendError("mock: script exhausted for question at call " +
                       std::to_string(call_index));

  BackendOutput out;
  out.text = responses[call_index - 1];
  out.completion_tokens = (out.text.size() + 3) / 4;  // char4-style accounting
  out.finish_reason = FinishReason::kStop;
  return out;
}

LosslessFixture make_lossless_fixture(const std::string& question, const std::string& trace,
                                      const std::string& answer, size_t eta,
                                      const Tokenizer& tok) {
  LosslessFixture fx;
  fx.question = question;
  fx.trace = trace;
  fx.answer = answer;

  for (Segment& seg : segment_trace(trace, eta, tok)) fx.segments.push_back(std::move(seg.text));

  const size_t n = fx.segments.size();
  for (size_t k = 1; k <= n; ++k) {
    std::string resp = kThinkOpen;
    if (k > 1) resp += kContinuationPrefix;
    resp += fx.segments[k - 1];
    resp += kThinkClose;
    if (k == n) resp += std::string(kAnswerOpen) + answer + kAnswerClose;
    fx.iterative_responses.push_back(std::move(resp));
  }
  fx.one_pass_response =
      std::string(kThinkOpen) + trace + kThinkClose + kAnswerOpen + answer + kAnswerClose;
  return fx;
}

void install_fixture(MockBackend& mock, const LosslessFixture& fixture) {
  mock.add_script(fixture.question, fixture.iterative_responses);
  mock.expect_segments(fixture.question, fixture.segments);
}

}  // namespace vtc
