#pragma once

#include <memory>

#include "vtc/backend.hpp"

namespace vtc {

/// OpenAI-compatible chat-completions client.
struct HttpBackendConfig {
  std::string url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model = "default";
  std::string api_key;       // sent as a bearer token when nonempty
  int timeout_s = 120;
  int max_attempts = 4;      // total tries incl. the first
  double backoff_base_s = 0.25;
  double backoff_cap_s = 4.0;
  size_t max_image_bytes = 0;  // 0 = no cap
};

/// Serializes prompts with canonical_request_body, retries transient
/// failures (connect errors, 429, 5xx) with capped exponential backoff, and
/// surfaces the provider's finish reason. Safe for concurrent calls.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ~HttpBackend() override;

  BackendOutput complete(const Prompt& prompt) override;

  const HttpBackendConfig& config() const { return config_; }

 private:
  HttpBackendConfig config_;
};

// ---------------------------------------------------------------------------
// Offline replay fixtures: line-delimited {"request": <canonical body>,
// "response": {text, completion_tokens, finish_reason}} pairs.

class ReplayBackend : public Backend {
 public:
  ReplayBackend(const std::string& fixture_path, std::string model);

  BackendOutput complete(const Prompt& prompt) override;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  std::string model_;
};

void append_replay_exchange(const std::string& fixture_path, const Prompt& prompt,
                            const std::string& model, const BackendOutput& output);

}  // namespace vtc
