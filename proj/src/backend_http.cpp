#include "vtc/backend_http.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <thread>

#include <httplib.h>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

using nlohmann::json;

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (config_.url.empty()) throw UsageError("http backend: no endpoint url configured");
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

HttpBackend::~HttpBackend() = default;

BackendOutput HttpBackend::complete(const Prompt& prompt) {
  if (config_.max_image_bytes > 0) {
    for (const PageImage& page : prompt.images) {
      if (page.png_bytes.size() > config_.max_image_bytes)
        throw BackendError("image exceeds provider size cap: page " +
                           std::to_string(page.page_index) + " (" +
                           std::to_string(page.png_bytes.size()) + " bytes)");
    }
  }

  const std::string body = canonical_request_body(prompt, config_.model);

  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      double delay = config_.backoff_base_s * std::pow(2.0, attempt - 2);
      delay = std::min(delay, config_.backoff_cap_s);
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }

    // Per-call client: cheap relative to generation, and sidesteps shared
    // connection state across threads.
    httplib::Client client(config_.url);
    client.set_connection_timeout(config_.timeout_s);
    client.set_read_timeout(config_.timeout_s);
    client.set_write_timeout(config_.timeout_s);

    httplib::Result res = client.Post(config_.path, headers, body, "application/json");
    if (!res) {
      last_error = "connection failure: " + httplib::to_string(res.error());
      continue;  // transient
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "http status " + std::to_string(res->status);
      continue;  // transient
    }
    if (res->status != 200)
      throw BackendError("backend rejected request (http " + std::to_string(res->status) +
                         "): " + res->body.substr(0, 512));

    json j = json::parse(res->body, nullptr, false);
    if (j.is_discarded()) throw BackendError("backend returned invalid JSON");
    try {
      const json& choice = j.at("choices").at(0);
      BackendOutput out;
      out.text = choice.at("message").at("content").get<std::string>();
      std::string finish = choice.value("finish_reason", "stop");
      out.finish_reason =
          finish == "length" ? FinishReason::kLength : FinishReason::kStop;
      if (j.contains("usage") && j["usage"].contains("completion_tokens"))
        out.completion_tokens = j["usage"]["completion_tokens"].get<size_t>();
      return out;
    } catch (const json::exception& e) {
      throw BackendError(std::string("backend response missing fields: ") + e.what());
    }
  }
  throw BackendError("backend unreachable after " + std::to_string(config_.max_attempts) +
                     " attempts: " + last_error);
}

// ---------------------------------------------------------------------------

struct ReplayBackend::Impl {
  std::map<uint64_t, BackendOutput> exchanges;  // keyed by body hash
};

ReplayBackend::ReplayBackend(const std::string& fixture_path, std::string model)
    : impl_(std::make_shared<Impl>()), model_(std::move(model)) {
  std::ifstream in(fixture_path, std::ios::binary);
  if (!in) throw IoError("cannot open replay fixture: " + fixture_path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw IoError("replay fixture line " + std::to_string(lineno) + ": bad JSON");
    BackendOutput out;
    out.text = j.at("response").at("text").get<std::string>();
    out.completion_tokens = j.at("response").value("completion_tokens", size_t{0});
    out.finish_reason =
        finish_reason_from_string(j.at("response").value("finish_reason", "stop"));
    impl_->exchanges[fnv1a64(j.at("request").get<std::string>())] = std::move(out);
  }
}

BackendOutput ReplayBackend::complete(const Prompt& prompt) {
  std::string body = canonical_request_body(prompt, model_);
  auto it = impl_->exchanges.find(fnv1a64(body));
  if (it == impl_->exchanges.end())
    throw BackendError("replay fixture has no recording for this request");
  return it->second;
}

void append_replay_exchange(const std::string& fixture_path, const Prompt& prompt,
                            const std::string& model, const BackendOutput& output) {
  json j;
  j["request"] = canonical_request_body(prompt, model);
  j["response"] = {{"text", output.text},
                   {"completion_tokens", output.completion_tokens},
                   {"finish_reason", to_string(output.finish_reason)}};
  std::ofstream out(fixture_path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append replay fixture: " + fixture_path);
  out << j.dump() << "\n";
}

}  // namespace vtc
