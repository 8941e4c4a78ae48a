#include "vtc/backend.hpp"

#include <nlohmann/json.hpp>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

using nlohmann::json;

std::string to_string(FinishReason r) {
  switch (r) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

FinishReason finish_reason_from_string(std::string_view s) {
  if (s == "stop") return FinishReason::kStop;
  if (s == "length") return FinishReason::kLength;
  return FinishReason::kError;
}

std::string canonical_request_body(const Prompt& prompt, const std::string& model) {
  json user_content = json::array();
  user_content.push_back({{"type", "text"}, {"text", prompt.question}});
  for (const PageImage& page : prompt.images) {
    std::string url = "data:image/png;base64," + base64_encode(page.png_bytes);
    user_content.push_back({{"type", "image_url"}, {"image_url", {{"url", std::move(url)}}}});
  }

  json body;
  body["model"] = model;
  body["messages"] = json::array({
      {{"role", "system"}, {"content", prompt.system_prompt}},
      {{"role", "user"}, {"content", std::move(user_content)}},
  });
  body["temperature"] = prompt.sampling.temperature;
  body["top_p"] = prompt.sampling.top_p;
  body["max_tokens"] = prompt.sampling.max_new_tokens;
  return body.dump();
}

}  // namespace vtc
