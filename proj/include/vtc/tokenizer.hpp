#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace vtc {

/// Token counting adapter. Two reference implementations are bundled
/// ("ws" whitespace tokens, "char4" = ceil(bytes / 4)); counts from a real
/// model tokenizer plug in through this interface.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  virtual const std::string& id() const = 0;
  virtual size_t count(std::string_view text) const = 0;

  /// Splits at a token boundary so that count(prefix) <= budget and
  /// prefix + suffix == text byte-exact. budget >= 1.
  virtual std::pair<std::string, std::string> split(std::string_view text, size_t budget) const = 0;
};

using TokenizerPtr = std::shared_ptr<const Tokenizer>;

TokenizerPtr make_whitespace_tokenizer();
TokenizerPtr make_char4_tokenizer();

/// By id: "ws" | "whitespace" | "char4". Throws UsageError otherwise.
TokenizerPtr make_tokenizer(const std::string& id);

size_t count_text_tokens(std::string_view text, const Tokenizer& tok);

}  // namespace vtc
