#include "vtc/tokenizer.hpp"

#include <cctype>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)); }

class WhitespaceTokenizer : public Tokenizer {
 public:
  const std::string& id() const override {
    static const std::string kId = "ws";
    return kId;
  }

  size_t count(std::string_view text) const override {
    size_t n = 0;
    bool in_token = false;
    for (char c : text) {
      if (is_ws(c)) {
        in_token = false;
      } else if (!in_token) {
        in_token = true;
        ++n;
      }
    }
    return n;
  }

  std::pair<std::string, std::string> split(std::string_view text, size_t budget) const override {
    if (budget == 0) throw UsageError("tokenizer split: budget must be >= 1");
    size_t n = 0;
    bool in_token = false;
    size_t cut = text.size();
    for (size_t i = 0; i < text.size(); ++i) {
      if (is_ws(text[i])) {
        in_token = false;
      } else if (!in_token) {
        in_token = true;
        ++n;
        if (n > budget) {
          cut = i;  // before this token begins
          break;
        }
      }
    }
    return {std::string(text.substr(0, cut)), std::string(text.substr(cut))};
  }
};

class Char4Tokenizer : public Tokenizer {
 public:
  const std::string& id() const override {
    static const std::string kId = "char4";
    return kId;
  }

  size_t count(std::string_view text) const override { return (text.size() + 3) / 4; }

  std::pair<std::string, std::string> split(std::string_view text, size_t budget) const override {
    if (budget == 0) throw UsageError("tokenizer split: budget must be >= 1");
    size_t cut = std::min(text.size(), budget * 4);
    cut = utf8_floor_boundary(text, cut);  // never split a codepoint
    return {std::string(text.substr(0, cut)), std::string(text.substr(cut))};
  }
};

}  // namespace

TokenizerPtr make_whitespace_tokenizer() { return std::make_shared<WhitespaceTokenizer>(); }
TokenizerPtr make_char4_tokenizer() { return std::make_shared<Char4Tokenizer>(); }

TokenizerPtr make_tokenizer(const std::string& id) {
  std::string v = to_lower(id);
  if (v == "ws" || v == "whitespace") return make_whitespace_tokenizer();
  if (v == "char4") return make_char4_tokenizer();
  throw UsageError("unknown tokenizer '" + id + "' (want: ws, char4)");
}

size_t count_text_tokens(std::string_view text, const Tokenizer& tok) { return tok.count(text); }

}  // namespace vtc
