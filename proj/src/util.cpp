#include "vtc/util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

#include "vtc/errors.hpp"

namespace vtc {

uint64_t fnv1a64(std::span<const uint8_t> data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : data) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t fnv1a64(std::string_view data) {
  return fnv1a64(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

std::string to_hex(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string base64_encode(std::span<const uint8_t> data) {
  static const char* tbl = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= data.size(); i += 3) {
    uint32_t w = (uint32_t(data[i]) << 16) | (uint32_t(data[i + 1]) << 8) | data[i + 2];
    out.push_back(tbl[(w >> 18) & 63]);
    out.push_back(tbl[(w >> 12) & 63]);
    out.push_back(tbl[(w >> 6) & 63]);
    out.push_back(tbl[w & 63]);
  }
  size_t rem = data.size() - i;
  if (rem == 1) {
    uint32_t w = uint32_t(data[i]) << 16;
    out.push_back(tbl[(w >> 18) & 63]);
    out.push_back(tbl[(w >> 12) & 63]);
    out.push_back('=');
    out.push_back('=');
  } else if (rem == 2) {
    uint32_t w = (uint32_t(data[i]) << 16) | (uint32_t(data[i + 1]) << 8);
    out.push_back(tbl[(w >> 18) & 63]);
    out.push_back(tbl[(w >> 12) & 63]);
    out.push_back(tbl[(w >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path);
}

void write_file(const std::string& path, std::span<const uint8_t> data) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Utf8Char utf8_next(std::string_view text, size_t pos) {
  const auto bad = [&](size_t n) { return Utf8Char{0xFFFD, pos, pos + n}; };
  uint8_t b0 = static_cast<uint8_t>(text[pos]);
  if (b0 < 0x80) return {b0, pos, pos + 1};
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return bad(1);
  }
  if (pos + static_cast<size_t>(len) > text.size()) return bad(1);
  for (int i = 1; i < len; ++i) {
    uint8_t b = static_cast<uint8_t>(text[pos + static_cast<size_t>(i)]);
    if ((b & 0xC0) != 0x80) return bad(1);
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong / out-of-range forms decode as replacement but still consume.
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return bad(static_cast<size_t>(len));
  return {cp, pos, pos + static_cast<size_t>(len)};
}

std::vector<Utf8Char> utf8_decode(std::string_view text) {
  std::vector<Utf8Char> out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    Utf8Char c = utf8_next(text, pos);
    out.push_back(c);
    pos = c.end;
  }
  return out;
}

size_t utf8_floor_boundary(std::string_view text, size_t pos) {
  if (pos >= text.size()) return text.size();
  while (pos > 0 && (static_cast<uint8_t>(text[pos]) & 0xC0) == 0x80) --pos;
  return pos;
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  if (hi < lo) std::swap(lo, hi);
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(next_u64());  // full 64-bit range
  return lo + static_cast<int64_t>(next_u64() % span);
}

double Rng::uniform() {
  // 53 mantissa bits -> uniform double in [0,1)
  return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform(); }

size_t Rng::weighted(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = uniform() * total;
  double acc = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return i;
  }
  return weights.empty() ? 0 : weights.size() - 1;
}

}  // namespace vtc
