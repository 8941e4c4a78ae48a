#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vtc {

// ---------------------------------------------------------------------------
// Hashing / encoding

uint64_t fnv1a64(std::span<const uint8_t> data);
uint64_t fnv1a64(std::string_view data);
std::string to_hex(uint64_t v);

std::string base64_encode(std::span<const uint8_t> data);

// ---------------------------------------------------------------------------
// File helpers

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);
void write_file(const std::string& path, std::span<const uint8_t> data);

// ---------------------------------------------------------------------------
// String helpers

std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
std::string to_lower(std::string_view s);

// ---------------------------------------------------------------------------
// UTF-8
//
// Decodes one codepoint starting at byte `pos`; always advances by at least
// one byte. Invalid sequences decode as U+FFFD covering a single byte.
struct Utf8Char {
  char32_t cp;
  size_t begin;  // byte offset
  size_t end;    // one past last byte
};

Utf8Char utf8_next(std::string_view text, size_t pos);
std::vector<Utf8Char> utf8_decode(std::string_view text);

// Largest codepoint boundary <= pos.
size_t utf8_floor_boundary(std::string_view text, size_t pos);

// ---------------------------------------------------------------------------
// Seeded RNG with portable derived draws. mt19937_64 output is standardized;
// the std::*_distribution adaptors are not, so draws are derived by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [lo, hi], inclusive. Rejection-free modulo is fine here; the
  // ranges involved are tiny relative to 2^64.
  int64_t uniform_int(int64_t lo, int64_t hi);

  // Uniform in [0, 1).
  double uniform();

  double uniform_real(double lo, double hi);

  // Index into `weights` proportional to weight.
  size_t weighted(std::span<const double> weights);

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<size_t>(uniform_int(0, static_cast<int64_t>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace vtc
