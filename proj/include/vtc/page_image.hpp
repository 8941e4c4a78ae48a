#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vtc {

/// One rendered page. `span_begin/span_end` is the half-open byte range of the
/// source text this page covers; ranges across a page sequence are contiguous
/// and cover the whole input.
struct PageImage {
  std::vector<uint8_t> png_bytes;
  int width_px = 0;
  int height_px = 0;
  int page_index = 0;
  size_t span_begin = 0;
  size_t span_end = 0;
};

}  // namespace vtc
