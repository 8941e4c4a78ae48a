#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vtc {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // width * height * 3

  Raster() = default;
  Raster(int w, int h, uint8_t r, uint8_t g, uint8_t b);

  uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<size_t>(y) * width + x); }
  const uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<size_t>(y) * width + x);
  }
};

// Deterministic PNG encoding: 8-bit RGB (color type 2), Sub filter on every
// row, zlib level 6, exactly IHDR/IDAT/IEND (no ancillary chunks). Identical
// rasters encode to identical bytes.
std::vector<uint8_t> png_encode(const Raster& raster);

// Decodes 8-bit RGB or RGBA PNGs (alpha dropped); all five scanline filters
// are handled. Throws RenderError on anything else or on corrupt data.
Raster png_decode(std::span<const uint8_t> png_bytes);

// Reads width/height from the IHDR without inflating image data.
struct PngHeader {
  int width = 0;
  int height = 0;
};
PngHeader png_peek_header(std::span<const uint8_t> png_bytes);

}  // namespace vtc
