#include "vtc/png_io.hpp"

#include <zlib.h>

#include <cstring>

#include "vtc/errors.hpp"

namespace vtc {

namespace {

constexpr uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
constexpr int kZlibLevel = 6;

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

uint32_t get_u32(const uint8_t* p) {
  return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

void put_chunk(std::vector<uint8_t>& out, const char type[4], std::span<const uint8_t> data) {
  put_u32(out, static_cast<uint32_t>(data.size()));
  size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  uint32_t crc = static_cast<uint32_t>(
      crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
  put_u32(out, crc);
}

uint8_t paeth(uint8_t a, uint8_t b, uint8_t c) {
  int p = int(a) + int(b) - int(c);
  int pa = std::abs(p - int(a));
  int pb = std::abs(p - int(b));
  int pc = std::abs(p - int(c));
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

Raster::Raster(int w, int h, uint8_t r, uint8_t g, uint8_t b) : width(w), height(h) {
  pixels.resize(static_cast<size_t>(w) * h * 3);
  for (size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = r;
    pixels[i + 1] = g;
    pixels[i + 2] = b;
  }
}

std::vector<uint8_t> png_encode(const Raster& raster) {
  if (raster.width <= 0 || raster.height <= 0)
    throw RenderError("png_encode: empty raster");

  const size_t stride = static_cast<size_t>(raster.width) * 3;

  // Filtered scanlines: filter byte 1 (Sub) + per-byte left delta.
  std::vector<uint8_t> filtered;
  filtered.reserve((stride + 1) * static_cast<size_t>(raster.height));
  for (int y = 0; y < raster.height; ++y) {
    const uint8_t* row = raster.pixels.data() + stride * static_cast<size_t>(y);
    filtered.push_back(1);
    for (size_t x = 0; x < stride; ++x) {
      uint8_t left = x >= 3 ? row[x - 3] : 0;
      filtered.push_back(static_cast<uint8_t>(row[x] - left));
    }
  }

  uLongf comp_cap = compressBound(static_cast<uLong>(filtered.size()));
  std::vector<uint8_t> compressed(comp_cap);
  if (compress2(compressed.data(), &comp_cap, filtered.data(),
                static_cast<uLong>(filtered.size()), kZlibLevel) != Z_OK)
    throw RenderError("png_encode: zlib compression failed");
  compressed.resize(comp_cap);

  std::vector<uint8_t> out;
  out.reserve(compressed.size() + 128);
  out.insert(out.end(), kSignature, kSignature + 8);

  std::vector<uint8_t> ihdr;
  put_u32(ihdr, static_cast<uint32_t>(raster.width));
  put_u32(ihdr, static_cast<uint32_t>(raster.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", compressed);
  put_chunk(out, "IEND", {});
  return out;
}

PngHeader png_peek_header(std::span<const uint8_t> png) {
  if (png.size() < 33 || std::memcmp(png.data(), kSignature, 8) != 0)
    throw RenderError("png: bad signature");
  if (std::memcmp(png.data() + 12, "IHDR", 4) != 0) throw RenderError("png: missing IHDR");
  PngHeader h;
  h.width = static_cast<int>(get_u32(png.data() + 16));
  h.height = static_cast<int>(get_u32(png.data() + 20));
  if (h.width <= 0 || h.height <= 0) throw RenderError("png: bad dimensions");
  return h;
}

Raster png_decode(std::span<const uint8_t> png) {
  PngHeader hdr = png_peek_header(png);
  uint8_t bit_depth = png[24];
  uint8_t color_type = png[25];
  uint8_t interlace = png[28];
  if (bit_depth != 8 || (color_type != 2 && color_type != 6) || interlace != 0)
    throw RenderError("png: unsupported format (want 8-bit RGB/RGBA, no interlace)");
  const int channels = color_type == 2 ? 3 : 4;

  // Collect IDAT payloads.
  std::vector<uint8_t> idat;
  size_t pos = 8;
  while (pos + 12 <= png.size()) {
    uint32_t len = get_u32(png.data() + pos);
    const uint8_t* type = png.data() + pos + 4;
    if (pos + 12 + len > png.size()) throw RenderError("png: truncated chunk");
    if (std::memcmp(type, "IDAT", 4) == 0)
      idat.insert(idat.end(), png.data() + pos + 8, png.data() + pos + 8 + len);
    if (std::memcmp(type, "IEND", 4) == 0) break;
    pos += 12 + len;
  }
  if (idat.empty()) throw RenderError("png: no IDAT data");

  const size_t stride = static_cast<size_t>(hdr.width) * static_cast<size_t>(channels);
  std::vector<uint8_t> raw((stride + 1) * static_cast<size_t>(hdr.height));
  uLongf raw_len = static_cast<uLongf>(raw.size());
  int zrc = uncompress(raw.data(), &raw_len, idat.data(), static_cast<uLong>(idat.size()));
  if (zrc != Z_OK || raw_len != raw.size()) throw RenderError("png: inflate failed");

  Raster out(hdr.width, hdr.height, 0, 0, 0);
  std::vector<uint8_t> prev(stride, 0);
  std::vector<uint8_t> cur(stride, 0);
  const int bpp = channels;
  for (int y = 0; y < hdr.height; ++y) {
    const uint8_t* line = raw.data() + (stride + 1) * static_cast<size_t>(y);
    uint8_t filter = line[0];
    const uint8_t* src = line + 1;
    for (size_t x = 0; x < stride; ++x) {
      uint8_t a = x >= static_cast<size_t>(bpp) ? cur[x - static_cast<size_t>(bpp)] : 0;
      uint8_t b = prev[x];
      uint8_t c = x >= static_cast<size_t>(bpp) ? prev[x - static_cast<size_t>(bpp)] : 0;
      uint8_t v;
      switch (filter) {
        case 0: v = src[x]; break;
        case 1: v = static_cast<uint8_t>(src[x] + a); break;
        case 2: v = static_cast<uint8_t>(src[x] + b); break;
        case 3: v = static_cast<uint8_t>(src[x] + (int(a) + int(b)) / 2); break;
        case 4: v = static_cast<uint8_t>(src[x] + paeth(a, b, c)); break;
        default: throw RenderError("png: bad filter type");
      }
      cur[x] = v;
    }
    uint8_t* dst = out.at(0, y);
    for (int x = 0; x < hdr.width; ++x) {
      dst[3 * x] = cur[static_cast<size_t>(x) * bpp];
      dst[3 * x + 1] = cur[static_cast<size_t>(x) * bpp + 1];
      dst[3 * x + 2] = cur[static_cast<size_t>(x) * bpp + 2];
    }
    std::swap(prev, cur);
  }
  return out;
}

}  // namespace vtc
