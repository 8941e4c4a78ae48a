#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vtc/font.hpp"

namespace vtc {

namespace detail {

struct GlyphPoint {
  double x;
  double y;
  bool on_curve;
};

struct GlyphOutline {
  std::vector<std::vector<GlyphPoint>> contours;  // font units, y up
};

}  // namespace detail

/// TrueType loader and rasterizer covering glyf outlines (simple and
/// composite), cmap formats 0/4/6/12 and hmtx advances. CFF-outline fonts
/// are rejected. Scanline fill with non-zero winding and 4x supersampling.
class TrueTypeFont : public Font {
 public:
  static std::shared_ptr<TrueTypeFont> load(const std::string& path, const std::string& id);

  const std::string& id() const override { return id_; }
  int units_per_em() const override { return units_per_em_; }
  double ascent_units() const override { return ascent_; }
  double descent_units() const override { return descent_; }
  double advance_units(char32_t cp) const override;
  void draw_glyph(Raster& target, char32_t cp, double x_px, double baseline_y_px, double size_px,
                  double h_scale, Rgb color) const override;

  uint16_t glyph_index(char32_t cp) const;
  uint16_t glyph_count() const { return num_glyphs_; }

 private:
  TrueTypeFont() = default;
  void parse();
  std::shared_ptr<const detail::GlyphOutline> outline(uint16_t gid) const;
  detail::GlyphOutline parse_outline(uint16_t gid, int depth) const;

  std::string id_;
  std::vector<uint8_t> data_;

  int units_per_em_ = 1000;
  double ascent_ = 800.0;
  double descent_ = 200.0;
  uint16_t num_glyphs_ = 0;
  bool long_loca_ = false;

  size_t loca_off_ = 0, loca_len_ = 0;
  size_t glyf_off_ = 0, glyf_len_ = 0;
  size_t hmtx_off_ = 0;
  uint16_t num_hmetrics_ = 0;

  std::unordered_map<uint32_t, uint16_t> cmap_;

  mutable std::mutex cache_mu_;
  mutable std::vector<std::shared_ptr<const detail::GlyphOutline>> outline_cache_;
};

}  // namespace vtc
