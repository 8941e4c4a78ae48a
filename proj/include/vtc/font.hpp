#pragma once

#include <memory>
#include <string>

#include "vtc/png_io.hpp"
#include "vtc/render_config.hpp"

namespace vtc {

/// Built-in fixed-advance font: every glyph advances 0.5 em. Used by the test
/// suite so it never depends on font files being installed.
inline constexpr const char* kBuiltinFontId = "builtin:fixed";

/// Glyph metrics plus rasterization for one loaded font. Instances are
/// immutable after load and safe to share across threads.
class Font {
 public:
  virtual ~Font() = default;

  virtual const std::string& id() const = 0;
  virtual int units_per_em() const = 0;
  virtual double ascent_units() const = 0;   // above baseline, font units
  virtual double descent_units() const = 0;  // below baseline, font units (positive)

  /// Horizontal advance in font units. Total: unknown codepoints get the
  /// fallback (.notdef) advance.
  virtual double advance_units(char32_t cp) const = 0;

  /// Blend the glyph for `cp` into `target` with pen position (x_px,
  /// baseline_y_px), em size `size_px`, horizontal scale `h_scale`.
  virtual void draw_glyph(Raster& target, char32_t cp, double x_px, double baseline_y_px,
                          double size_px, double h_scale, Rgb color) const = 0;

  double advance_pt(char32_t cp, double font_size_pt, double h_scale) const {
    return advance_units(cp) * font_size_pt * h_scale / units_per_em();
  }
  double ascent_pt(double font_size_pt) const {
    return ascent_units() * font_size_pt / units_per_em();
  }
  double descent_pt(double font_size_pt) const {
    return descent_units() * font_size_pt / units_per_em();
  }
};

using FontPtr = std::shared_ptr<const Font>;

/// Resolves a font id to a loaded font. "builtin:fixed" yields the synthetic
/// font; anything else is a TrueType file path, searched relative to the
/// working directory, then $VTC_FONT_PATH (colon-separated), then the common
/// system font directories. Loaded fonts are cached; the cache is
/// internally synchronized. Throws FontError naming the id on failure.
FontPtr load_font(const std::string& font_id);

}  // namespace vtc
