#pragma once

#include <cstdint>
#include <string>

namespace vtc {

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

Rgb parse_color(const std::string& s);        // "#RRGGBB"
std::string format_color(const Rgb& c);

enum class Alignment { LEFT, RIGHT, CENTER, JUSTIFY };

Alignment parse_alignment(const std::string& s);
std::string format_alignment(Alignment a);

/// Rendering configuration vector. Defaults mirror the production defaults;
/// all length fields are in points (1 pt = 1/72 inch).
struct RenderConfig {
  double page_width_pt = 595.0;
  double page_height_pt = 842.0;
  int dpi = 72;
  double margin_x_pt = 10.0;
  double margin_y_pt = 10.0;
  std::string font_id = "DejaVuSans.ttf";
  double font_size_pt = 9.0;
  double line_height_pt = 10.0;
  Rgb font_color = {0x00, 0x00, 0x00};
  Rgb page_bg_color = {0xFF, 0xFF, 0xFF};
  Rgb para_bg_color = {0xFF, 0xFF, 0xFF};
  Alignment alignment = Alignment::LEFT;
  double h_scale = 1.0;
  double first_line_indent_pt = 0.0;
  double left_indent_pt = 0.0;
  double right_indent_pt = 0.0;
  double space_before_pt = 0.0;
  double space_after_pt = 0.0;
  double border_width_pt = 0.0;
  double border_padding_pt = 0.0;
  std::string newline_markup;  // empty = off
  bool auto_crop_width = true;
  bool auto_crop_last_page = true;

  bool operator==(const RenderConfig&) const = default;

  /// Throws ConfigError if any invariant is violated.
  void validate() const;

  double content_width_pt() const {
    return page_width_pt - 2.0 * margin_x_pt - left_indent_pt - right_indent_pt;
  }
  double content_height_pt() const { return page_height_pt - 2.0 * margin_y_pt; }

  int page_width_px() const;
  int page_height_px() const;
  double px_per_pt() const { return dpi / 72.0; }
};

// Flat key-value config file ("key value" lines, full-line '#' comments).
// Keys use the external spelling: page-size, dpi, margin-x, margin-y,
// font-path, font-size, line-height, font-color, alignment,
// horizontal-scale, first-line-indent, left-indent, right-indent,
// space-before, space-after, border-width, border-padding, page-bg-color,
// para-bg-color, newline-markup, auto-crop-width, auto-crop-last-page.
RenderConfig parse_render_config(const std::string& text);
RenderConfig load_render_config(const std::string& path);
std::string serialize_render_config(const RenderConfig& cfg);

/// FNV-1a over the canonical serialization; stable across rebuilds.
std::string render_config_hash(const RenderConfig& cfg);

}  // namespace vtc
