#pragma once

#include <string_view>
#include <vector>

#include "vtc/font.hpp"
#include "vtc/render_config.hpp"

namespace vtc {

/// One positioned source character (or decoration glyph) on a line.
/// `byte_begin/byte_end` is the half-open UTF-8 byte span in the input text;
/// decoration glyphs (newline markup) carry an empty span. `has_ink` marks
/// glyphs the renderer actually draws; whitespace has advance but no ink.
struct PlacedGlyph {
  char32_t cp = 0;
  size_t byte_begin = 0;
  size_t byte_end = 0;
  double x_pt = 0.0;
  double advance_pt = 0.0;
  bool has_ink = false;
  bool stretchable = false;  // inter-word space eligible for justify stretch
  bool decoration = false;   // newline markup, not a source character
};

struct LayoutLine {
  double top_pt = 0.0;       // line box top, page coordinates
  double baseline_pt = 0.0;  // top + font ascent
  std::vector<PlacedGlyph> glyphs;
  int paragraph_id = 0;
  bool paragraph_start = false;
  bool paragraph_end = false;

  size_t span_begin() const;
  size_t span_end() const;
  /// Sum of source-character advances (decoration excluded).
  double advance_sum_pt() const;
};

struct LayoutPage {
  std::vector<LayoutLine> lines;
  size_t span_begin = 0;
  size_t span_end = 0;
};

/// Positioned pages for one input text under one config. Carries the font it
/// was built with so rendering needs no re-resolution.
struct PageLayout {
  std::vector<LayoutPage> pages;
  FontPtr font;
  size_t text_bytes = 0;
};

/// Greedy first-fit word wrap with hard character splits for over-wide
/// tokens; input newlines delimit paragraphs. Every input byte lands in
/// exactly one glyph span, in order. Throws ConfigError when the content box
/// is degenerate or no line fits a page.
PageLayout layout_text(std::string_view text, const RenderConfig& config, FontPtr font);

inline PageLayout layout_text(std::string_view text, const RenderConfig& config) {
  return layout_text(text, config, load_font(config.font_id));
}

}  // namespace vtc
