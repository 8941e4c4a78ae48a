#include "vtc/render.hpp"

#include <algorithm>
#include <cmath>

#include "raster_fill.hpp"
#include "vtc/errors.hpp"
#include "vtc/png_io.hpp"

namespace vtc {

namespace {

int round_px(double pt, int dpi) { return static_cast<int>(std::lround(pt * dpi / 72.0)); }

bool is_ink(const uint8_t* px, const Rgb& bg) {
  return std::abs(int(px[0]) - bg.r) > 8 || std::abs(int(px[1]) - bg.g) > 8 ||
         std::abs(int(px[2]) - bg.b) > 8;
}

}  // namespace

std::vector<PageImage> render_pages(const PageLayout& layout, const RenderConfig& cfg) {
  cfg.validate();
  if (!layout.font) throw RenderError("render_pages: layout carries no font");
  const Font& font = *layout.font;

  const double scale = cfg.px_per_pt();
  const int width_px = cfg.page_width_px();
  const int height_px = cfg.page_height_px();
  const double size_px = cfg.font_size_pt * scale;

  std::vector<PageImage> out;
  out.reserve(layout.pages.size());

  for (size_t pi = 0; pi < layout.pages.size(); ++pi) {
    const LayoutPage& page = layout.pages[pi];
    Raster raster(width_px, height_px, cfg.page_bg_color.r, cfg.page_bg_color.g,
                  cfg.page_bg_color.b);

    // Paragraph backgrounds and borders over runs of same-paragraph lines.
    const bool want_para_bg = !(cfg.para_bg_color == cfg.page_bg_color);
    const bool want_border = cfg.border_width_pt > 0.0;
    if (want_para_bg || want_border) {
      const double box_x0 = (cfg.margin_x_pt + cfg.left_indent_pt) * scale;
      const double box_x1 = (cfg.page_width_pt - cfg.margin_x_pt - cfg.right_indent_pt) * scale;
      size_t i = 0;
      while (i < page.lines.size()) {
        size_t j = i;
        while (j + 1 < page.lines.size() &&
               page.lines[j + 1].paragraph_id == page.lines[i].paragraph_id)
          ++j;
        double y0 = page.lines[i].top_pt * scale;
        double y1 = (page.lines[j].top_pt + cfg.line_height_pt) * scale;
        if (want_para_bg)
          detail::fill_rect(raster, box_x0, y0, box_x1, y1, cfg.para_bg_color);
        if (want_border) {
          double pad = cfg.border_padding_pt * scale;
          detail::stroke_rect(raster, box_x0 - pad, y0 - pad, box_x1 + pad, y1 + pad,
                              cfg.border_width_pt * scale, cfg.font_color);
        }
        i = j + 1;
      }
    }

    for (const LayoutLine& line : page.lines) {
      double baseline_px = line.baseline_pt * scale;
      for (const PlacedGlyph& g : line.glyphs) {
        if (!g.has_ink) continue;
        font.draw_glyph(raster, g.cp, g.x_pt * scale, baseline_px, size_px, cfg.h_scale,
                        cfg.font_color);
      }
    }

    PageImage img;
    img.png_bytes = png_encode(raster);
    img.width_px = width_px;
    img.height_px = height_px;
    img.page_index = static_cast<int>(pi);
    img.span_begin = page.span_begin;
    img.span_end = page.span_end;
    out.push_back(std::move(img));
  }
  return out;
}

PageImage auto_crop(const PageImage& page, const RenderConfig& cfg, bool is_last_page) {
  const bool crop_w = cfg.auto_crop_width;
  const bool crop_h = cfg.auto_crop_last_page && is_last_page;
  if (!crop_w && !crop_h) return page;

  Raster raster = png_decode(page.png_bytes);
  const Rgb bg = cfg.page_bg_color;

  int rightmost = -1, lowest = -1;
  for (int y = 0; y < raster.height; ++y) {
    const uint8_t* row = raster.at(0, y);
    for (int x = 0; x < raster.width; ++x) {
      if (is_ink(row + 3 * x, bg)) {
        if (x > rightmost) rightmost = x;
        if (y > lowest) lowest = y;
      }
    }
  }

  const int margin_x_px = round_px(cfg.margin_x_pt, cfg.dpi);
  const int margin_y_px = round_px(cfg.margin_y_pt, cfg.dpi);

  int new_w = raster.width;
  int new_h = raster.height;
  if (crop_w) {
    new_w = rightmost >= 0 ? rightmost + 1 + margin_x_px : 2 * margin_x_px;
    new_w = std::clamp(new_w, 1, raster.width);
  }
  if (crop_h) {
    new_h = lowest >= 0 ? lowest + 1 + margin_y_px : 2 * margin_y_px;
    new_h = std::clamp(new_h, 1, raster.height);
  }
  if (new_w == raster.width && new_h == raster.height) return page;

  Raster cropped(new_w, new_h, bg.r, bg.g, bg.b);
  for (int y = 0; y < new_h; ++y) {
    const uint8_t* src = raster.at(0, y);
    uint8_t* dst = cropped.at(0, y);
    std::copy(src, src + 3 * static_cast<size_t>(new_w), dst);
  }

  PageImage out;
  out.png_bytes = png_encode(cropped);
  out.width_px = new_w;
  out.height_px = new_h;
  out.page_index = page.page_index;
  out.span_begin = page.span_begin;
  out.span_end = page.span_end;
  return out;
}

std::vector<PageImage> apply_auto_crop(std::vector<PageImage> pages, const RenderConfig& cfg) {
  for (size_t i = 0; i < pages.size(); ++i)
    pages[i] = auto_crop(pages[i], cfg, i + 1 == pages.size());
  return pages;
}

std::vector<PageImage> render_document(std::string_view text, const RenderConfig& cfg,
                                       FontPtr font) {
  return apply_auto_crop(render_pages(layout_text(text, cfg, std::move(font)), cfg), cfg);
}

std::vector<PageImage> render_document(std::string_view text, const RenderConfig& cfg) {
  return render_document(text, cfg, load_font(cfg.font_id));
}

}  // namespace vtc
