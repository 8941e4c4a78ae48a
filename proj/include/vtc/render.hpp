#pragma once

#include <string_view>
#include <vector>

#include "vtc/layout.hpp"
#include "vtc/page_image.hpp"

namespace vtc {

/// Rasterizes a layout into uncropped PNG pages. Pixel dims are
/// round(page_size_pt * dpi / 72). Bit-deterministic for identical
/// (text, config, metrics) inputs.
std::vector<PageImage> render_pages(const PageLayout& layout, const RenderConfig& config);

/// Trims trailing white margins: right edge to (rightmost ink column +
/// margin-x) when auto-crop-width is set, bottom edge to (lowest ink row +
/// margin-y) on the last page when auto-crop-last-page is set. A page with no
/// ink crops to the margin box; never below 1x1. Ink is any pixel that
/// differs from the page background by more than 8/255 on a channel.
PageImage auto_crop(const PageImage& page, const RenderConfig& config, bool is_last_page);

/// Applies the configured crops across a page sequence.
std::vector<PageImage> apply_auto_crop(std::vector<PageImage> pages, const RenderConfig& config);

/// layout + render + crop in one step.
std::vector<PageImage> render_document(std::string_view text, const RenderConfig& config);
std::vector<PageImage> render_document(std::string_view text, const RenderConfig& config,
                                       FontPtr font);

}  // namespace vtc
