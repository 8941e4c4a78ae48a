#include "vtc/font.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>

#include "raster_fill.hpp"
#include "truetype.hpp"
#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

bool is_blank_codepoint(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == 0x00A0 || cp < 0x20;
}

// Fixed-advance synthetic font: 1000 units/em, every glyph 500 units wide,
// drawn as a filled box with small side bearings.
class SyntheticFont : public Font {
 public:
  const std::string& id() const override {
    static const std::string kId = kBuiltinFontId;
    return kId;
  }
  int units_per_em() const override { return 1000; }
  double ascent_units() const override { return 800.0; }
  double descent_units() const override { return 200.0; }
  double advance_units(char32_t) const override { return 500.0; }

  void draw_glyph(Raster& target, char32_t cp, double x_px, double baseline_y_px, double size_px,
                  double h_scale, Rgb color) const override {
    if (is_blank_codepoint(cp)) return;
    double s = size_px / 1000.0;
    double x0 = x_px + 60.0 * s * h_scale;
    double x1 = x_px + 440.0 * s * h_scale;
    double y0 = baseline_y_px - 800.0 * s;
    double y1 = baseline_y_px + 200.0 * s;
    detail::fill_rect(target, x0, y0, x1, y1, color);
  }
};

std::string resolve_font_path(const std::string& font_id) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(font_id, ec)) return font_id;

  std::vector<std::string> dirs;
  if (const char* env = std::getenv("VTC_FONT_PATH")) {
    std::string paths = env;
    size_t start = 0;
    while (start <= paths.size()) {
      size_t colon = paths.find(':', start);
      if (colon == std::string::npos) colon = paths.size();
      if (colon > start) dirs.push_back(paths.substr(start, colon - start));
      start = colon + 1;
    }
  }
  dirs.push_back("/usr/share/fonts/truetype/dejavu");
  dirs.push_back("/usr/share/fonts/truetype");

  for (const auto& dir : dirs) {
    fs::path candidate = fs::path(dir) / font_id;
    if (fs::exists(candidate, ec)) return candidate.string();
  }
  throw FontError("font not found: " + font_id);
}

}  // namespace

FontPtr load_font(const std::string& font_id) {
  static std::mutex mu;
  static std::map<std::string, FontPtr> cache;

  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(font_id);
  if (it != cache.end()) return it->second;

  FontPtr font;
  if (font_id == kBuiltinFontId || starts_with(font_id, "builtin:")) {
    if (font_id != kBuiltinFontId) throw FontError("unknown builtin font: " + font_id);
    font = std::make_shared<SyntheticFont>();
  } else {
    std::string path = resolve_font_path(font_id);
    font = TrueTypeFont::load(path, font_id);
  }
  cache.emplace(font_id, font);
  return font;
}

}  // namespace vtc
