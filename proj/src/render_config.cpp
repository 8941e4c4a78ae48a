#include "vtc/render_config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Shortest representation that round-trips the values we use (sampled configs
// stick to one decimal place), so serialization is reproducible.
std::string format_num(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  std::string s = to_lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("config: bad boolean value for " + key + ": '" + v + "'");
}

}  // namespace

Rgb parse_color(const std::string& s) {
  if (s.size() != 7 || s[0] != '#') throw ConfigError("config: bad color '" + s + "'");
  int v[6];
  for (int i = 0; i < 6; ++i) {
    v[i] = hex_nibble(s[static_cast<size_t>(i) + 1]);
    if (v[i] < 0) throw ConfigError("config: bad color '" + s + "'");
  }
  return Rgb{static_cast<uint8_t>(v[0] * 16 + v[1]), static_cast<uint8_t>(v[2] * 16 + v[3]),
             static_cast<uint8_t>(v[4] * 16 + v[5])};
}

std::string format_color(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

Alignment parse_alignment(const std::string& s) {
  std::string v = to_lower(s);
  if (v == "left") return Alignment::LEFT;
  if (v == "right") return Alignment::RIGHT;
  if (v == "center") return Alignment::CENTER;
  if (v == "justify") return Alignment::JUSTIFY;
  throw ConfigError("config: bad alignment '" + s + "'");
}

std::string format_alignment(Alignment a) {
  switch (a) {
    case Alignment::LEFT: return "LEFT";
    case Alignment::RIGHT: return "RIGHT";
    case Alignment::CENTER: return "CENTER";
    case Alignment::JUSTIFY: return "JUSTIFY";
  }
  return "LEFT";
}

void RenderConfig::validate() const {
  if (!(page_width_pt > 2.0 * margin_x_pt))
    throw ConfigError("config: page width must exceed twice the x margin");
  if (!(page_height_pt > 2.0 * margin_y_pt))
    throw ConfigError("config: page height must exceed twice the y margin");
  if (!(line_height_pt >= font_size_pt))
    throw ConfigError("config: line-height must be >= font-size");
  if (dpi < 1) throw ConfigError("config: dpi must be >= 1");
  if (!(h_scale > 0.0 && h_scale <= 1.0))
    throw ConfigError("config: horizontal-scale must be in (0, 1]");
  if (font_size_pt <= 0.0) throw ConfigError("config: font-size must be positive");
  if (content_width_pt() <= 0.0) throw ConfigError("config: content box has no width");
  if (content_height_pt() <= 0.0) throw ConfigError("config: content box has no height");
  if (margin_x_pt < 0.0 || margin_y_pt < 0.0) throw ConfigError("config: negative margin");
}

int RenderConfig::page_width_px() const {
  return static_cast<int>(std::lround(page_width_pt * dpi / 72.0));
}

int RenderConfig::page_height_px() const {
  return static_cast<int>(std::lround(page_height_pt * dpi / 72.0));
}

RenderConfig parse_render_config(const std::string& text) {
  RenderConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    size_t sep = sv.find_first_of(" \t=:");
    if (sep == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": missing value");
    std::string key(trim(sv.substr(0, sep)));
    std::string val(trim(sv.substr(sep + 1)));
    if (!val.empty() && (val[0] == '=' || val[0] == ':')) val = std::string(trim(val.substr(1)));

    if (key == "page-size") {
      // "595x842" or "595 842"
      size_t x = val.find_first_of("xX* \t");
      if (x == std::string::npos)
        throw ConfigError("config: page-size wants WIDTHxHEIGHT, got '" + val + "'");
      cfg.page_width_pt = parse_num(key, std::string(trim(val.substr(0, x))));
      cfg.page_height_pt = parse_num(key, std::string(trim(val.substr(x + 1))));
    } else if (key == "dpi") {
      cfg.dpi = static_cast<int>(parse_num(key, val));
    } else if (key == "margin-x") {
      cfg.margin_x_pt = parse_num(key, val);
    } else if (key == "margin-y") {
      cfg.margin_y_pt = parse_num(key, val);
    } else if (key == "font-path") {
      cfg.font_id = val;
    } else if (key == "font-size") {
      cfg.font_size_pt = parse_num(key, val);
    } else if (key == "line-height") {
      cfg.line_height_pt = parse_num(key, val);
    } else if (key == "font-color") {
      cfg.font_color = parse_color(val);
    } else if (key == "alignment") {
      cfg.alignment = parse_alignment(val);
    } else if (key == "horizontal-scale") {
      cfg.h_scale = parse_num(key, val);
    } else if (key == "first-line-indent") {
      cfg.first_line_indent_pt = parse_num(key, val);
    } else if (key == "left-indent") {
      cfg.left_indent_pt = parse_num(key, val);
    } else if (key == "right-indent") {
      cfg.right_indent_pt = parse_num(key, val);
    } else if (key == "space-before") {
      cfg.space_before_pt = parse_num(key, val);
    } else if (key == "space-after") {
      cfg.space_after_pt = parse_num(key, val);
    } else if (key == "border-width") {
      cfg.border_width_pt = parse_num(key, val);
    } else if (key == "border-padding") {
      cfg.border_padding_pt = parse_num(key, val);
    } else if (key == "page-bg-color") {
      cfg.page_bg_color = parse_color(val);
    } else if (key == "para-bg-color") {
      cfg.para_bg_color = parse_color(val);
    } else if (key == "newline-markup") {
      cfg.newline_markup = val;
    } else if (key == "auto-crop-width") {
      cfg.auto_crop_width = parse_bool(key, val);
    } else if (key == "auto-crop-last-page") {
      cfg.auto_crop_last_page = parse_bool(key, val);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RenderConfig load_render_config(const std::string& path) {
  return parse_render_config(read_file(path));
}

std::string serialize_render_config(const RenderConfig& cfg) {
  std::ostringstream out;
  out << "page-size " << format_num(cfg.page_width_pt) << "x" << format_num(cfg.page_height_pt)
      << "\n";
  out << "dpi " << cfg.dpi << "\n";
  out << "margin-x " << format_num(cfg.margin_x_pt) << "\n";
  out << "margin-y " << format_num(cfg.margin_y_pt) << "\n";
  out << "font-path " << cfg.font_id << "\n";
  out << "font-size " << format_num(cfg.font_size_pt) << "\n";
  out << "line-height " << format_num(cfg.line_height_pt) << "\n";
  out << "font-color " << format_color(cfg.font_color) << "\n";
  out << "alignment " << format_alignment(cfg.alignment) << "\n";
  out << "horizontal-scale " << format_num(cfg.h_scale) << "\n";
  out << "first-line-indent " << format_num(cfg.first_line_indent_pt) << "\n";
  out << "left-indent " << format_num(cfg.left_indent_pt) << "\n";
  out << "right-indent " << format_num(cfg.right_indent_pt) << "\n";
  out << "space-before " << format_num(cfg.space_before_pt) << "\n";
  out << "space-after " << format_num(cfg.space_after_pt) << "\n";
  out << "border-width " << format_num(cfg.border_width_pt) << "\n";
  out << "border-padding " << format_num(cfg.border_padding_pt) << "\n";
  out << "page-bg-color " << format_color(cfg.page_bg_color) << "\n";
  out << "para-bg-color " << format_color(cfg.para_bg_color) << "\n";
  if (!cfg.newline_markup.empty()) out << "newline-markup " << cfg.newline_markup << "\n";
  out << "auto-crop-width " << (cfg.auto_crop_width ? "true" : "false") << "\n";
  out << "auto-crop-last-page " << (cfg.auto_crop_last_page ? "true" : "false") << "\n";
  return out.str();
}

std::string render_config_hash(const RenderConfig& cfg) {
  return to_hex(fnv1a64(serialize_render_config(cfg)));
}

}  // namespace vtc
