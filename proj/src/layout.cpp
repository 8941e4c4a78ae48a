#include "vtc/layout.hpp"

#include <algorithm>
#include <cmath>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

constexpr double kEps = 1e-9;

bool is_gap_char(char32_t cp) {
  // Breakable whitespace and zero-width control characters ('\n' is handled
  // as a paragraph boundary before this is consulted).
  return cp == U' ' || cp == U'\t' || cp == U'\r' || (cp < 0x20 && cp != U'\n');
}

struct Shaper {
  const Font& font;
  const RenderConfig& cfg;
  double space_adv;

  Shaper(const Font& f, const RenderConfig& c)
      : font(f), cfg(c), space_adv(f.advance_pt(U' ', c.font_size_pt, c.h_scale)) {}

  double advance(char32_t cp) const {
    if (cp == U' ') return space_adv;
    if (cp == U'\t') return 4.0 * space_adv;
    if (cp == U'\r' || cp < 0x20) return 0.0;
    return font.advance_pt(cp, cfg.font_size_pt, cfg.h_scale);
  }

  bool has_ink(char32_t cp) const {
    return !(cp == U' ' || cp == U'\t' || cp == U'\r' || cp == 0x00A0 || cp < 0x20);
  }
};

struct Paragraph {
  std::vector<Utf8Char> chars;          // without the terminating newline
  std::vector<Utf8Char> newline;        // 0 or 1 element
};

std::vector<Paragraph> split_paragraphs(const std::vector<Utf8Char>& chars) {
  std::vector<Paragraph> paras;
  Paragraph cur;
  for (const Utf8Char& c : chars) {
    if (c.cp == U'\n') {
      cur.newline.push_back(c);
      paras.push_back(std::move(cur));
      cur = Paragraph{};
    } else {
      cur.chars.push_back(c);
    }
  }
  if (!cur.chars.empty()) paras.push_back(std::move(cur));
  return paras;
}

// Wraps one paragraph into lines of placed glyphs (x positions relative to
// the line origin; alignment offsets are applied afterwards).
std::vector<std::vector<PlacedGlyph>> wrap_paragraph(const Paragraph& para, const Shaper& sh,
                                                     double avail_first, double avail_rest) {
  std::vector<std::vector<PlacedGlyph>> lines;
  lines.emplace_back();

  const auto& cps = para.chars;
  size_t pos = 0;
  double width = 0.0;
  double avail = avail_first;

  std::vector<PlacedGlyph> pending;  // uncommitted whitespace run
  double pending_width = 0.0;

  auto flush_pending_invisible = [&]() {
    for (PlacedGlyph g : pending) {
      g.advance_pt = 0.0;
      g.stretchable = false;
      lines.back().push_back(g);
    }
    pending.clear();
    pending_width = 0.0;
  };

  auto new_line = [&]() {
    flush_pending_invisible();
    lines.emplace_back();
    width = 0.0;
    avail = avail_rest;
  };

  while (pos < cps.size()) {
    if (is_gap_char(cps[pos].cp)) {
      const Utf8Char& c = cps[pos];
      PlacedGlyph g;
      g.cp = c.cp;
      g.byte_begin = c.begin;
      g.byte_end = c.end;
      g.advance_pt = sh.advance(c.cp);
      g.has_ink = false;
      g.stretchable = c.cp == U' ' || c.cp == U'\t';
      pending.push_back(g);
      pending_width += g.advance_pt;
      ++pos;
      continue;
    }

    // Measure the next word.
    size_t word_end = pos;
    double word_width = 0.0;
    while (word_end < cps.size() && !is_gap_char(cps[word_end].cp) && cps[word_end].cp != U'\n')
      word_width += sh.advance(cps[word_end++].cp);

    if (width + pending_width + word_width <= avail + kEps) {
      // Commit the gap and the word.
      for (const PlacedGlyph& g : pending) lines.back().push_back(g);
      width += pending_width;
      pending.clear();
      pending_width = 0.0;
      for (size_t i = pos; i < word_end; ++i) {
        PlacedGlyph g;
        g.cp = cps[i].cp;
        g.byte_begin = cps[i].begin;
        g.byte_end = cps[i].end;
        g.advance_pt = sh.advance(cps[i].cp);
        g.has_ink = sh.has_ink(cps[i].cp);
        lines.back().push_back(g);
        width += g.advance_pt;
      }
      pos = word_end;
      continue;
    }

    if (!lines.back().empty() || !pending.empty()) {
      // Word moves to the next line; the break eats the gap.
      new_line();
      continue;
    }

    // Over-wide word on an empty line: hard split at the last fitting
    // character, always taking at least one to guarantee progress.
    size_t take = pos;
    double w = 0.0;
    while (take < word_end) {
      double adv = sh.advance(cps[take].cp);
      if (take > pos && w + adv > avail + kEps) break;
      w += adv;
      ++take;
    }
    for (size_t i = pos; i < take; ++i) {
      PlacedGlyph g;
      g.cp = cps[i].cp;
      g.byte_begin = cps[i].begin;
      g.byte_end = cps[i].end;
      g.advance_pt = sh.advance(cps[i].cp);
      g.has_ink = sh.has_ink(cps[i].cp);
      lines.back().push_back(g);
    }
    pos = take;
    if (pos < cps.size()) new_line();
  }
  flush_pending_invisible();

  // The paragraph's newline is carried by its last line, as a zero-width
  // glyph; optional newline markup renders after it as decoration.
  for (const Utf8Char& nl : para.newline) {
    PlacedGlyph g;
    g.cp = nl.cp;
    g.byte_begin = nl.begin;
    g.byte_end = nl.end;
    lines.back().push_back(g);
  }
  return lines;
}

}  // namespace

size_t LayoutLine::span_begin() const { return glyphs.empty() ? 0 : glyphs.front().byte_begin; }
size_t LayoutLine::span_end() const { return glyphs.empty() ? 0 : glyphs.back().byte_end; }

double LayoutLine::advance_sum_pt() const {
  double s = 0.0;
  for (const PlacedGlyph& g : glyphs)
    if (!g.decoration) s += g.advance_pt;
  return s;
}

PageLayout layout_text(std::string_view text, const RenderConfig& cfg, FontPtr font) {
  cfg.validate();
  if (!font) throw FontError("layout_text: null font");

  const double content_w = cfg.content_width_pt();
  const double content_h = cfg.content_height_pt();
  if (std::floor(content_h / cfg.line_height_pt) < 1.0)
    throw ConfigError("config: no line fits within the page content box");
  double avail_first = content_w - cfg.first_line_indent_pt;
  if (avail_first <= 0.0)
    throw ConfigError("config: first-line indent leaves no room for text");

  PageLayout out;
  out.font = font;
  out.text_bytes = text.size();

  if (text.empty()) {
    out.pages.push_back(LayoutPage{{}, 0, 0});
    return out;
  }

  Shaper sh(*font, cfg);
  const double ascent = font->ascent_pt(cfg.font_size_pt);
  const std::vector<Utf8Char> chars = utf8_decode(text);
  const std::vector<Paragraph> paras = split_paragraphs(chars);

  const double border_extra =
      cfg.border_width_pt > 0.0 ? cfg.border_width_pt + cfg.border_padding_pt : 0.0;

  // Build all lines first, then paginate with a vertical cursor.
  struct PendingLine {
    std::vector<PlacedGlyph> glyphs;
    int paragraph_id;
    bool first_of_para;
    bool last_of_para;
  };
  std::vector<PendingLine> flat;
  for (size_t p = 0; p < paras.size(); ++p) {
    auto lines = wrap_paragraph(paras[p], sh, avail_first, content_w);
    for (size_t li = 0; li < lines.size(); ++li)
      flat.push_back(PendingLine{std::move(lines[li]), static_cast<int>(p), li == 0,
                                 li + 1 == lines.size()});
  }

  auto position_line = [&](PendingLine& line) {
    // Natural width and justify bookkeeping use source-character advances.
    double width = 0.0;
    int stretch_count = 0;
    for (const PlacedGlyph& g : line.glyphs) {
      width += g.advance_pt;
      if (g.stretchable && g.advance_pt > 0.0) ++stretch_count;
    }
    double avail = line.first_of_para ? avail_first : content_w;
    double origin = cfg.margin_x_pt + cfg.left_indent_pt +
                    (line.first_of_para ? cfg.first_line_indent_pt : 0.0);

    double stretch = 0.0;
    double offset = 0.0;
    switch (cfg.alignment) {
      case Alignment::LEFT: break;
      case Alignment::RIGHT: offset = std::max(0.0, avail - width); break;
      case Alignment::CENTER: offset = std::max(0.0, (avail - width) / 2.0); break;
      case Alignment::JUSTIFY:
        if (!line.last_of_para && stretch_count > 0 && width < avail)
          stretch = (avail - width) / stretch_count;
        break;
    }

    double x = origin + offset;
    for (PlacedGlyph& g : line.glyphs) {
      g.x_pt = x;
      if (g.stretchable && g.advance_pt > 0.0 && stretch > 0.0) g.advance_pt += stretch;
      x += g.advance_pt;
    }
    return x;  // pen position after the line, for newline markup
  };

  out.pages.emplace_back();
  double cursor = 0.0;  // within the content box
  bool page_has_line = false;

  for (PendingLine& line : flat) {
    double need_before = 0.0;
    if (line.first_of_para && page_has_line) need_before += cfg.space_before_pt;
    if (line.first_of_para) need_before += border_extra;

    if (page_has_line && cursor + need_before + cfg.line_height_pt > content_h + kEps) {
      out.pages.emplace_back();
      cursor = 0.0;
      page_has_line = false;
      need_before = line.first_of_para ? border_extra : 0.0;
    }
    cursor += need_before;

    double end_pen = position_line(line);

    // Newline markup decoration, drawn after the line's last glyph.
    if (!cfg.newline_markup.empty() && !line.glyphs.empty() &&
        line.glyphs.back().cp == U'\n' && !line.glyphs.back().decoration) {
      size_t nl_end = line.glyphs.back().byte_end;
      double x = end_pen;
      for (const Utf8Char& mc : utf8_decode(cfg.newline_markup)) {
        PlacedGlyph g;
        g.cp = mc.cp;
        g.byte_begin = nl_end;
        g.byte_end = nl_end;
        g.x_pt = x;
        g.advance_pt = sh.advance(mc.cp);
        g.has_ink = sh.has_ink(mc.cp);
        g.decoration = true;
        x += g.advance_pt;
        line.glyphs.push_back(g);
      }
    }

    LayoutLine placed;
    placed.top_pt = cfg.margin_y_pt + cursor;
    placed.baseline_pt = placed.top_pt + ascent;
    placed.glyphs = std::move(line.glyphs);
    placed.paragraph_id = line.paragraph_id;
    placed.paragraph_start = line.first_of_para;
    placed.paragraph_end = line.last_of_para;
    out.pages.back().lines.push_back(std::move(placed));

    cursor += cfg.line_height_pt;
    if (line.last_of_para) cursor += cfg.space_after_pt + border_extra;
    page_has_line = true;
  }

  // Contiguous byte coverage across pages.
  size_t prev_end = 0;
  for (LayoutPage& page : out.pages) {
    page.span_begin = prev_end;
    page.span_end = page.lines.empty() ? prev_end : page.lines.back().span_end();
    prev_end = page.span_end;
  }
  if (!out.pages.empty()) out.pages.back().span_end = text.size();
  return out;
}

}  // namespace vtc
