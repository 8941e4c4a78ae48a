#include "truetype.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "raster_fill.hpp"
#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

using detail::GlyphOutline;
using detail::GlyphPoint;

class Reader {
 public:
  Reader(const std::vector<uint8_t>& data, const std::string& id) : data_(data), id_(id) {}

  uint8_t u8(size_t off) const {
    check(off, 1);
    return data_[off];
  }
  uint16_t u16(size_t off) const {
    check(off, 2);
    return static_cast<uint16_t>((data_[off] << 8) | data_[off + 1]);
  }
  int16_t i16(size_t off) const { return static_cast<int16_t>(u16(off)); }
  uint32_t u32(size_t off) const {
    check(off, 4);
    return (uint32_t(data_[off]) << 24) | (uint32_t(data_[off + 1]) << 16) |
           (uint32_t(data_[off + 2]) << 8) | uint32_t(data_[off + 3]);
  }
  size_t size() const { return data_.size(); }

 private:
  void check(size_t off, size_t n) const {
    if (off + n > data_.size()) throw FontError("malformed font (truncated table): " + id_);
  }
  const std::vector<uint8_t>& data_;
  const std::string& id_;
};

// Flattening density follows the device-space control net length.
int quad_segments(double x0, double y0, double cx, double cy, double x1, double y1) {
  double d = std::hypot(cx - x0, cy - y0) + std::hypot(x1 - cx, y1 - cy);
  return std::clamp(static_cast<int>(std::ceil(std::sqrt(d * 2.0))), 2, 16);
}

}  // namespace

std::shared_ptr<TrueTypeFont> TrueTypeFont::load(const std::string& path, const std::string& id) {
  auto font = std::shared_ptr<TrueTypeFont>(new TrueTypeFont());
  font->id_ = id;
  try {
    std::string bytes = read_file(path);
    font->data_.assign(bytes.begin(), bytes.end());
  } catch (const IoError& e) {
    throw FontError("cannot read font " + id + ": " + e.what());
  }
  font->parse();
  return font;
}

void TrueTypeFont::parse() {
  Reader rd(data_, id_);
  uint32_t sfnt = rd.u32(0);
  if (sfnt == 0x4F54544F)  // 'OTTO'
    throw FontError("CFF-outline font unsupported: " + id_);
  if (sfnt != 0x00010000 && sfnt != 0x74727565)  // 1.0 or 'true'
    throw FontError("not a TrueType font: " + id_);

  uint16_t num_tables = rd.u16(4);
  size_t head = 0, maxp = 0, hhea = 0, cmap = 0;
  for (uint16_t i = 0; i < num_tables; ++i) {
    size_t rec = 12 + 16 * static_cast<size_t>(i);
    uint32_t tag = rd.u32(rec);
    uint32_t off = rd.u32(rec + 8);
    uint32_t len = rd.u32(rec + 12);
    if (off + static_cast<uint64_t>(len) > data_.size())
      throw FontError("malformed font (table out of range): " + id_);
    switch (tag) {
      case 0x68656164: head = off; break;          // head
      case 0x6D617870: maxp = off; break;          // maxp
      case 0x68686561: hhea = off; break;          // hhea
      case 0x636D6170: cmap = off; break;          // cmap
      case 0x686D7478: hmtx_off_ = off; break;     // hmtx
      case 0x6C6F6361:                             // loca
        loca_off_ = off;
        loca_len_ = len;
        break;
      case 0x676C7966:                             // glyf
        glyf_off_ = off;
        glyf_len_ = len;
        break;
      default: break;
    }
  }
  if (!head || !maxp || !hhea || !cmap || !hmtx_off_ || !loca_off_ || !glyf_off_)
    throw FontError("font missing required tables: " + id_);

  units_per_em_ = rd.u16(head + 18);
  if (units_per_em_ < 16) throw FontError("bad unitsPerEm: " + id_);
  long_loca_ = rd.i16(head + 50) != 0;

  num_glyphs_ = rd.u16(maxp + 4);
  ascent_ = rd.i16(hhea + 4);
  descent_ = -static_cast<double>(rd.i16(hhea + 6));
  if (descent_ < 0) descent_ = 0;
  num_hmetrics_ = rd.u16(hhea + 34);
  if (num_hmetrics_ == 0 || num_hmetrics_ > num_glyphs_)
    throw FontError("bad hhea metrics count: " + id_);

  // cmap: prefer a UCS-4 subtable, then windows BMP, then anything parseable.
  uint16_t n_sub = rd.u16(cmap + 2);
  size_t best = 0;
  int best_rank = -1;
  for (uint16_t i = 0; i < n_sub; ++i) {
    size_t rec = cmap + 4 + 8 * static_cast<size_t>(i);
    uint16_t plat = rd.u16(rec);
    uint16_t enc = rd.u16(rec + 2);
    size_t sub = cmap + rd.u32(rec + 4);
    uint16_t fmt = rd.u16(sub);
    int rank = -1;
    if (plat == 3 && enc == 10 && fmt == 12) rank = 4;
    else if (plat == 0 && fmt == 12) rank = 3;
    else if (plat == 3 && enc == 1 && fmt == 4) rank = 2;
    else if (plat == 0 && fmt == 4) rank = 1;
    else if (fmt == 4 || fmt == 12 || fmt == 6 || fmt == 0) rank = 0;
    if (rank > best_rank) {
      best_rank = rank;
      best = sub;
    }
  }
  if (best_rank < 0) throw FontError("no usable cmap subtable: " + id_);

  uint16_t fmt = rd.u16(best);
  if (fmt == 0) {
    for (uint32_t c = 0; c < 256; ++c) {
      uint8_t g = rd.u8(best + 6 + c);
      if (g) cmap_[c] = g;
    }
  } else if (fmt == 4) {
    uint16_t seg_x2 = rd.u16(best + 6);
    size_t ends = best + 14;
    size_t starts = ends + seg_x2 + 2;
    size_t deltas = starts + seg_x2;
    size_t range_offs = deltas + seg_x2;
    for (uint16_t s = 0; s + 2 <= seg_x2; s += 2) {
      uint16_t end = rd.u16(ends + s);
      uint16_t start = rd.u16(starts + s);
      int16_t delta = rd.i16(deltas + s);
      uint16_t range_off = rd.u16(range_offs + s);
      if (start == 0xFFFF) continue;
      for (uint32_t c = start; c <= end && c != 0x10000; ++c) {
        uint16_t g;
        if (range_off == 0) {
          g = static_cast<uint16_t>(c + delta);
        } else {
          size_t gi = range_offs + s + range_off + 2 * (c - start);
          g = rd.u16(gi);
          if (g) g = static_cast<uint16_t>(g + delta);
        }
        if (g && g < num_glyphs_) cmap_[c] = g;
      }
    }
  } else if (fmt == 6) {
    uint16_t first = rd.u16(best + 6);
    uint16_t count = rd.u16(best + 8);
    for (uint16_t i = 0; i < count; ++i) {
      uint16_t g = rd.u16(best + 10 + 2 * static_cast<size_t>(i));
      if (g && g < num_glyphs_) cmap_[first + i] = g;
    }
  } else if (fmt == 12) {
    uint32_t n_groups = rd.u32(best + 12);
    if (n_groups > (1u << 20)) throw FontError("oversized cmap: " + id_);
    for (uint32_t gi = 0; gi < n_groups; ++gi) {
      size_t rec = best + 16 + 12 * static_cast<size_t>(gi);
      uint32_t start = rd.u32(rec);
      uint32_t end = rd.u32(rec + 4);
      uint32_t glyph = rd.u32(rec + 8);
      if (end - start > (1u << 20)) continue;  // private-use blobs
      for (uint32_t c = start; c <= end; ++c) {
        uint16_t g = static_cast<uint16_t>(glyph + (c - start));
        if (g && g < num_glyphs_) cmap_[c] = g;
      }
    }
  }

  size_t expect_loca = (static_cast<size_t>(num_glyphs_) + 1) * (long_loca_ ? 4 : 2);
  if (loca_len_ < expect_loca) throw FontError("loca table too small: " + id_);

  outline_cache_.resize(num_glyphs_);
}

uint16_t TrueTypeFont::glyph_index(char32_t cp) const {
  auto it = cmap_.find(static_cast<uint32_t>(cp));
  return it == cmap_.end() ? 0 : it->second;
}

double TrueTypeFont::advance_units(char32_t cp) const {
  Reader rd(data_, id_);
  uint16_t gid = glyph_index(cp);
  uint16_t metric = std::min<uint16_t>(gid, static_cast<uint16_t>(num_hmetrics_ - 1));
  return rd.u16(hmtx_off_ + 4 * static_cast<size_t>(metric));
}

detail::GlyphOutline TrueTypeFont::parse_outline(uint16_t gid, int depth) const {
  GlyphOutline result;
  if (gid >= num_glyphs_ || depth > 6) return result;
  Reader rd(data_, id_);

  size_t off, next;
  if (long_loca_) {
    off = rd.u32(loca_off_ + 4 * static_cast<size_t>(gid));
    next = rd.u32(loca_off_ + 4 * static_cast<size_t>(gid) + 4);
  } else {
    off = 2 * static_cast<size_t>(rd.u16(loca_off_ + 2 * static_cast<size_t>(gid)));
    next = 2 * static_cast<size_t>(rd.u16(loca_off_ + 2 * static_cast<size_t>(gid) + 2));
  }
  if (next <= off) return result;  // empty glyph (e.g. space)
  size_t g = glyf_off_ + off;

  int16_t n_contours = rd.i16(g);
  if (n_contours >= 0) {
    size_t p = g + 10;
    std::vector<uint16_t> end_pts(static_cast<size_t>(n_contours));
    for (int i = 0; i < n_contours; ++i) end_pts[static_cast<size_t>(i)] = rd.u16(p + 2 * static_cast<size_t>(i));
    p += 2 * static_cast<size_t>(n_contours);
    uint16_t instr_len = rd.u16(p);
    p += 2 + instr_len;
    size_t n_points = n_contours ? end_pts.back() + 1 : 0;

    std::vector<uint8_t> flags;
    flags.reserve(n_points);
    while (flags.size() < n_points) {
      uint8_t f = rd.u8(p++);
      flags.push_back(f);
      if (f & 0x08) {
        uint8_t rep = rd.u8(p++);
        for (uint8_t r = 0; r < rep && flags.size() < n_points; ++r) flags.push_back(f);
      }
    }

    std::vector<double> xs(n_points), ys(n_points);
    double x = 0;
    for (size_t i = 0; i < n_points; ++i) {
      uint8_t f = flags[i];
      if (f & 0x02) {
        uint8_t d = rd.u8(p++);
        x += (f & 0x10) ? d : -static_cast<double>(d);
      } else if (!(f & 0x10)) {
        x += rd.i16(p);
        p += 2;
      }
      xs[i] = x;
    }
    double y = 0;
    for (size_t i = 0; i < n_points; ++i) {
      uint8_t f = flags[i];
      if (f & 0x04) {
        uint8_t d = rd.u8(p++);
        y += (f & 0x20) ? d : -static_cast<double>(d);
      } else if (!(f & 0x20)) {
        y += rd.i16(p);
        p += 2;
      }
      ys[i] = y;
    }

    size_t start = 0;
    for (int c = 0; c < n_contours; ++c) {
      size_t end = end_pts[static_cast<size_t>(c)];
      if (end < start) break;
      std::vector<GlyphPoint> contour;
      for (size_t i = start; i <= end; ++i)
        contour.push_back(GlyphPoint{xs[i], ys[i], (flags[i] & 0x01) != 0});
      if (contour.size() >= 2) result.contours.push_back(std::move(contour));
      start = end + 1;
    }
  } else {
    // Composite glyph: offsets plus optional 2x2 transform per component.
    size_t p = g + 10;
    bool more = true;
    while (more) {
      uint16_t flags = rd.u16(p);
      uint16_t child_gid = rd.u16(p + 2);
      p += 4;
      double dx = 0, dy = 0;
      if (flags & 0x0001) {  // words
        if (flags & 0x0002) {
          dx = rd.i16(p);
          dy = rd.i16(p + 2);
        }
        p += 4;
      } else {
        if (flags & 0x0002) {
          dx = static_cast<int8_t>(rd.u8(p));
          dy = static_cast<int8_t>(rd.u8(p + 1));
        }
        p += 2;
      }
      double a = 1, b = 0, c2 = 0, d = 1;
      if (flags & 0x0008) {
        a = d = rd.i16(p) / 16384.0;
        p += 2;
      } else if (flags & 0x0040) {
        a = rd.i16(p) / 16384.0;
        d = rd.i16(p + 2) / 16384.0;
        p += 4;
      } else if (flags & 0x0080) {
        a = rd.i16(p) / 16384.0;
        b = rd.i16(p + 2) / 16384.0;
        c2 = rd.i16(p + 4) / 16384.0;
        d = rd.i16(p + 6) / 16384.0;
        p += 8;
      }
      GlyphOutline child = parse_outline(child_gid, depth + 1);
      for (auto& contour : child.contours) {
        for (auto& pt : contour) {
          double nx = a * pt.x + c2 * pt.y + dx;
          double ny = b * pt.x + d * pt.y + dy;
          pt.x = nx;
          pt.y = ny;
        }
        result.contours.push_back(std::move(contour));
      }
      more = (flags & 0x0020) != 0;
    }
  }
  return result;
}

std::shared_ptr<const detail::GlyphOutline> TrueTypeFont::outline(uint16_t gid) const {
  if (gid >= num_glyphs_) gid = 0;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    if (outline_cache_[gid]) return outline_cache_[gid];
  }
  auto parsed = std::make_shared<GlyphOutline>(parse_outline(gid, 0));
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (!outline_cache_[gid]) outline_cache_[gid] = parsed;
  return outline_cache_[gid];
}

void TrueTypeFont::draw_glyph(Raster& target, char32_t cp, double x_px, double baseline_y_px,
                              double size_px, double h_scale, Rgb color) const {
  if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == 0x00A0) return;
  auto shape = outline(glyph_index(cp));
  if (shape->contours.empty()) return;

  double sx = size_px * h_scale / units_per_em_;
  double sy = size_px / units_per_em_;

  std::vector<detail::Polyline> polys;
  polys.reserve(shape->contours.size());
  for (const auto& contour : shape->contours) {
    // Expand quadratic segments; consecutive off-curve points imply on-curve
    // midpoints per the TrueType convention.
    std::vector<GlyphPoint> norm;
    size_t n = contour.size();
    size_t first_on = n;
    for (size_t i = 0; i < n; ++i) {
      if (contour[i].on_curve) {
        first_on = i;
        break;
      }
    }
    if (first_on == n) {
      // All off-curve: start from the midpoint of the first pair.
      GlyphPoint mid{(contour[0].x + contour[1].x) / 2, (contour[0].y + contour[1].y) / 2, true};
      norm.push_back(mid);
      for (size_t i = 1; i <= n; ++i) norm.push_back(contour[i % n]);
      norm.push_back(mid);
    } else {
      for (size_t i = 0; i <= n; ++i) norm.push_back(contour[(first_on + i) % n]);
    }

    detail::Polyline poly;
    auto emit = [&](double gx, double gy) {
      poly.push_back({x_px + gx * sx, baseline_y_px - gy * sy});
    };
    auto emit_quad = [&](const GlyphPoint& p0, const GlyphPoint& ctrl, const GlyphPoint& p1) {
      double dx0 = x_px + p0.x * sx, dy0 = baseline_y_px - p0.y * sy;
      double dcx = x_px + ctrl.x * sx, dcy = baseline_y_px - ctrl.y * sy;
      double dx1 = x_px + p1.x * sx, dy1 = baseline_y_px - p1.y * sy;
      int segs = quad_segments(dx0, dy0, dcx, dcy, dx1, dy1);
      for (int s = 1; s <= segs; ++s) {
        double t = static_cast<double>(s) / segs;
        double u = 1.0 - t;
        poly.push_back({u * u * dx0 + 2 * u * t * dcx + t * t * dx1,
                        u * u * dy0 + 2 * u * t * dcy + t * t * dy1});
      }
    };

    emit(norm[0].x, norm[0].y);
    size_t i = 1;
    while (i < norm.size()) {
      const GlyphPoint& prev = norm[i - 1];
      const GlyphPoint& cur = norm[i];
      if (cur.on_curve) {
        emit(cur.x, cur.y);
        ++i;
      } else if (i + 1 < norm.size()) {
        const GlyphPoint& nxt = norm[i + 1];
        if (nxt.on_curve) {
          emit_quad(prev, cur, nxt);
          i += 2;
        } else {
          GlyphPoint mid{(cur.x + nxt.x) / 2, (cur.y + nxt.y) / 2, true};
          emit_quad(prev, cur, mid);
          ++i;
          norm[i - 1] = mid;  // treat midpoint as the new previous on-curve
        }
      } else {
        break;
      }
    }
    if (poly.size() >= 3) polys.push_back(std::move(poly));
  }
  detail::fill_polygons(target, polys, color);
}

}  // namespace vtc
