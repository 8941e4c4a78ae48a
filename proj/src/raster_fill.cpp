#include "raster_fill.hpp"

#include <algorithm>
#include <cmath>

namespace vtc::detail {

namespace {

constexpr int kSubSamples = 4;

struct Edge {
  double x0, y0, x1, y1;
  int dir;  // +1 downward, -1 upward
};

struct Crossing {
  double x;
  int dir;
};

// Adds `weight` coverage over [xa, xb) with fractional ends.
void add_span(std::vector<double>& cov, double xa, double xb, double weight) {
  double lo = 0.0;
  double hi = static_cast<double>(cov.size());
  xa = std::max(xa, lo);
  xb = std::min(xb, hi);
  if (xb <= xa) return;
  int ia = static_cast<int>(std::floor(xa));
  int ib = static_cast<int>(std::floor(xb));
  if (ia == ib) {
    cov[static_cast<size_t>(ia)] += (xb - xa) * weight;
    return;
  }
  cov[static_cast<size_t>(ia)] += (ia + 1 - xa) * weight;
  for (int i = ia + 1; i < ib; ++i) cov[static_cast<size_t>(i)] += weight;
  if (ib < static_cast<int>(cov.size()) && xb > ib)
    cov[static_cast<size_t>(ib)] += (xb - ib) * weight;
}

}  // namespace

void blend_pixel(Raster& target, int x, int y, Rgb color, double alpha) {
  if (x < 0 || y < 0 || x >= target.width || y >= target.height) return;
  alpha = std::clamp(alpha, 0.0, 1.0);
  if (alpha <= 0.0) return;
  uint8_t* p = target.at(x, y);
  p[0] = static_cast<uint8_t>(std::lround(p[0] * (1.0 - alpha) + color.r * alpha));
  p[1] = static_cast<uint8_t>(std::lround(p[1] * (1.0 - alpha) + color.g * alpha));
  p[2] = static_cast<uint8_t>(std::lround(p[2] * (1.0 - alpha) + color.b * alpha));
}

void fill_polygons(Raster& target, const std::vector<Polyline>& polys, Rgb color) {
  std::vector<Edge> edges;
  double ymin = 1e30, ymax = -1e30;
  for (const auto& poly : polys) {
    size_t n = poly.size();
    if (n < 2) continue;
    for (size_t i = 0; i < n; ++i) {
      const DevPoint& a = poly[i];
      const DevPoint& b = poly[(i + 1) % n];
      if (a.y == b.y) continue;
      edges.push_back(Edge{a.x, a.y, b.x, b.y, b.y > a.y ? 1 : -1});
      ymin = std::min(ymin, std::min(a.y, b.y));
      ymax = std::max(ymax, std::max(a.y, b.y));
    }
  }
  if (edges.empty()) return;

  int row_lo = std::max(0, static_cast<int>(std::floor(ymin)));
  int row_hi = std::min(target.height - 1, static_cast<int>(std::ceil(ymax)));
  if (row_lo > row_hi) return;

  std::vector<double> cov(static_cast<size_t>(target.width));
  std::vector<Crossing> crossings;
  const double weight = 1.0 / kSubSamples;

  for (int row = row_lo; row <= row_hi; ++row) {
    std::fill(cov.begin(), cov.end(), 0.0);
    bool any = false;
    for (int s = 0; s < kSubSamples; ++s) {
      double ys = row + (s + 0.5) / kSubSamples;
      crossings.clear();
      for (const Edge& e : edges) {
        double elo = std::min(e.y0, e.y1);
        double ehi = std::max(e.y0, e.y1);
        if (ys < elo || ys >= ehi) continue;
        double t = (ys - e.y0) / (e.y1 - e.y0);
        crossings.push_back(Crossing{e.x0 + t * (e.x1 - e.x0), e.dir});
      }
      if (crossings.empty()) continue;
      std::sort(crossings.begin(), crossings.end(),
                [](const Crossing& a, const Crossing& b) { return a.x < b.x; });
      int winding = 0;
      double span_start = 0.0;
      for (const Crossing& c : crossings) {
        int prev = winding;
        winding += c.dir;
        if (prev == 0 && winding != 0) {
          span_start = c.x;
        } else if (prev != 0 && winding == 0) {
          if (c.x > span_start) {
            add_span(cov, span_start, c.x, weight);
            any = true;
          }
        }
      }
    }
    if (!any) continue;
    for (int x = 0; x < target.width; ++x) {
      if (cov[static_cast<size_t>(x)] > 0.0) blend_pixel(target, x, row, color, cov[static_cast<size_t>(x)]);
    }
  }
}

void fill_rect(Raster& target, double x0, double y0, double x1, double y1, Rgb color) {
  if (x1 <= x0 || y1 <= y0) return;
  int ry0 = std::max(0, static_cast<int>(std::floor(y0)));
  int ry1 = std::min(target.height - 1, static_cast<int>(std::ceil(y1)) - 1);
  for (int y = ry0; y <= ry1; ++y) {
    double row_cov = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
    if (row_cov <= 0.0) continue;
    int rx0 = std::max(0, static_cast<int>(std::floor(x0)));
    int rx1 = std::min(target.width - 1, static_cast<int>(std::ceil(x1)) - 1);
    for (int x = rx0; x <= rx1; ++x) {
      double col_cov = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
      if (col_cov <= 0.0) continue;
      blend_pixel(target, x, y, color, row_cov * col_cov);
    }
  }
}

void stroke_rect(Raster& target, double x0, double y0, double x1, double y1, double width,
                 Rgb color) {
  if (width <= 0.0 || x1 <= x0 || y1 <= y0) return;
  fill_rect(target, x0 - width, y0 - width, x1 + width, y0, color);  // top
  fill_rect(target, x0 - width, y1, x1 + width, y1 + width, color);  // bottom
  fill_rect(target, x0 - width, y0, x0, y1, color);                  // left
  fill_rect(target, x1, y0, x1 + width, y1, color);                  // right
}

}  // namespace vtc::detail
