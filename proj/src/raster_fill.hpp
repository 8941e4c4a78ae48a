#pragma once

#include <vector>

#include "vtc/png_io.hpp"
#include "vtc/render_config.hpp"

namespace vtc::detail {

struct DevPoint {
  double x;
  double y;
};

using Polyline = std::vector<DevPoint>;  // implicitly closed

/// Non-zero-winding polygon fill with 4x vertical supersampling and
/// fractional horizontal coverage. Clips to the raster.
void fill_polygons(Raster& target, const std::vector<Polyline>& polys, Rgb color);

/// Axis-aligned rectangle fill with fractional edge coverage.
void fill_rect(Raster& target, double x0, double y0, double x1, double y1, Rgb color);

/// Opaque axis-aligned frame (border) of the given stroke width.
void stroke_rect(Raster& target, double x0, double y0, double x1, double y1, double width,
                 Rgb color);

void blend_pixel(Raster& target, int x, int y, Rgb color, double alpha);

}  // namespace vtc::detail
