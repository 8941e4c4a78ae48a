#include "vtc/config_sampler.hpp"

#include <array>
#include <cmath>

#include "vtc/errors.hpp"
#include "vtc/util.hpp"

namespace vtc {

namespace {

int sample_dpi(Rng& rng) {
  // Tiers: lowest 45-59, low 60-71, medium 72-119, normal (fixed set),
  // high > 300. Normal/medium dominate, with small spikes to the extremes.
  static const std::array<double, 5> weights = {0.05, 0.08, 0.35, 0.45, 0.07};
  static const std::vector<int> normal = {72, 80, 96, 100, 110, 120, 144, 150, 300};
  static const std::vector<int> high = {304, 320, 336};
  switch (rng.weighted(weights)) {
    case 0: return static_cast<int>(rng.uniform_int(45, 59));
    case 1: return static_cast<int>(rng.uniform_int(60, 71));
    case 2: return static_cast<int>(rng.uniform_int(72, 119));
    case 3: return rng.pick(normal);
    default: return rng.pick(high);
  }
}

void sample_page_size(Rng& rng, RenderConfig& cfg) {
  struct Paper {
    double w, h;
  };
  static const std::vector<Paper> papers = {
      {595, 842},   // A4
      {612, 792},   // Letter
      {612, 1008},  // Legal
      {420, 595},   // A5
      {499, 709},   // B5
      {842, 1190},  // A3
      {709, 1001},  // B4
      {792, 1224},  // Tabloid
  };
  static const std::array<double, 8> paper_prior = {0.35, 0.2, 0.08, 0.1, 0.1, 0.05, 0.06, 0.06};
  static const std::vector<double> ratios = {1.414, 1.333, 1.5, 1.778};

  static const std::array<double, 3> mode_w = {0.6, 0.25, 0.15};
  switch (rng.weighted(mode_w)) {
    case 0: {
      const Paper& p = papers[rng.weighted(paper_prior)];
      cfg.page_width_pt = p.w;
      cfg.page_height_pt = p.h;
      break;
    }
    case 1: {
      double w = rng.uniform_real(420.0, 850.0);
      double r = rng.pick(ratios);
      cfg.page_width_pt = std::round(w);
      cfg.page_height_pt = std::round(w * r);
      break;
    }
    default: {
      // Fully random aspect, skewed from narrow toward tall.
      double w = rng.uniform_real(300.0, 900.0);
      double aspect = 1.0 + std::pow(rng.uniform(), 0.7);  // (1, 2], tall-leaning
      cfg.page_width_pt = std::round(w);
      cfg.page_height_pt = std::round(std::min(w * aspect, 1400.0));
      break;
    }
  }
}

RenderConfig sample_once(Rng& rng) {
  RenderConfig cfg;  // start from defaults

  cfg.dpi = sample_dpi(rng);
  sample_page_size(rng, cfg);

  static const std::vector<double> font_sizes = {7, 7.5, 8, 9, 9.5, 10, 11, 12, 14};
  cfg.font_size_pt = rng.pick(font_sizes);
  cfg.line_height_pt = cfg.font_size_pt + static_cast<double>(rng.uniform_int(0, 3));

  static const std::array<double, 4> align_w = {0.45, 0.45, 0.05, 0.05};
  static const std::array<Alignment, 4> aligns = {Alignment::LEFT, Alignment::JUSTIFY,
                                                  Alignment::RIGHT, Alignment::CENTER};
  cfg.alignment = aligns[rng.weighted(align_w)];

  // Margins: all-equal, vertical-larger, or horizontal-larger, 10-40 pt.
  static const std::array<double, 3> margin_w = {0.5, 0.25, 0.25};
  double m1 = std::round(rng.uniform_real(10.0, 40.0));
  double m2 = std::round(rng.uniform_real(10.0, 40.0));
  switch (rng.weighted(margin_w)) {
    case 0: cfg.margin_x_pt = cfg.margin_y_pt = m1; break;
    case 1:
      cfg.margin_x_pt = std::min(m1, m2);
      cfg.margin_y_pt = std::max(m1, m2);
      break;
    default:
      cfg.margin_x_pt = std::max(m1, m2);
      cfg.margin_y_pt = std::min(m1, m2);
      break;
  }

  // Indent modes: none; first-line ~1-2.5 em; block with left/right indents.
  static const std::array<double, 3> indent_w = {0.6, 0.25, 0.15};
  switch (rng.weighted(indent_w)) {
    case 0: break;
    case 1:
      cfg.first_line_indent_pt = std::round(cfg.font_size_pt * rng.uniform_real(1.0, 2.5));
      break;
    default:
      cfg.left_indent_pt = std::round(rng.uniform_real(10.0, 30.0));
      cfg.right_indent_pt = std::round(rng.uniform_real(0.0, 20.0));
      break;
  }

  // Paragraph spacing: none, small, large.
  static const std::array<double, 3> space_w = {0.6, 0.3, 0.1};
  switch (rng.weighted(space_w)) {
    case 0: break;
    case 1:
      cfg.space_before_pt = static_cast<double>(rng.uniform_int(0, 2));
      cfg.space_after_pt = static_cast<double>(rng.uniform_int(1, 4));
      break;
    default:
      cfg.space_before_pt = static_cast<double>(rng.uniform_int(2, 6));
      cfg.space_after_pt = static_cast<double>(rng.uniform_int(6, 12));
      break;
  }

  static const std::array<double, 6> hs_w = {8, 4, 2, 1, 0.5, 0.25};
  static const std::array<double, 6> hs_v = {1.0, 0.95, 0.9, 0.85, 0.8, 0.75};
  cfg.h_scale = hs_v[rng.weighted(hs_w)];

  return cfg;
}

}  // namespace

SampleStrategy parse_sample_strategy(const std::string& s) {
  std::string v = to_lower(s);
  if (v == "default") return SampleStrategy::kDefault;
  if (v == "diverse") return SampleStrategy::kDiverse;
  throw UsageError("unknown sampling strategy '" + s + "' (want: default, diverse)");
}

RenderConfig sample_config(uint64_t seed, SampleStrategy strategy) {
  if (strategy == SampleStrategy::kDefault) return RenderConfig{};

  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    RenderConfig cfg = sample_once(rng);
    try {
      cfg.validate();
    } catch (const ConfigError&) {
      continue;
    }
    // Keep sampled pages comfortably renderable: room for a handful of
    // glyphs per line and a few lines per page.
    if (cfg.content_width_pt() < 8.0 * cfg.font_size_pt) continue;
    if (cfg.content_height_pt() < 3.0 * cfg.line_height_pt) continue;
    return cfg;
  }
  throw ConfigError("sample_config: could not draw a valid config");
}

}  // namespace vtc
