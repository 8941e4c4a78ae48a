#pragma once

#include <cstdint>
#include <string>

#include "vtc/render_config.hpp"

namespace vtc {

enum class SampleStrategy {
  kDefault,  // degenerate: always the stock defaults
  kDiverse,  // typography/layout mixtures
};

SampleStrategy parse_sample_strategy(const std::string& s);

/// Deterministic in `seed`. The diverse profile draws dpi from tiered sets
/// favoring normal/medium, page geometry from fixed paper sizes and aspect
/// modes, font size from the nine standard values with line height tied to
/// font size + {0..3}, alignment dominated by LEFT/JUSTIFY and h-scale in
/// [0.75, 1.0] with decaying weights. Returned configs always satisfy the
/// RenderConfig invariants.
RenderConfig sample_config(uint64_t seed, SampleStrategy strategy);

}  // namespace vtc
