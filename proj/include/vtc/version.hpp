#pragma once

namespace vtc {

// Bumping this invalidates byte-level reproducibility of rendered pages and
// manifests; it is recorded in every corpus manifest header.
inline constexpr const char* kVersion = "vtc 0.1.0";

}  // namespace vtc
