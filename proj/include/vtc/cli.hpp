#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vtc/backend.hpp"

namespace vtc::cli {

/// Full command surface: render, sample-config, segment, build-dataset, run,
/// bench, stats. Returns the process exit status (0 success, 2 usage error,
/// 1 anything else).
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

/// Backend profile loader (flat key-value: type http|mock|replay plus
/// type-specific keys). Exposed for tests.
struct BackendProfile {
  std::unique_ptr<Backend> backend;
  int max_in_flight = 4;
};
BackendProfile load_backend_profile(const std::string& path);

}  // namespace vtc::cli
