#pragma once

#include <stdexcept>
#include <string>

namespace vtc {

/// Invalid RenderConfig or other structurally bad configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Font could not be loaded or rasterized. Always names the offending font id.
class FontError : public std::runtime_error {
 public:
  explicit FontError(const std::string& msg) : std::runtime_error(msg) {}
};

class RenderError : public std::runtime_error {
 public:
  explicit RenderError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class BackendError : public std::runtime_error {
 public:
  explicit BackendError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad arguments at an API or CLI boundary (maps to exit code 2 in the CLI).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vtc
