#pragma once

#include <stdexcept>
#include <string>

namespace leovec {

// Base for all library errors so callers can catch per-module or wholesale.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace leovec
