#pragma once

namespace leovec {

inline constexpr const char* VERSION = "leovec 0.1.0";

}  // namespace leovec
