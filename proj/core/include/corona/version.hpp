#pragma once

namespace corona {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace corona
