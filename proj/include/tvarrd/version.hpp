#pragma once

namespace tvarrd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tvarrd
