#pragma once

namespace mtsep {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mtsep
