#pragma once

namespace thuelab {
inline constexpr const char* kVersion = "0.1.0";
}
