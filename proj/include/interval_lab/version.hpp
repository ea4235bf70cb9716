#pragma once

namespace interval_lab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace interval_lab
