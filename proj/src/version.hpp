#pragma once

namespace nmqed {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace nmqed
