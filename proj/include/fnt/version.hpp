#pragma once

namespace fnt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fnt
