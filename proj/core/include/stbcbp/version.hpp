#pragma once

namespace stbcbp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stbcbp
