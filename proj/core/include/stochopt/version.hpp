#pragma once

namespace stochopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stochopt
