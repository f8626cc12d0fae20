#pragma once

namespace oresim {

inline constexpr const char* k_version = "0.1.0";

}  // namespace oresim
